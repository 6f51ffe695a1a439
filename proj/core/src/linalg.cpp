#include "gdfractal/linalg.hpp"

#include <algorithm>

namespace gdfractal {

namespace {

struct Rref {
    QMatrix m;
    std::vector<int> pivot_col_of_row;  // -1 for zero rows
    std::vector<int> pivot_row_of_col;  // -1 for free columns
};

Rref rref(QMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    Rref r{m, std::vector<int>(rows, -1), std::vector<int>(cols, -1)};
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i)
            if (sgn(r.m.at(i, col)) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < cols; ++j) std::swap(r.m.at(pivot, j), r.m.at(row, j));
        Rational inv = 1 / r.m.at(row, col);
        for (int j = col; j < cols; ++j) r.m.at(row, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row) continue;
            Rational f = r.m.at(i, col);
            if (sgn(f) == 0) continue;
            for (int j = col; j < cols; ++j) r.m.at(i, j) -= f * r.m.at(row, j);
        }
        r.pivot_col_of_row[row] = col;
        r.pivot_row_of_col[col] = row;
        ++row;
    }
    return r;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
    Rref r = rref(m);
    const int cols = m.cols();
    std::vector<std::vector<Rational>> basis;
    for (int j = 0; j < cols; ++j) {
        if (r.pivot_row_of_col[j] >= 0) continue;
        std::vector<Rational> v(cols);
        v[j] = 1;
        for (int c = 0; c < cols; ++c) {
            int pr = r.pivot_row_of_col[c];
            if (pr >= 0) v[c] = -r.m.at(pr, j);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const QMatrix& m) {
    Rref r = rref(m);
    int rk = 0;
    for (int c : r.pivot_col_of_row)
        if (c >= 0) ++rk;
    return rk;
}

std::vector<Rational> leading_principal_minors(const QMatrix& m) {
    const int n = std::min(m.rows(), m.cols());
    std::vector<Rational> minors;
    for (int k = 1; k <= n; ++k) {
        QMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(i, j);
        // determinant by Gaussian elimination with row swaps
        Rational det(1);
        bool zero = false;
        for (int col = 0; col < k && !zero; ++col) {
            int pivot = -1;
            for (int r = col; r < k; ++r)
                if (sgn(sub.at(r, col)) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) {
                zero = true;
                break;
            }
            if (pivot != col) {
                for (int j = 0; j < k; ++j) std::swap(sub.at(pivot, j), sub.at(col, j));
                det = -det;
            }
            det *= sub.at(col, col);
            Rational inv = 1 / sub.at(col, col);
            for (int r = col + 1; r < k; ++r) {
                Rational f = sub.at(r, col) * inv;
                if (sgn(f) == 0) continue;
                for (int j = col; j < k; ++j) sub.at(r, j) -= f * sub.at(col, j);
            }
        }
        minors.push_back(zero ? Rational(0) : det);
    }
    return minors;
}

std::optional<AffineSolution> solve_affine(const QMatrix& a, const std::vector<Rational>& t) {
    const int rows = a.rows(), cols = a.cols();
    QMatrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, cols) = t[i];
    }
    Rref r = rref(aug);
    for (int i = 0; i < rows; ++i)
        if (r.pivot_col_of_row[i] == cols) return std::nullopt;  // 0 = nonzero
    AffineSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (int i = 0; i < rows; ++i) {
        int pc = r.pivot_col_of_row[i];
        if (pc >= 0 && pc < cols) sol.particular[pc] = r.m.at(i, cols);
    }
    sol.kernel = nullspace(a);
    return sol;
}

FeasibilityResult fm_feasible(std::vector<Inequality> system, int num_vars) {
    struct Level {
        int var;
        std::vector<Inequality> lower;  // coeff on var > 0: var >= ...
        std::vector<Inequality> upper;  // coeff on var < 0: var <= ...
    };
    std::vector<Level> levels;

    for (int k = num_vars - 1; k >= 0; --k) {
        Level level{k, {}, {}};
        std::vector<Inequality> rest;
        for (auto& ineq : system) {
            int s = sgn(ineq.coeffs[k]);
            if (s > 0)
                level.lower.push_back(ineq);
            else if (s < 0)
                level.upper.push_back(ineq);
            else
                rest.push_back(std::move(ineq));
        }
        // pair every lower bound with every upper bound
        for (const auto& p : level.lower)
            for (const auto& q : level.upper) {
                Rational cp = -q.coeffs[k];  // > 0
                Rational cq = p.coeffs[k];   // > 0
                Inequality comb;
                comb.coeffs.assign(num_vars, Rational(0));
                for (int j = 0; j < num_vars; ++j)
                    comb.coeffs[j] = cp * p.coeffs[j] + cq * q.coeffs[j];
                comb.bound = cp * p.bound + cq * q.bound;
                rest.push_back(std::move(comb));
            }
        levels.push_back(std::move(level));
        system = std::move(rest);
    }

    // all variables eliminated: constraints read 0 >= bound
    for (const auto& ineq : system)
        if (sgn(ineq.bound) > 0) return {false, {}};

    std::vector<Rational> x(num_vars, Rational(0));
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        const int k = it->var;
        bool has_lo = false, has_hi = false;
        Rational lo, hi;
        auto residual = [&](const Inequality& ineq) -> Rational {
            Rational r = ineq.bound;
            for (int j = 0; j < num_vars; ++j)
                if (j != k && sgn(ineq.coeffs[j]) != 0) r -= ineq.coeffs[j] * x[j];
            return r / ineq.coeffs[k];
        };
        for (const auto& ineq : it->lower) {
            Rational v = residual(ineq);
            if (!has_lo || v > lo) lo = v;
            has_lo = true;
        }
        for (const auto& ineq : it->upper) {
            Rational v = residual(ineq);  // division by negative flips to <=
            if (!has_hi || v < hi) hi = v;
            has_hi = true;
        }
        if (has_lo && has_hi)
            x[k] = (lo + hi) / 2;
        else if (has_lo)
            x[k] = lo;
        else if (has_hi)
            x[k] = hi;
        else
            x[k] = 0;
    }
    return {true, std::move(x)};
}

}  // namespace gdfractal
