#pragma once

#include <optional>
#include <vector>

#include "gdfractal/rational.hpp"

namespace gdfractal {

/// Dense exact rational matrix.
class QMatrix {
public:
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

/// Basis of { v : m v = 0 } over Q; empty iff the columns are independent.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);

int rank(const QMatrix& m);

/// Determinants of the k x k leading submatrices, k = 1..n.
std::vector<Rational> leading_principal_minors(const QMatrix& m);

/// Full solution set of A x = t: a particular solution plus a kernel basis,
/// or nullopt when inconsistent.
struct AffineSolution {
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> kernel;
};
std::optional<AffineSolution> solve_affine(const QMatrix& a, const std::vector<Rational>& t);

/// One linear constraint coeffs . x >= bound.
struct Inequality {
    std::vector<Rational> coeffs;
    Rational bound;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> witness;  // a feasible point when feasible
};

/// Fourier-Motzkin elimination over Q with back-substituted witness.
FeasibilityResult fm_feasible(std::vector<Inequality> system, int num_vars);

/// Gaussian elimination for square rational systems whose right-hand side
/// lives in any Q-module V (needs +, -, scaled(Rational)). Returns nullopt
/// when the matrix is singular.
template <typename V>
std::optional<std::vector<V>> solve_square(QMatrix a, std::vector<V> b) {
    const int n = a.rows();
    if (a.cols() != n || int(b.size()) != n) return std::nullopt;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (sgn(a.at(r, col)) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            std::swap(b[pivot], b[col]);
        }
        Rational inv = 1 / a.at(col, col);
        for (int j = col; j < n; ++j) a.at(col, j) *= inv;
        b[col] = b[col].scaled(inv);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rational f = a.at(r, col);
            if (sgn(f) == 0) continue;
            for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            b[r] = b[r] - b[col].scaled(f);
        }
    }
    return b;
}

}  // namespace gdfractal
