#include "gdfractal/exactnum.hpp"

#include <algorithm>
#include <set>

namespace gdfractal {

std::string cone_name(Cone c) {
    switch (c) {
        case Cone::Q: return "Q";
        case Cone::Qstar: return "Qstar";
        case Cone::Qplus: return "Qplus";
        case Cone::QplusStar: return "QplusStar";
    }
    return "?";
}

std::vector<Generator> generator_union(const std::vector<Monomial>& ms) {
    std::set<Generator> gens;
    for (const auto& m : ms)
        for (const auto& [g, e] : m.factors()) gens.insert(g);
    return {gens.begin(), gens.end()};
}

QMatrix exponent_matrix(const std::vector<Generator>& gens, const std::vector<Monomial>& ms) {
    QMatrix b(int(gens.size()), int(ms.size()));
    for (int j = 0; j < int(ms.size()); ++j)
        for (const auto& [g, e] : ms[j].factors()) {
            auto it = std::lower_bound(gens.begin(), gens.end(), g);
            b.at(int(it - gens.begin()), j) = e;
        }
    return b;
}

Monomial power_product(const std::vector<Monomial>& a, const std::vector<Rational>& w) {
    Monomial m = Monomial::one();
    for (size_t i = 0; i < a.size(); ++i) m = m.times(a[i].pow(w[i]));
    return m;
}

namespace {

bool all_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<Rational> add(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// nonnegativity of particular + kernel*s, solved for s; returns the witness
// in the original coordinates
std::optional<std::vector<Rational>> nonnegative_point(const std::vector<Rational>& particular,
                                                       const std::vector<std::vector<Rational>>& kernel,
                                                       bool require_nonzero) {
    const int n = int(particular.size());
    const int d = int(kernel.size());
    if (d == 0) {
        bool ok = std::all_of(particular.begin(), particular.end(),
                              [](const Rational& x) { return sgn(x) >= 0; });
        if (!ok) return std::nullopt;
        if (require_nonzero && all_zero(particular)) return std::nullopt;
        return particular;
    }
    std::vector<Inequality> sys;
    for (int i = 0; i < n; ++i) {
        Inequality ineq;
        ineq.coeffs.assign(d, Rational(0));
        for (int k = 0; k < d; ++k) ineq.coeffs[k] = kernel[k][i];
        ineq.bound = -particular[i];
        sys.push_back(std::move(ineq));
    }
    if (require_nonzero) {
        // sum of coordinates >= 1; valid normalisation because the solution
        // set is a cone over the homogeneous part (used only when the
        // particular solution is zero)
        Inequality ineq;
        ineq.coeffs.assign(d, Rational(0));
        Rational base(0);
        for (int i = 0; i < n; ++i) {
            base += particular[i];
            for (int k = 0; k < d; ++k) ineq.coeffs[k] += kernel[k][i];
        }
        ineq.bound = Rational(1) - base;
        sys.push_back(std::move(ineq));
    }
    auto fm = fm_feasible(std::move(sys), d);
    if (!fm.feasible) return std::nullopt;
    std::vector<Rational> w = particular;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < n; ++i) w[i] += kernel[k][i] * fm.witness[k];
    return w;
}

}  // namespace

MembershipResult membership(const Monomial& target, const std::vector<Monomial>& a, Cone cone) {
    if (a.empty()) {
        // empty base: A^Q = {1}, the starred cones are empty
        bool member = target.is_one() && (cone == Cone::Q || cone == Cone::Qplus);
        return {member, {}};
    }
    std::vector<Monomial> all = a;
    all.push_back(target);
    std::vector<Generator> gens = generator_union(all);
    QMatrix b = exponent_matrix(gens, a);
    std::vector<Rational> t(gens.size(), Rational(0));
    {
        QMatrix tm = exponent_matrix(gens, {target});
        for (size_t i = 0; i < gens.size(); ++i) t[i] = tm.at(int(i), 0);
    }
    auto sol = solve_affine(b, t);
    if (!sol) return {false, {}};

    switch (cone) {
        case Cone::Q:
            return {true, sol->particular};
        case Cone::Qstar: {
            if (!all_zero(sol->particular)) return {true, sol->particular};
            if (!sol->kernel.empty()) return {true, add(sol->particular, sol->kernel[0])};
            return {false, {}};
        }
        case Cone::Qplus: {
            auto w = nonnegative_point(sol->particular, sol->kernel, false);
            if (!w) return {false, {}};
            return {true, *w};
        }
        case Cone::QplusStar: {
            // a zero witness forces target = 1, so the extra constraint is
            // needed only for the unit target
            bool need_nonzero = target.is_one();
            auto w = nonnegative_point(sol->particular, sol->kernel, need_nonzero);
            if (!w) return {false, {}};
            return {true, *w};
        }
    }
    return {false, {}};
}

ConeIntersection cone_intersection(const std::vector<Monomial>& a1,
                                   const std::vector<Monomial>& a2) {
    ConeIntersection result;
    if (a1.empty() || a2.empty()) return result;  // a starred cone over {} is empty
    const int m = int(a1.size());
    const int n = int(a2.size());
    std::vector<Monomial> all = a1;
    all.insert(all.end(), a2.begin(), a2.end());
    std::vector<Generator> gens = generator_union(all);
    QMatrix b = exponent_matrix(gens, a1);
    QMatrix c = exponent_matrix(gens, a2);
    QMatrix eq(int(gens.size()), m + n);
    for (int i = 0; i < int(gens.size()); ++i) {
        for (int j = 0; j < m; ++j) eq.at(i, j) = b.at(i, j);
        for (int k = 0; k < n; ++k) eq.at(i, m + k) = -c.at(i, k);
    }
    auto kernel = nullspace(eq);
    const int d = int(kernel.size());
    if (d == 0) return result;

    // the solution set is a cone, so p_j != 0 and q != 0 can both be pushed
    // to >= 1 by scaling; try each p coordinate with each sign
    for (int j = 0; j < m; ++j) {
        for (int sigma : {1, -1}) {
            std::vector<Inequality> sys;
            for (int k = 0; k < n; ++k) {
                Inequality ineq;
                ineq.coeffs.assign(d, Rational(0));
                for (int s = 0; s < d; ++s) ineq.coeffs[s] = kernel[s][m + k];
                ineq.bound = 0;
                sys.push_back(std::move(ineq));
            }
            {
                Inequality ineq;  // sum q >= 1
                ineq.coeffs.assign(d, Rational(0));
                for (int s = 0; s < d; ++s)
                    for (int k = 0; k < n; ++k) ineq.coeffs[s] += kernel[s][m + k];
                ineq.bound = 1;
                sys.push_back(std::move(ineq));
            }
            {
                Inequality ineq;  // sigma * p_j >= 1
                ineq.coeffs.assign(d, Rational(0));
                for (int s = 0; s < d; ++s) ineq.coeffs[s] = Rational(sigma) * kernel[s][j];
                ineq.bound = 1;
                sys.push_back(std::move(ineq));
            }
            auto fm = fm_feasible(std::move(sys), d);
            if (!fm.feasible) continue;
            result.empty = false;
            result.p.assign(m, Rational(0));
            result.q.assign(n, Rational(0));
            for (int s = 0; s < d; ++s) {
                for (int i = 0; i < m; ++i) result.p[i] += kernel[s][i] * fm.witness[s];
                for (int k = 0; k < n; ++k) result.q[k] += kernel[s][m + k] * fm.witness[s];
            }
            return result;
        }
    }
    return result;
}

}  // namespace gdfractal
