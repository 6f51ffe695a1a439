#pragma once

#include <string>
#include <vector>

#include "gdfractal/linalg.hpp"
#include "gdfractal/monomial.hpp"

namespace gdfractal {

/// Exponent cones for membership tests: rational exponents (Q), nonzero
/// rational (Qstar), nonnegative (Qplus), nonnegative nonzero (QplusStar).
enum class Cone { Q, Qstar, Qplus, QplusStar };

std::string cone_name(Cone c);

struct MembershipResult {
    bool member = false;
    std::vector<Rational> witness;  // exponents over the base set when member
};

/// Decides target in a^cone by exact linear algebra on exponent vectors,
/// with cone constraints settled by Fourier-Motzkin. Sound and complete over
/// declared-independent generators; any witness satisfies
/// prod a_i^{w_i} = target exactly.
MembershipResult membership(const Monomial& target, const std::vector<Monomial>& a, Cone cone);

struct ConeIntersection {
    bool empty = true;
    std::vector<Rational> p, q;  // prod a1^p = prod a2^q when not empty
};

/// Decides (a1)^{Q*} cap (a2)^{Q+*} = empty; a witness is a nonzero rational
/// p and a nonnegative nonzero rational q with equal products.
ConeIntersection cone_intersection(const std::vector<Monomial>& a1,
                                   const std::vector<Monomial>& a2);

/// Generators appearing across the given monomials, sorted by name.
std::vector<Generator> generator_union(const std::vector<Monomial>& ms);

/// Columns are the exponent vectors of the monomials over `gens` rows.
QMatrix exponent_matrix(const std::vector<Generator>& gens, const std::vector<Monomial>& ms);

/// prod a_i^{w_i} as exact monomial arithmetic.
Monomial power_product(const std::vector<Monomial>& a, const std::vector<Rational>& w);

}  // namespace gdfractal
