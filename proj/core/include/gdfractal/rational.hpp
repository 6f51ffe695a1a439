#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace gdfractal {

/// Exact arbitrary-precision rational. All decision paths run on these;
/// floating point only ever appears inside interval enclosures.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Canonical form "p/q" in lowest terms, sign on the numerator, "p" for integers.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and decimal literals like "3.14159" (parsed exactly).
Rational rational_from_string(const std::string& text);

bool is_integer(const Rational& q);

/// Largest integer <= q.
Integer floor(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace gdfractal
