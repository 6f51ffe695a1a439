#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdfractal/generator.hpp"
#include "gdfractal/rational.hpp"

namespace gdfractal {

/// A positive real of the form prod g^e over declared generators, with exact
/// rational exponents. Canonical: factors sorted by generator name, no zero
/// exponents. Two monomials are equal iff their factor lists are equal; under
/// the declared-independence axiom this coincides with value equality.
class Monomial {
public:
    using Factor = std::pair<Generator, Rational>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);

    static Monomial one() { return Monomial(); }
    static Monomial generator(const Generator& g, Rational exponent = Rational(1));

    bool is_one() const { return factors_.empty(); }
    const std::vector<Factor>& factors() const { return factors_; }

    Monomial times(const Monomial& other) const;
    Monomial pow(const Rational& r) const;
    Monomial inverse() const { return pow(Rational(-1)); }
    Monomial divided_by(const Monomial& other) const { return times(other.inverse()); }

    /// Exact rational value when every factor is a prime with integer
    /// exponent; nullopt otherwise.
    std::optional<Rational> as_rational() const;

    /// Splits the value as r * m where r is the extractable rational content
    /// (integer parts of prime exponents) and m keeps prime exponents in
    /// [0,1) plus all abstract factors.
    std::pair<Rational, Monomial> split_rational() const;

    bool uses_abstract() const;

    std::string to_string() const;  // sorted factor string, "1" for the unit

    friend bool operator==(const Monomial& a, const Monomial& b);
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;  // sorted by generator, nonzero exponents
};

/// A nonzero real with the magnitude kept as an exact monomial and the sign
/// carried separately. Contraction ratios live here.
struct SignedMonomial {
    int sign = 1;  // +1 or -1
    Monomial magnitude;

    static SignedMonomial positive(Monomial m) { return {1, std::move(m)}; }
    static SignedMonomial negative(Monomial m) { return {-1, std::move(m)}; }
    bool is_negative() const { return sign < 0; }
    std::string to_string() const;

    friend bool operator==(const SignedMonomial& a, const SignedMonomial& b) {
        return a.sign == b.sign && a.magnitude == b.magnitude;
    }
};

/// Formal Q-linear combination of monomials. Canonical form folds each
/// term's rational content into its coefficient, so 1/2 + 3/10 and 4/5 are
/// the same sum. Addition, subtraction and scalar multiplication are exact.
class MonomialSum {
public:
    using Term = std::pair<Monomial, Rational>;

    MonomialSum() = default;

    static MonomialSum zero() { return MonomialSum(); }
    static MonomialSum of(const Rational& r);
    static MonomialSum of(const Monomial& m, const Rational& coeff = Rational(1));

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    MonomialSum operator+(const MonomialSum& other) const;
    MonomialSum operator-(const MonomialSum& other) const;
    MonomialSum operator-() const;
    MonomialSum scaled(const Rational& c) const;
    MonomialSum times(const Monomial& m) const;
    MonomialSum times(const SignedMonomial& s) const;

    MonomialSum& operator+=(const MonomialSum& o) { return *this = *this + o; }
    MonomialSum& operator-=(const MonomialSum& o) { return *this = *this - o; }

    std::optional<Rational> as_rational() const;

    /// The sum as a single positive monomial (coefficient folded back in via
    /// prime factorisation), when it has exactly one term with positive
    /// coefficient.
    std::optional<Monomial> as_monomial() const;

    bool all_coefficients_positive() const;
    bool all_coefficients_negative() const;
    bool uses_abstract() const;

    std::string to_string() const;

    friend bool operator==(const MonomialSum& a, const MonomialSum& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MonomialSum& a, const MonomialSum& b) { return !(a == b); }
    friend bool operator<(const MonomialSum& a, const MonomialSum& b);

private:
    std::vector<Term> terms_;  // sorted by monomial, canonical, nonzero coeffs

    void add_term(const Monomial& m, const Rational& c);
    static MonomialSum from_terms(std::vector<Term> raw);
};

/// Canonical embedding of the positive rationals into the generator group:
/// trial-division factorisation, prime generators created on demand.
Monomial factor_rational(const Rational& q);

}  // namespace gdfractal
