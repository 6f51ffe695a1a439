#pragma once

#include <mpfr.h>

#include <string>

#include "gdfractal/monomial.hpp"
#include "gdfractal/rational.hpp"

namespace gdfractal {

/// Closed interval [lo, hi] with MPFR endpoints, every operation rounded
/// outward. This is the only place approximations enter; any ordering fact
/// derived from an enclosure is a certificate only when the enclosures
/// separate.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o);
    ~Interval();

    static Interval exact(const Rational& q, mpfr_prec_t prec);
    static Interval span(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
    static Interval point_zero(mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const;
    Rational mid_rational() const;   // exact dyadic midpoint
    Rational radius_upper() const;   // exact dyadic bound on (hi-lo)/2

    bool contains_zero() const;
    bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
    /// true when this interval lies strictly left of o
    bool certainly_less(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool is_point() const { return mpfr_equal_p(lo_, hi_); }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval neg() const;
    /// x^(n/d) for positive intervals
    Interval pow(const Rational& e) const;
    /// 1/x for intervals excluding zero
    Interval reciprocal() const;

    std::string to_string() const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;

    friend Interval eval_numeric(const MonomialSum&, mpfr_prec_t);
};

enum class Sign { negative, zero, positive, indeterminate };

struct NumericOptions {
    mpfr_prec_t precision = 128;      // starting precision for enclosures
    mpfr_prec_t max_precision = 1024; // doubling cap for sign certification
};

/// Rigorous enclosure of a monomial value; abstract generators use their
/// declared approximations (AbstractWithoutApprox if absent).
Interval eval_numeric(const Monomial& m, mpfr_prec_t precision_bits);
Interval eval_numeric(const MonomialSum& s, mpfr_prec_t precision_bits);

/// Exact where possible (rational value, or uniform-sign coefficients),
/// otherwise enclosure-based with precision doubling; never guesses.
Sign certified_sign(const MonomialSum& s, const NumericOptions& opts = {});

/// Sign of b-a, i.e. negative means a > b.
Sign certified_compare(const MonomialSum& a, const MonomialSum& b,
                       const NumericOptions& opts = {});

/// Value comparison of two positive monomials (a<b / a==b / a>b mapped onto
/// positive / zero / negative of b-a).
Sign certified_compare(const Monomial& a, const Monomial& b, const NumericOptions& opts = {});

}  // namespace gdfractal
