#include "gdfractal/interval.hpp"

#include <algorithm>
#include <stdexcept>

#include "gdfractal/errors.hpp"

namespace gdfractal {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::exact(const Rational& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::span(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::point_zero(mpfr_prec_t prec) {
    return Interval(prec);
}

double Interval::mid_d() const {
    return (lo_d() + hi_d()) / 2;
}

namespace {

Rational rational_of_mpfr(const mpfr_t x) {
    if (!mpfr_number_p(x)) throw std::overflow_error("enclosure endpoint is not finite");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    Rational r(q);
    mpq_clear(q);
    return r;
}

}  // namespace

Rational Interval::mid_rational() const {
    return (rational_of_mpfr(lo_) + rational_of_mpfr(hi_)) / 2;
}

Rational Interval::radius_upper() const {
    Rational r = (rational_of_mpfr(hi_) - rational_of_mpfr(lo_)) / 2;
    return r < 0 ? Rational(0) : r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_t c;
    mpfr_init2(c, r.prec_);
    const mpfr_t* xs[2] = {&lo_, &hi_};
    const mpfr_t* ys[2] = {&o.lo_, &o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(c, *xs[i], *ys[j], MPFR_RNDD);
            if (first || mpfr_cmp(c, r.lo_) < 0) mpfr_set(r.lo_, c, MPFR_RNDD);
            mpfr_mul(c, *xs[i], *ys[j], MPFR_RNDU);
            if (first || mpfr_cmp(c, r.hi_) > 0) mpfr_set(r.hi_, c, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(c);
    return r;
}

Interval Interval::pow(const Rational& e) const {
    if (mpfr_sgn(lo_) <= 0)
        throw std::domain_error("interval pow requires a strictly positive base");
    Integer num = e.get_num();
    Integer den = e.get_den();
    if (!num.fits_slong_p() || !den.fits_ulong_p())
        throw std::overflow_error("exponent too large for enclosure evaluation");
    long n = num.get_si();
    unsigned long d = den.get_ui();

    // x^(n/d) = (x^(1/d))^n; the d-th root is monotone increasing on (0,inf)
    Interval root(prec_);
    if (d == 1) {
        mpfr_set(root.lo_, lo_, MPFR_RNDD);
        mpfr_set(root.hi_, hi_, MPFR_RNDU);
    } else {
        mpfr_rootn_ui(root.lo_, lo_, d, MPFR_RNDD);
        mpfr_rootn_ui(root.hi_, hi_, d, MPFR_RNDU);
    }
    Interval r(prec_);
    if (n >= 0) {
        mpfr_pow_si(r.lo_, root.lo_, n, MPFR_RNDD);
        mpfr_pow_si(r.hi_, root.hi_, n, MPFR_RNDU);
    } else {
        mpfr_pow_si(r.lo_, root.hi_, n, MPFR_RNDD);
        mpfr_pow_si(r.hi_, root.lo_, n, MPFR_RNDU);
    }
    return r;
}

Interval Interval::reciprocal() const {
    if (contains_zero()) throw std::domain_error("reciprocal of an interval containing zero");
    Interval r(prec_);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

std::string Interval::to_string() const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.20Rg", lo_);
    mpfr_asprintf(&b, "%.20Rg", hi_);
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

Interval eval_numeric(const Monomial& m, mpfr_prec_t precision_bits) {
    Interval acc = Interval::exact(Rational(1), precision_bits);
    for (const auto& [g, e] : m.factors()) {
        Interval base(precision_bits);
        if (g.is_prime()) {
            base = Interval::exact(Rational(g.prime_value), precision_bits);
        } else {
            if (!g.approx) throw AbstractWithoutApprox(g.name);
            base = Interval::exact(*g.approx, precision_bits);
        }
        acc = acc * base.pow(e);
    }
    return acc;
}

Interval eval_numeric(const MonomialSum& s, mpfr_prec_t precision_bits) {
    if (precision_bits < 32) throw std::invalid_argument("precision_bits must be >= 32");
    Interval acc = Interval::point_zero(precision_bits);
    for (const auto& [m, c] : s.terms()) {
        Interval term = Interval::exact(c, precision_bits) * eval_numeric(m, precision_bits);
        acc = acc + term;
    }
    return acc;
}

Sign certified_sign(const MonomialSum& s, const NumericOptions& opts) {
    if (s.is_zero()) return Sign::zero;
    if (auto r = s.as_rational()) return sgn(*r) > 0 ? Sign::positive : Sign::negative;
    // monomials are positive reals, so uniform coefficient signs decide
    if (s.all_coefficients_positive()) return Sign::positive;
    if (s.all_coefficients_negative()) return Sign::negative;
    for (mpfr_prec_t p = opts.precision; p <= opts.max_precision; p *= 2) {
        Interval enc = eval_numeric(s, p);
        if (enc.certainly_positive()) return Sign::positive;
        if (enc.certainly_negative()) return Sign::negative;
    }
    return Sign::indeterminate;
}

Sign certified_compare(const MonomialSum& a, const MonomialSum& b, const NumericOptions& opts) {
    return certified_sign(b - a, opts);
}

Sign certified_compare(const Monomial& a, const Monomial& b, const NumericOptions& opts) {
    if (a == b) return Sign::zero;
    Sign s = certified_sign(MonomialSum::of(b) - MonomialSum::of(a), opts);
    // distinct monomials are distinct reals under the independence axiom, so
    // a zero here can only come from formal cancellation, handled above
    return s;
}

}  // namespace gdfractal
