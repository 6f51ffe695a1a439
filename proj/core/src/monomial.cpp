#include "gdfractal/monomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gdfractal {

Monomial::Monomial(std::vector<Factor> factors) {
    std::map<Generator, Rational> acc;
    for (auto& [g, e] : factors) acc[g] += e;
    for (auto& [g, e] : acc)
        if (sgn(e) != 0) factors_.emplace_back(g, e);
}

Monomial Monomial::generator(const Generator& g, Rational exponent) {
    Monomial m;
    if (sgn(exponent) != 0) m.factors_.emplace_back(g, std::move(exponent));
    return m;
}

Monomial Monomial::times(const Monomial& other) const {
    std::vector<Factor> merged = factors_;
    merged.insert(merged.end(), other.factors_.begin(), other.factors_.end());
    return Monomial(std::move(merged));
}

Monomial Monomial::pow(const Rational& r) const {
    Monomial m;
    if (sgn(r) == 0) return m;
    for (const auto& [g, e] : factors_) m.factors_.emplace_back(g, e * r);
    return m;
}

std::optional<Rational> Monomial::as_rational() const {
    Rational value(1);
    for (const auto& [g, e] : factors_) {
        if (!g.is_prime() || !is_integer(e)) return std::nullopt;
        Integer num = e.get_num();
        bool neg = sgn(num) < 0;
        Integer a = abs(num);
        if (!a.fits_ulong_p()) return std::nullopt;
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), g.prime_value.get_mpz_t(), a.get_ui());
        if (neg)
            value /= Rational(p);
        else
            value *= Rational(p);
    }
    return value;
}

std::pair<Rational, Monomial> Monomial::split_rational() const {
    Rational content(1);
    Monomial rest;
    for (const auto& [g, e] : factors_) {
        if (!g.is_prime()) {
            rest.factors_.emplace_back(g, e);
            continue;
        }
        Integer n = gdfractal::floor(e);
        Rational frac = e - Rational(n);
        if (sgn(n) != 0) {
            Integer a = abs(n);
            if (!a.fits_ulong_p()) throw std::overflow_error("monomial exponent too large");
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), g.prime_value.get_mpz_t(), a.get_ui());
            if (sgn(n) < 0)
                content /= Rational(p);
            else
                content *= Rational(p);
        }
        if (sgn(frac) != 0) rest.factors_.emplace_back(g, frac);
    }
    return {content, rest};
}

bool Monomial::uses_abstract() const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return !f.first.is_prime(); });
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : factors_) {
        if (!s.empty()) s += "*";
        s += g.name;
        if (e != 1) s += "^" + gdfractal::to_string(e);
    }
    return s;
}

bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
}

bool operator<(const Monomial& a, const Monomial& b) {
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;
    size_t n = std::min(fa.size(), fb.size());
    for (size_t i = 0; i < n; ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
    }
    return fa.size() < fb.size();
}

std::string SignedMonomial::to_string() const {
    std::string s = magnitude.to_string();
    return sign < 0 ? "-" + s : s;
}

MonomialSum MonomialSum::of(const Rational& r) {
    return of(Monomial::one(), r);
}

MonomialSum MonomialSum::of(const Monomial& m, const Rational& coeff) {
    MonomialSum s;
    s.add_term(m, coeff);
    return s;
}

void MonomialSum::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [content, rest] = m.split_rational();
    Rational coeff = c * content;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), rest,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == rest) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {rest, coeff});
    }
}

MonomialSum MonomialSum::from_terms(std::vector<Term> raw) {
    MonomialSum s;
    for (auto& [m, c] : raw) s.add_term(m, c);
    return s;
}

MonomialSum MonomialSum::operator+(const MonomialSum& other) const {
    MonomialSum s = *this;
    for (const auto& [m, c] : other.terms_) s.add_term(m, c);
    return s;
}

MonomialSum MonomialSum::operator-(const MonomialSum& other) const {
    MonomialSum s = *this;
    for (const auto& [m, c] : other.terms_) s.add_term(m, -c);
    return s;
}

MonomialSum MonomialSum::operator-() const {
    MonomialSum s;
    for (const auto& [m, c] : terms_) s.terms_.emplace_back(m, -c);
    return s;
}

MonomialSum MonomialSum::scaled(const Rational& c) const {
    MonomialSum s;
    if (sgn(c) == 0) return s;
    for (const auto& [m, k] : terms_) s.terms_.emplace_back(m, k * c);
    return s;
}

MonomialSum MonomialSum::times(const Monomial& m) const {
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [tm, c] : terms_) raw.emplace_back(tm.times(m), c);
    return from_terms(std::move(raw));
}

MonomialSum MonomialSum::times(const SignedMonomial& s) const {
    MonomialSum r = times(s.magnitude);
    return s.sign < 0 ? -r : r;
}

std::optional<Rational> MonomialSum::as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_[0].first.is_one()) return terms_[0].second;
    return std::nullopt;
}

std::optional<Monomial> MonomialSum::as_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [m, c] = terms_[0];
    if (sgn(c) <= 0) return std::nullopt;
    return factor_rational(c).times(m);
}

bool MonomialSum::all_coefficients_positive() const {
    return !terms_.empty() && std::all_of(terms_.begin(), terms_.end(),
                                          [](const Term& t) { return sgn(t.second) > 0; });
}

bool MonomialSum::all_coefficients_negative() const {
    return !terms_.empty() && std::all_of(terms_.begin(), terms_.end(),
                                          [](const Term& t) { return sgn(t.second) < 0; });
}

bool MonomialSum::uses_abstract() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.first.uses_abstract(); });
}

std::string MonomialSum::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (m.is_one()) {
            s += gdfractal::to_string(c);
        } else if (c == 1) {
            s += m.to_string();
        } else {
            s += gdfractal::to_string(c) + "*" + m.to_string();
        }
    }
    return s;
}

bool operator<(const MonomialSum& a, const MonomialSum& b) {
    return a.terms_ < b.terms_;
}

namespace {

// appends p^e to the factor list, creating the prime generator
void push_prime(std::vector<Monomial::Factor>& out, const Integer& p, long e) {
    out.emplace_back(Generator::prime(p), Rational(e));
}

// trial division; factors smooth parts completely and accepts a remaining
// prime cofactor, rejects composites that survive the wheel
void factor_positive(Integer n, long exp_sign, std::vector<Monomial::Factor>& out) {
    for (Integer p : {Integer(2), Integer(3), Integer(5)}) {
        long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) push_prime(out, p, e * exp_sign);
    }
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    Integer d(7);
    int w = 0;
    while (d * d <= n) {
        long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e) push_prime(out, d, e * exp_sign);
        d += wheel[w];
        w = (w + 1) & 7;
        if (mpz_sizeinbase(d.get_mpz_t(), 2) > 40)
            throw std::domain_error("rational has a factor too large to factor by trial division");
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw std::domain_error("rational has a large composite cofactor");
        push_prime(out, n, exp_sign);
    }
}

}  // namespace

Monomial factor_rational(const Rational& q) {
    if (sgn(q) <= 0) throw std::domain_error("factor_rational requires a positive rational");
    std::vector<Monomial::Factor> out;
    factor_positive(q.get_num(), 1, out);
    factor_positive(q.get_den(), -1, out);
    return Monomial(std::move(out));
}

}  // namespace gdfractal
