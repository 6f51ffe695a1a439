#include "gdfractal/rational.hpp"

#include <stdexcept>

namespace gdfractal {

std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        return q;
    }
    // decimal literal: digits '.' digits, parsed exactly as num / 10^k
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    Integer num;
    if (num.set_str(digits, 10) != 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    Integer den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return make_rational(num, den);
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace gdfractal
