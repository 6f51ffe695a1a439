#pragma once

#include <optional>
#include <string>

#include "gdfractal/rational.hpp"

namespace gdfractal {

enum class GenKind { prime, abstract_real };

/// One generator of the multiplicative group: either a positive prime
/// (exact) or a user-declared positive real assumed multiplicatively
/// independent of everything else. The approximation is consumed only by
/// numeric evaluation and rendering, never by a decision.
struct Generator {
    GenKind kind;
    std::string name;                  // primes use their decimal digits
    Integer prime_value;               // kind == prime
    std::optional<Rational> approx;    // kind == abstract_real

    static Generator prime(const Integer& p) {
        return Generator{GenKind::prime, p.get_str(), p, std::nullopt};
    }
    static Generator prime(unsigned long p) { return prime(Integer(p)); }

    static Generator abstract(std::string name, std::optional<Rational> approx = std::nullopt) {
        return Generator{GenKind::abstract_real, std::move(name), Integer(0), std::move(approx)};
    }

    bool is_prime() const { return kind == GenKind::prime; }

    // identity is the name; declaring two generators with one name is
    // rejected at spec validation
    friend bool operator==(const Generator& a, const Generator& b) { return a.name == b.name; }
    friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
    friend bool operator<(const Generator& a, const Generator& b) { return a.name < b.name; }
};

}  // namespace gdfractal
