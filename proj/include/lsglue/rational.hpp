#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace lsglue {

// Exact rational scalar used throughout the polynomial layer.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Integer power, exponent may be negative (base must be nonzero then).
inline Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::domain_error("pow_int: 0 to negative power");
    Rational acc(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    for (long k = e > 0 ? e : -e; k > 0; --k) acc *= b;
    return acc;
}

// Exact q-th root when numerator and denominator are perfect q-th powers.
std::optional<Rational> exact_root(const Rational& x, unsigned long q);

// Parses "p/q", "p", or a plain decimal ("1.25", "-0.5e2") exactly.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace lsglue
