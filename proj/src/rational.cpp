#include "lsglue/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace lsglue {

std::optional<Rational> exact_root(const Rational& x, unsigned long q) {
    if (q == 0) throw std::invalid_argument("exact_root: zero index");
    if (q == 1) return x;
    if (x < 0) return std::nullopt;
    if (x == 0) return Rational(0);
    mpz_class num_root, den_root;
    if (!mpz_root(num_root.get_mpz_t(), x.get_num().get_mpz_t(), q)) return std::nullopt;
    if (!mpz_root(den_root.get_mpz_t(), x.get_den().get_mpz_t(), q)) return std::nullopt;
    Rational r(num_root, den_root);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    auto end = text.find_last_not_of(" \t\r\n");
    std::string s = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty value");
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("parse_rational: stray whitespace in '" + text + "'");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }

    // Decimal form: sign, digits, optional fractional part, optional exponent.
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long frac_digits = 0, exponent = 0;
    bool any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]), any = true;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits.push_back(s[i++]);
            ++frac_digits;
            any = true;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i >= s.size()) throw std::invalid_argument("parse_rational: bad exponent in '" + text + "'");
        long e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + (s[i++] - '0');
        exponent = eneg ? -e : e;
    }
    if (!any || i != s.size()) throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");

    mpz_class mant(digits.empty() ? "0" : digits);
    Rational q(mant);
    long net = exponent - frac_digits;
    mpz_class ten10 = 10;
    if (net > 0) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(net));
        q *= Rational(p);
    } else if (net < 0) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(-net));
        q /= Rational(p);
    }
    if (neg) q = -q;
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace lsglue
