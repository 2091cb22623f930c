#include "lsglue/sphere.hpp"

#include <sstream>

namespace lsglue {

namespace {

void append_monomial(std::ostream& os, const MultiIndex& a, const Rational& c, bool& first) {
    std::string cs = c.get_str();
    if (first) {
        os << cs;
        first = false;
    } else if (cs.front() == '-') {
        os << " - " << cs.substr(1);
    } else {
        os << " + " << cs;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        os << "*x" << (i + 1);
        if (a[i] > 1) os << "^" << a[i];
    }
}

}  // namespace

std::string to_string(const SphereFunction& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first_comp = true;
    for (const auto& [k, h] : f.components()) {
        if (!first_comp) os << "  ";
        first_comp = false;
        os << "[deg " << k << "] ";
        bool first = true;
        for (const auto& [a, c] : h.coeffs()) append_monomial(os, a, c, first);
    }
    return os.str();
}

}  // namespace lsglue
