#include "lsglue/hompoly.hpp"

namespace lsglue {

MomentValue sphere_moment(const MultiIndex& alpha, int d, const Rational& r) {
    if (static_cast<int>(alpha.size()) != d + 1)
        throw std::invalid_argument("sphere_moment: length(alpha) != d + 1");
    if (r <= 0) throw std::invalid_argument("sphere_moment: radius must be positive");
    MomentValue m;
    m.total_degree = multi_degree(alpha);
    for (int e : alpha)
        if (e % 2) {
            m.ratio_to_volume = 0;
            return m;
        }
    Rational num(1), den(1);
    for (int e : alpha)
        for (int t = e - 1; t >= 1; t -= 2) num *= t;
    for (int i = 0; i < m.total_degree / 2; ++i) den *= (d + 1 + 2 * i);
    m.ratio_to_volume = num / den;
    return m;
}

Rational integrate_poly_omega_units(const HomPoly& p, int d, const Rational& r) {
    if (r <= 0) throw std::invalid_argument("integrate_poly: radius must be positive");
    Rational r_squared = r * r;
    Rational volume_units = integrate_poly_volume_units(p, d, r_squared);
    return volume_units * pow_int(r, d);
}

}  // namespace lsglue
