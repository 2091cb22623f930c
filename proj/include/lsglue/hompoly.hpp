#pragma once

// Exact algebra of homogeneous polynomials on R^D: ring operations, the
// geometric Euclidean Laplacian (-sum of second derivatives), harmonic
// decomposition, and exact monomial moments over round spheres.

#include "lsglue/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsglue {

// Exponent multi-index over the ambient coordinates.
using MultiIndex = std::vector<int>;

inline int multi_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

namespace detail {
inline bool is_zero_coeff(const Rational& c) { return c == 0; }
inline bool is_zero_coeff(double c) { return c == 0.0; }
inline double coeff_cast(const Rational& c, double) { return to_double(c); }
inline Rational coeff_cast(const Rational& c, Rational) { return c; }
inline double coeff_cast(double c, double) { return c; }

// Structural checks are exact in the rational layer; the double layer only
// sees roundoff-sized violations, handled with a relative guard.
inline bool negligible_against(const Rational& value, const Rational&) { return value == 0; }
inline bool negligible_against(double value, double scale) {
    return std::abs(value) <= 1e-9 * (1.0 + std::abs(scale));
}
}  // namespace detail

/// Homogeneous polynomial with scalar type K (exact Rational or double).
/// Canonical form: no zero coefficients are stored; the zero polynomial is
/// the empty map with any declared degree, so operator== is map equality.
template <class K>
class HomPolyT {
public:
    HomPolyT(int ambient_dim, int degree) : dim_(ambient_dim), degree_(degree) {
        if (ambient_dim < 1) throw std::invalid_argument("HomPoly: ambient_dim must be >= 1");
        if (degree < 0) throw std::invalid_argument("HomPoly: degree must be >= 0");
    }

    static HomPolyT zero(int ambient_dim, int degree) { return HomPolyT(ambient_dim, degree); }

    static HomPolyT constant(int ambient_dim, K value) {
        HomPolyT p(ambient_dim, 0);
        p.set(MultiIndex(ambient_dim, 0), std::move(value));
        return p;
    }

    static HomPolyT monomial(int ambient_dim, MultiIndex alpha, K coeff) {
        if (static_cast<int>(alpha.size()) != ambient_dim)
            throw std::invalid_argument("HomPoly::monomial: index length != ambient_dim");
        HomPolyT p(ambient_dim, multi_degree(alpha));
        p.set(std::move(alpha), std::move(coeff));
        return p;
    }

    /// x_i as a degree-1 polynomial (0-based coordinate index).
    static HomPolyT coordinate(int ambient_dim, int i) {
        MultiIndex a(ambient_dim, 0);
        a.at(i) = 1;
        return monomial(ambient_dim, std::move(a), K(1));
    }

    /// Linear form sum_i c_i x_i.
    static HomPolyT linear(int ambient_dim, const std::vector<K>& c) {
        if (static_cast<int>(c.size()) != ambient_dim)
            throw std::invalid_argument("HomPoly::linear: coefficient count != ambient_dim");
        HomPolyT p(ambient_dim, 1);
        for (int i = 0; i < ambient_dim; ++i) {
            MultiIndex a(ambient_dim, 0);
            a[i] = 1;
            p.set(std::move(a), c[i]);
        }
        return p;
    }

    /// |x|^2 = sum_i x_i^2.
    static HomPolyT radius_squared(int ambient_dim) {
        HomPolyT p(ambient_dim, 2);
        for (int i = 0; i < ambient_dim; ++i) {
            MultiIndex a(ambient_dim, 0);
            a[i] = 2;
            p.set(std::move(a), K(1));
        }
        return p;
    }

    int ambient_dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<MultiIndex, K>& coeffs() const { return coeffs_; }

    K coeff(const MultiIndex& a) const {
        auto it = coeffs_.find(a);
        return it == coeffs_.end() ? K(0) : it->second;
    }

    void set(MultiIndex a, K c) {
        if (static_cast<int>(a.size()) != dim_)
            throw std::invalid_argument("HomPoly::set: index length != ambient_dim");
        if (multi_degree(a) != degree_)
            throw std::invalid_argument("HomPoly::set: index degree != polynomial degree");
        if (detail::is_zero_coeff(c))
            coeffs_.erase(a);
        else
            coeffs_[std::move(a)] = std::move(c);
    }

    void add_term(const MultiIndex& a, const K& c) {
        if (detail::is_zero_coeff(c)) return;
        auto [it, fresh] = coeffs_.try_emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (detail::is_zero_coeff(it->second)) coeffs_.erase(it);
        }
    }

    bool operator==(const HomPolyT& o) const {
        return dim_ == o.dim_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    HomPolyT operator+(const HomPolyT& o) const {
        require_compatible(o, "+");
        HomPolyT r = *this;
        for (const auto& [a, c] : o.coeffs_) r.add_term(a, c);
        return r;
    }

    HomPolyT operator-(const HomPolyT& o) const {
        require_compatible(o, "-");
        HomPolyT r = *this;
        for (const auto& [a, c] : o.coeffs_) r.add_term(a, K(-c));
        return r;
    }

    HomPolyT operator*(const K& s) const {
        HomPolyT r(dim_, degree_);
        if (detail::is_zero_coeff(s)) return r;
        for (const auto& [a, c] : coeffs_) r.coeffs_[a] = c * s;
        return r;
    }

    HomPolyT operator-() const { return *this * K(-1); }

    double evaluate(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("HomPoly::evaluate: point dimension mismatch");
        double acc = 0.0;
        for (const auto& [a, c] : coeffs_) {
            double m = 1.0;
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < a[i]; ++k) m *= x[i];
            acc += detail::coeff_cast(c, double()) * m;
        }
        return acc;
    }

    HomPolyT<double> to_double_poly() const {
        HomPolyT<double> r(dim_, degree_);
        for (const auto& [a, c] : coeffs_) r.add_term(a, detail::coeff_cast(c, double()));
        return r;
    }

private:
    void require_compatible(const HomPolyT& o, const char* op) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument(std::string("HomPoly: ambient_dim mismatch in ") + op);
        if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
            throw std::invalid_argument(std::string("HomPoly: degree mismatch in ") + op);
    }

    int dim_;
    int degree_;
    std::map<MultiIndex, K> coeffs_;
};

template <class K>
K max_coeff_magnitude(const HomPolyT<K>& p) {
    K best(0);
    for (const auto& [a, c] : p.coeffs()) {
        K mag = c < K(0) ? K(-c) : c;
        if (mag > best) best = mag;
    }
    return best;
}

/// True when every coefficient of p is negligible against the given scale
/// (exact zero in the rational layer, roundoff-sized in the double layer).
template <class K>
bool negligible_poly(const HomPolyT<K>& p, const K& scale) {
    for (const auto& [a, c] : p.coeffs())
        if (!detail::negligible_against(c, scale)) return false;
    return true;
}

template <class K>
HomPolyT<K> multiply(const HomPolyT<K>& p, const HomPolyT<K>& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw std::invalid_argument("multiply: ambient_dim mismatch");
    HomPolyT<K> r(p.ambient_dim(), p.degree() + q.degree());
    for (const auto& [a, ca] : p.coeffs())
        for (const auto& [b, cb] : q.coeffs()) {
            MultiIndex s(a);
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
            r.add_term(s, ca * cb);
        }
    return r;
}

template <class K>
HomPolyT<K> partial_derivative(const HomPolyT<K>& p, int i) {
    const int out_deg = p.degree() >= 1 ? p.degree() - 1 : 0;
    HomPolyT<K> r(p.ambient_dim(), out_deg);
    if (p.degree() < 1) return r;
    for (const auto& [a, c] : p.coeffs())
        if (a[i] >= 1) {
            MultiIndex b(a);
            b[i] -= 1;
            r.add_term(b, c * K(a[i]));
        }
    return r;
}

/// Geometric Euclidean Laplacian -sum_i d^2/dx_i^2 (positive operator, the
/// global sign convention of this library). Degree drops by 2; degree <= 1
/// input yields the zero polynomial of degree 0.
template <class K>
HomPolyT<K> laplacian_euclidean(const HomPolyT<K>& p) {
    const int out_deg = p.degree() >= 2 ? p.degree() - 2 : 0;
    HomPolyT<K> r(p.ambient_dim(), out_deg);
    if (p.degree() < 2) return r;
    for (const auto& [a, c] : p.coeffs())
        for (int i = 0; i < p.ambient_dim(); ++i)
            if (a[i] >= 2) {
                MultiIndex b(a);
                b[i] -= 2;
                r.add_term(b, K(-1) * c * K(a[i]) * K(a[i] - 1));
            }
    return r;
}

/// p multiplied by |x|^(2j).
template <class K>
HomPolyT<K> radial_shift(const HomPolyT<K>& p, int j) {
    HomPolyT<K> r = p;
    const auto rsq = HomPolyT<K>::radius_squared(p.ambient_dim());
    for (int k = 0; k < j; ++k) r = multiply(r, rsq);
    return r;
}

/// p = sum_j |x|^(2j) h_j with each h_j Euclidean-harmonic of degree
/// degree(p) - 2j. parts lists (j, h_j) for the nonzero h_j.
template <class K>
struct HarmonicDecompT {
    std::vector<std::pair<int, HomPolyT<K>>> parts;
};

// Unique harmonic decomposition, solved by back-substitution on the radial
// filtration: iterating the Laplacian j times kills every |x|^(2i) h with
// i < j and maps |x|^(2j) h_j to a known positive multiple of h_j.
template <class K>
HarmonicDecompT<K> harmonic_decompose(const HomPolyT<K>& p) {
    const int D = p.ambient_dim();
    const int m = p.degree();
    HarmonicDecompT<K> out;
    HomPolyT<K> remaining = p;
    for (int j = m / 2; j >= 0; --j) {
        HomPolyT<K> g = remaining;
        for (int t = 0; t < j; ++t) g = laplacian_euclidean(g);
        if (g.is_zero()) continue;
        // (-1)^j from the geometric sign; |x|^(2a) h_b picks up the factor
        // -2a(2a + 2b + D - 2) per application, b = m - 2j.
        K c(1);
        const int b = m - 2 * j;
        for (int a = 1; a <= j; ++a) c = c * K(-1) * K(2 * a) * K(2 * a + 2 * b + D - 2);
        HomPolyT<K> h = g * (K(1) / c);
        remaining = remaining - radial_shift(h, j);
        out.parts.emplace_back(j, std::move(h));
    }
    if (!negligible_poly(remaining, max_coeff_magnitude(p)))
        throw std::logic_error("harmonic_decompose: nonzero remainder");
    std::reverse(out.parts.begin(), out.parts.end());  // ascending j
    return out;
}

template <class K>
HomPolyT<K> reconstruct(const HarmonicDecompT<K>& d, int ambient_dim, int degree) {
    HomPolyT<K> acc(ambient_dim, degree);
    for (const auto& [j, h] : d.parts) acc = acc + radial_shift(h, j);
    return acc;
}

using HomPoly = HomPolyT<Rational>;
using HomPolyD = HomPolyT<double>;
using HarmonicDecomp = HarmonicDecompT<Rational>;

/// Moment of the monomial x^alpha over S^d(r), stored radius-free as the
/// exact ratio to the total measure: the integral equals
/// ratio_to_volume * omega_d * r^(d + total_degree).
struct MomentValue {
    Rational ratio_to_volume;
    int total_degree = 0;
};

/// Exact sphere moment via the double-factorial recurrence
/// ratio = prod_i (alpha_i - 1)!! / prod_{i=0}^{m/2-1} (D + 2i), D = d + 1,
/// and zero as soon as some alpha_i is odd.
MomentValue sphere_moment(const MultiIndex& alpha, int d, const Rational& r);

/// Exact integral of p over S^d(r) in units of the sphere volume omega_d r^d
/// (for r rational this is a rational multiple of omega_d). Linear in p.
template <class K>
K integrate_poly_volume_units(const HomPolyT<K>& p, int d, const K& r_squared) {
    if (p.ambient_dim() != d + 1)
        throw std::invalid_argument("integrate_poly: ambient_dim != d + 1");
    K acc(0);
    for (const auto& [a, c] : p.coeffs()) {
        bool odd = false;
        for (int e : a)
            if (e % 2) {
                odd = true;
                break;
            }
        if (odd) continue;
        // ratio * r^degree, with r^degree = (r^2)^(degree/2) since degree is even here.
        K num(1), den(1);
        int m = multi_degree(a);
        for (int e : a)
            for (int t = e - 1; t >= 1; t -= 2) num *= K(t);
        for (int i = 0; i < m / 2; ++i) den *= K(d + 1 + 2 * i);
        K term = c * num / den;
        for (int i = 0; i < m / 2; ++i) term *= r_squared;
        acc += term;
    }
    return acc;
}

/// Spec-shaped wrapper: integral of p over S^d(r) as a rational multiple of
/// omega_d (requires rational r).
Rational integrate_poly_omega_units(const HomPoly& p, int d, const Rational& r);

}  // namespace lsglue
