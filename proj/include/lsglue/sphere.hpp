#pragma once

// Spectral calculus on round spheres S^d(r): restriction of ambient
// polynomials, eigencomponent bookkeeping, L^2 pairing, and the shifted
// resolvent (Laplacian - lambda)^{-1} away from the lambda-eigenspace.
//
// A function is stored by its Euclidean-harmonic components: degree k maps
// to a harmonic HomPoly whose restriction is a Laplacian eigenfunction with
// eigenvalue k(k+d-1)/r^2. All integrals are returned in units of the sphere
// volume omega_d r^d, so they stay exact rationals even when only r^2 is
// rational (the nonzero monomial moments involve even powers of r only).

#include "lsglue/hompoly.hpp"
#include "lsglue/rational.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace lsglue {

struct SphereSpec {
    int d = 1;
    Rational r2 = 1;  // squared radius, always exact

    static SphereSpec unit(int d) { return SphereSpec{d, Rational(1)}; }

    static SphereSpec with_radius(int d, const Rational& r) {
        if (d < 1) throw std::invalid_argument("SphereSpec: d must be >= 1");
        if (r <= 0) throw std::invalid_argument("SphereSpec: radius must be positive");
        return SphereSpec{d, r * r};
    }

    static SphereSpec with_radius_squared(int d, const Rational& r_squared) {
        if (d < 1) throw std::invalid_argument("SphereSpec: d must be >= 1");
        if (r_squared <= 0) throw std::invalid_argument("SphereSpec: r^2 must be positive");
        return SphereSpec{d, r_squared};
    }

    int ambient_dim() const { return d + 1; }
    double radius() const { return std::sqrt(to_double(r2)); }
    std::optional<Rational> radius_exact() const { return exact_root(r2, 2); }

    bool operator==(const SphereSpec& o) const { return d == o.d && r2 == o.r2; }
};

/// Laplacian eigenvalue k(k+d-1)/r^2 of the degree-k harmonics, exact and
/// strictly increasing in k.
inline Rational eigenvalue(int k, const SphereSpec& s) {
    if (k < 0) throw std::invalid_argument("eigenvalue: k must be >= 0");
    return Rational(k) * Rational(k + s.d - 1) / s.r2;
}

template <class K>
K eigenvalue_as(int k, const SphereSpec& s, K) {
    return detail::coeff_cast(eigenvalue(k, s), K());
}

template <>
inline Rational eigenvalue_as<Rational>(int k, const SphereSpec& s, Rational) {
    return eigenvalue(k, s);
}

struct ResolventError : std::domain_error {
    int offending_degree;
    explicit ResolventError(int k)
        : std::domain_error("resolvent_shifted: nonzero component at the shift eigenvalue (degree " +
                            std::to_string(k) + ")"),
          offending_degree(k) {}
};

template <class K>
class SphereFunctionT {
public:
    explicit SphereFunctionT(SphereSpec s) : sphere_(std::move(s)) {}

    static SphereFunctionT zero(const SphereSpec& s) { return SphereFunctionT(s); }

    static SphereFunctionT constant(const SphereSpec& s, K value) {
        SphereFunctionT f(s);
        f.set_component(0, HomPolyT<K>::constant(s.ambient_dim(), std::move(value)));
        return f;
    }

    const SphereSpec& sphere() const { return sphere_; }
    const std::map<int, HomPolyT<K>>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    int max_degree() const { return comps_.empty() ? 0 : comps_.rbegin()->first; }

    HomPolyT<K> component(int k) const {
        auto it = comps_.find(k);
        return it == comps_.end() ? HomPolyT<K>::zero(sphere_.ambient_dim(), k) : it->second;
    }

    void set_component(int k, HomPolyT<K> h) {
        if (h.ambient_dim() != sphere_.ambient_dim())
            throw std::invalid_argument("SphereFunction: component ambient_dim mismatch");
        if (h.degree() != k)
            throw std::invalid_argument("SphereFunction: component degree mismatch");
        if (!negligible_poly(laplacian_euclidean(h), max_coeff_magnitude(h)))
            throw std::invalid_argument("SphereFunction: component is not harmonic");
        if (h.is_zero())
            comps_.erase(k);
        else
            comps_.insert_or_assign(k, std::move(h));
    }

    void add_component(int k, const HomPolyT<K>& h) {
        if (h.is_zero()) return;
        auto it = comps_.find(k);
        if (it == comps_.end()) {
            set_component(k, h);
        } else {
            HomPolyT<K> sum = it->second + h;
            if (sum.is_zero())
                comps_.erase(it);
            else
                it->second = std::move(sum);
        }
    }

    bool operator==(const SphereFunctionT& o) const {
        return sphere_ == o.sphere_ && comps_ == o.comps_;
    }

    SphereFunctionT operator+(const SphereFunctionT& o) const {
        require_same_sphere(o);
        SphereFunctionT r = *this;
        for (const auto& [k, h] : o.comps_) r.add_component(k, h);
        return r;
    }

    SphereFunctionT operator-(const SphereFunctionT& o) const { return *this + o * K(-1); }

    SphereFunctionT operator*(const K& s) const {
        SphereFunctionT r(sphere_);
        if (detail::is_zero_coeff(s)) return r;
        for (const auto& [k, h] : comps_) r.comps_.insert_or_assign(k, h * s);
        return r;
    }

    double evaluate(const std::vector<double>& x) const {
        double acc = 0.0;
        for (const auto& [k, h] : comps_) acc += h.evaluate(x);
        return acc;
    }

    SphereFunctionT<double> to_double_function() const {
        SphereFunctionT<double> r(sphere_);
        for (const auto& [k, h] : comps_) r.add_component(k, h.to_double_poly());
        return r;
    }

    void require_same_sphere(const SphereFunctionT& o) const {
        if (!(sphere_ == o.sphere_)) throw std::invalid_argument("SphereFunction: sphere mismatch");
    }

private:
    SphereSpec sphere_;
    std::map<int, HomPolyT<K>> comps_;  // canonical: no zero components
};

/// Exact restriction of an ambient homogeneous polynomial: harmonic
/// decomposition with |x|^(2j) replaced by r^(2j).
template <class K>
SphereFunctionT<K> restrict_to_sphere(const HomPolyT<K>& p, const SphereSpec& s) {
    if (p.ambient_dim() != s.ambient_dim())
        throw std::invalid_argument("restrict: ambient_dim != d + 1");
    SphereFunctionT<K> f(s);
    const K r2 = detail::coeff_cast(s.r2, K());
    for (const auto& [j, h] : harmonic_decompose(p).parts) {
        K scale(1);
        for (int t = 0; t < j; ++t) scale *= r2;
        f.add_component(p.degree() - 2 * j, h * scale);
    }
    return f;
}

/// Kernel-direction helper: restriction of the linear form sum_i c_i x_i.
template <class K>
SphereFunctionT<K> linear_restriction(const SphereSpec& s, const std::vector<K>& c) {
    return restrict_to_sphere(HomPolyT<K>::linear(s.ambient_dim(), c), s);
}

/// Exact pointwise product: multiply polynomial representatives pairwise and
/// re-restrict.
template <class K>
SphereFunctionT<K> pointwise_multiply(const SphereFunctionT<K>& f, const SphereFunctionT<K>& g) {
    f.require_same_sphere(g);
    SphereFunctionT<K> r(f.sphere());
    for (const auto& [ka, ha] : f.components())
        for (const auto& [kb, hb] : g.components()) {
            auto piece = restrict_to_sphere(multiply(ha, hb), f.sphere());
            for (const auto& [k, h] : piece.components()) r.add_component(k, h);
        }
    return r;
}

/// L^2 pairing on S^d(r) in sphere-volume units. Components of distinct
/// degrees are orthogonal, so only the diagonal contributes.
template <class K>
K l2_inner(const SphereFunctionT<K>& f, const SphereFunctionT<K>& g) {
    f.require_same_sphere(g);
    const SphereSpec& s = f.sphere();
    const K r2 = detail::coeff_cast(s.r2, K());
    K acc(0);
    for (const auto& [k, h] : f.components()) {
        auto it = g.components().find(k);
        if (it == g.components().end()) continue;
        acc += integrate_poly_volume_units(multiply(h, it->second), s.d, r2);
    }
    return acc;
}

template <class K>
K l2_norm_sq(const SphereFunctionT<K>& f) {
    return l2_inner(f, f);
}

/// Mean of f over the sphere (the degree-0 eigencomponent value).
template <class K>
K sphere_average(const SphereFunctionT<K>& f) {
    const SphereSpec& s = f.sphere();
    return l2_inner(f, SphereFunctionT<K>::constant(s, K(1)));
}

/// Even/odd-degree parts of f homogenized to a single polynomial each by
/// |x|^2 -> r^2 padding; f = (E + O)|_sphere exactly.
template <class K>
std::pair<HomPolyT<K>, HomPolyT<K>> parity_homogenized(const SphereFunctionT<K>& f) {
    const SphereSpec& s = f.sphere();
    const int D = s.ambient_dim();
    const K r2 = detail::coeff_cast(s.r2, K());
    int deg_even = 0, deg_odd = 1;
    for (const auto& [k, h] : f.components()) (k % 2 == 0 ? deg_even : deg_odd) = std::max(k % 2 == 0 ? deg_even : deg_odd, k);
    HomPolyT<K> E(D, deg_even), O(D, deg_odd);
    for (const auto& [k, h] : f.components()) {
        const int target = k % 2 == 0 ? deg_even : deg_odd;
        const int pad = (target - k) / 2;
        K scale(1);
        for (int i = 0; i < pad; ++i) scale = scale / r2;
        HomPolyT<K> lifted = radial_shift(h, pad) * scale;
        auto& dst = k % 2 == 0 ? E : O;
        dst = dst + lifted;
    }
    return {std::move(E), std::move(O)};
}

/// Exact integral of the pointwise power f^p over the sphere, in volume
/// units. Avoids the spectral decomposition entirely: the even and odd parts
/// are homogenized, the power is expanded binomially over them, and each
/// homogeneous term integrates through the moment formula.
template <class K>
K power_integral_volume_units(const SphereFunctionT<K>& f, int p) {
    if (p < 0) throw std::invalid_argument("power_integral: exponent must be >= 0");
    const SphereSpec& s = f.sphere();
    const K r2 = detail::coeff_cast(s.r2, K());
    if (p == 0) return K(1);
    auto [E, O] = parity_homogenized(f);
    std::vector<HomPolyT<K>> Epow{HomPolyT<K>::constant(s.ambient_dim(), K(1))};
    std::vector<HomPolyT<K>> Opow{HomPolyT<K>::constant(s.ambient_dim(), K(1))};
    for (int i = 1; i <= p; ++i) {
        Epow.push_back(multiply(Epow.back(), E));
        Opow.push_back(multiply(Opow.back(), O));
    }
    K total(0);
    K binom(1);
    for (int j = 0; j <= p; ++j) {
        if (j > 0) binom = binom * K(p - j + 1) / K(j);
        if (!Epow[p - j].is_zero() && !Opow[j].is_zero()) {
            K term = integrate_poly_volume_units(multiply(Epow[p - j], Opow[j]), s.d, r2);
            total += binom * term;
        }
    }
    return total;
}

/// Projection onto the degree-k eigencomponent; idempotent.
template <class K>
SphereFunctionT<K> project_component(const SphereFunctionT<K>& f, int k) {
    if (k < 0) throw std::invalid_argument("project_component: k must be >= 0");
    SphereFunctionT<K> r(f.sphere());
    auto it = f.components().find(k);
    if (it != f.components().end()) r.set_component(k, it->second);
    return r;
}

/// Componentwise Laplacian: degree k scales by its eigenvalue.
template <class K>
SphereFunctionT<K> laplace_beltrami(const SphereFunctionT<K>& f) {
    SphereFunctionT<K> r(f.sphere());
    for (const auto& [k, h] : f.components())
        r.add_component(k, h * eigenvalue_as(k, f.sphere(), K()));
    return r;
}

/// (Laplacian - lambda)^{-1}: divides each degree-k component by
/// (eigenvalue(k) - lambda). Requires the eigencomponent at the shift to be
/// exactly zero; reports the offending degree otherwise.
template <class K>
SphereFunctionT<K> resolvent_shifted(const SphereFunctionT<K>& f, const Rational& lambda) {
    SphereFunctionT<K> r(f.sphere());
    for (const auto& [k, h] : f.components()) {
        Rational gap = eigenvalue(k, f.sphere()) - lambda;
        if (gap == 0) throw ResolventError(k);
        r.add_component(k, h * (K(1) / detail::coeff_cast(gap, K())));
    }
    return r;
}

using SphereFunction = SphereFunctionT<Rational>;
using SphereFunctionD = SphereFunctionT<double>;

std::string to_string(const SphereFunction& f);

}  // namespace lsglue
