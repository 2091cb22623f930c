#pragma once

// Model configurations: a round sphere factor times an abstract factor, the
// positive constant solution of the critical equation, the degenerate kernel
// spanned by first sphere harmonics, and dimension constants.

#include "lsglue/rational.hpp"
#include "lsglue/sphere.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsglue {

/// Invalid or inconsistent configuration input.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A structural hypothesis of the analysis fails for this configuration.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Second factor of the product, carried abstractly: only its dimension,
/// volume, first nonzero Laplacian eigenvalue and (constant) scalar
/// curvature enter the analysis. dim = 0 is the degenerate point factor
/// (volume 1), which realizes the pure-sphere case.
struct AbstractFactor {
    int dim = 0;
    double volume = 1.0;
    Rational lambda1 = 0;
    Rational scalar_curvature = 0;

    static AbstractFactor point() { return AbstractFactor{0, 1.0, Rational(0), Rational(0)}; }

    static AbstractFactor sphere(int dim, const Rational& r);

    bool is_point() const { return dim == 0; }
};

enum class HMode { ProductDefault, YamabeCoupling, CustomConstant };

std::string to_string(HMode m);

/// Volume coefficient and pi power of the canonical unit k-sphere:
/// omega_k = coeff * pi^pi_power (the power is always an integer).
struct Omega {
    Rational coeff = 0;
    int pi_power = 0;
    double value() const;
};

Omega omega(int k);

struct Constants {
    int n = 0;
    Rational two_star;
    Rational c_n;
    std::vector<Omega> omegas;  // omegas[k] for k = 0..n
};

/// n >= 3 required. two_star = 2n/(n-2), c_n = (n-2)/(4(n-1)), omega_k by
/// the half-integer Gamma recurrence.
Constants constants(int n);

/// The model manifold S^d(r) x M2 with product coupling data.
class ProductConfig {
public:
    static ProductConfig make(SphereSpec sphere, AbstractFactor factor2, int kappa = -1,
                              HMode h_mode = HMode::ProductDefault, Rational h_custom = 0,
                              std::optional<Rational> weyl_sq = std::nullopt, bool lcf = false);

    const SphereSpec& sphere() const { return sphere_; }
    const AbstractFactor& factor2() const { return factor2_; }
    int kappa() const { return kappa_; }
    HMode h_mode() const { return h_mode_; }
    const std::optional<Rational>& weyl_sq() const { return weyl_sq_; }
    bool lcf() const { return lcf_; }

    int n() const { return n_; }
    Rational two_star() const { return Rational(2 * n_) / Rational(n_ - 2); }
    Rational c_n() const { return Rational(n_ - 2) / Rational(4 * (n_ - 1)); }

    /// First nonzero eigenvalue of the sphere factor, d/r^2.
    Rational lambda1_sphere() const { return eigenvalue(1, sphere_); }

    /// Scalar curvature of the product metric.
    Rational scalar_curvature() const;

    /// The coupling constant; exact in every mode.
    Rational h() const;

    /// u0 = h^((n-2)/4), the positive constant solution.
    double u0() const;
    std::optional<Rational> u0_exact() const { return u0_pow_exact(Rational(1)); }

    /// u0^e = h^(e (n-2)/4); exact when the resulting h-exponent is an
    /// integer or h has an exact rational root.
    double u0_pow(const Rational& e) const;
    std::optional<Rational> u0_pow_exact(const Rational& e) const;

    bool is_pure_sphere() const { return factor2_.is_point(); }

private:
    ProductConfig() = default;

    SphereSpec sphere_ = SphereSpec::unit(1);
    AbstractFactor factor2_;
    int kappa_ = -1;
    HMode h_mode_ = HMode::ProductDefault;
    Rational h_custom_ = 0;
    std::optional<Rational> weyl_sq_;
    bool lcf_ = false;
    int n_ = 0;
};

struct ConstantSolution {
    Rational h;
    double u0 = 0.0;
    std::optional<Rational> u0_exact;
};

/// The positive constant solution (h, u0); verifies h * u0 = u0^(2*-1)
/// exactly at the level of h-exponents.
ConstantSolution constant_solution(const ProductConfig& cfg);

/// Basis of the degenerate kernel: restrictions of the ambient coordinates
/// x_1..x_{d+1}, lifted to the product. For the linear combination with
/// coefficient vector c, the squared coupling norm is h_norm_factor * |c|^2.
struct KernelBasis {
    std::vector<SphereFunction> basis;
    int dim = 0;
    bool degenerate = true;
    double h_norm_factor = 0.0;
    /// Exact part of h_norm_factor: (lambda1 + h) * r^2/(d+1); the numeric
    /// factor multiplies this by Vol(M2) * omega_d r^d.
    Rational h_norm_volume_units = 0;
};

/// Throws HypothesisError unless the kernel is exactly the lifted first
/// sphere eigenspace: requires (2*-2) h = lambda1(M1) and, for a non-point
/// second factor, lambda1(M1) < lambda1(M2) strictly.
KernelBasis kernel_basis(const ProductConfig& cfg);

/// Squared coupling norm of a kernel element with coefficients c.
double h_norm_sq(const KernelBasis& kb, const std::vector<Rational>& c);

struct SecondVariation {
    bool nonnegative = false;
    int kernel_dim = 0;
};

SecondVariation second_variation_check(const ProductConfig& cfg);

/// The Yamabe product construction: given a factor N of positive constant
/// scalar curvature with R < dim(N) * lambda1(N), the sphere radius
/// r0 = sqrt(dim(N) d / R) makes the constant solution of the scalar
/// curvature equation on S^d(r0) x N degenerate. Verifies exactly that
/// c_n R_g = lambda1(S^d(r0)) / (2* - 2).
ProductConfig yamabe_product(const AbstractFactor& N, int d, int kappa = -1,
                             std::optional<Rational> weyl_sq = std::nullopt, bool lcf = false);

/// Total volume of the product manifold, omega_d r^d * Vol(M2).
double product_volume(const ProductConfig& cfg);

/// omega_d r^d of the sphere factor (numeric).
double sphere_volume(const SphereSpec& s);

}  // namespace lsglue
