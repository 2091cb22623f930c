#include "lsglue/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lsglue {

AbstractFactor AbstractFactor::sphere(int dim, const Rational& r) {
    if (dim < 1) throw ConfigError("AbstractFactor::sphere: dim must be >= 1");
    if (r <= 0) throw ConfigError("AbstractFactor::sphere: radius must be positive");
    SphereSpec s = SphereSpec::with_radius(dim, r);
    AbstractFactor f;
    f.dim = dim;
    f.volume = sphere_volume(s);
    f.lambda1 = eigenvalue(1, s);
    f.scalar_curvature = Rational(dim) * Rational(dim - 1) / s.r2;
    return f;
}

std::string to_string(HMode m) {
    switch (m) {
        case HMode::ProductDefault: return "product";
        case HMode::YamabeCoupling: return "yamabe";
        case HMode::CustomConstant: return "custom";
    }
    return "?";
}

double Omega::value() const { return to_double(coeff) * std::pow(std::numbers::pi, pi_power); }

Omega omega(int k) {
    if (k < 0) throw std::invalid_argument("omega: k must be >= 0");
    // omega_k = 2 pi^((k+1)/2) / Gamma((k+1)/2); track Gamma(z) for
    // half-integer z as gamma_coeff * pi^(1/2 * gamma_half) via
    // Gamma(z+1) = z Gamma(z) from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
    Rational gamma_coeff = 1;
    int gamma_half = (k + 1) % 2;  // z = (k+1)/2 half-integral iff k even
    Rational z = Rational(k + 1) / 2;
    for (Rational w = gamma_half ? Rational(1, 2) : Rational(1); w < z; w += 1) gamma_coeff *= w;
    Omega o;
    o.coeff = Rational(2) / gamma_coeff;
    // pi^((k+1)/2) / pi^(gamma_half/2): the exponent is an integer.
    o.pi_power = (k + 1 - gamma_half) / 2;
    return o;
}

Constants constants(int n) {
    if (n < 3) throw ConfigError("constants: n must be >= 3");
    Constants c;
    c.n = n;
    c.two_star = Rational(2 * n) / Rational(n - 2);
    c.c_n = Rational(n - 2) / Rational(4 * (n - 1));
    c.omegas.reserve(n + 1);
    for (int k = 0; k <= n; ++k) c.omegas.push_back(omega(k));
    return c;
}

ProductConfig ProductConfig::make(SphereSpec sphere, AbstractFactor factor2, int kappa, HMode h_mode,
                                  Rational h_custom, std::optional<Rational> weyl_sq, bool lcf) {
    ProductConfig cfg;
    cfg.sphere_ = std::move(sphere);
    cfg.factor2_ = std::move(factor2);
    cfg.kappa_ = kappa;
    cfg.h_mode_ = h_mode;
    cfg.h_custom_ = std::move(h_custom);
    cfg.weyl_sq_ = std::move(weyl_sq);
    cfg.lcf_ = lcf;
    cfg.n_ = cfg.sphere_.d + cfg.factor2_.dim;

    if (kappa != -1 && kappa != 1) throw ConfigError("kappa must be -1 or +1");
    if (cfg.n_ < 3) throw ConfigError("n = d + dim(M2) must be >= 3");
    if (cfg.factor2_.dim < 0) throw ConfigError("factor2.dim must be >= 0");
    if (cfg.factor2_.is_point()) {
        if (cfg.factor2_.volume != 1.0) throw ConfigError("point factor must have volume 1");
    } else {
        if (cfg.factor2_.volume <= 0.0) throw ConfigError("factor2.volume must be positive");
        if (cfg.factor2_.lambda1 <= 0) throw ConfigError("factor2.lambda1 must be positive");
    }
    if (cfg.weyl_sq_ && *cfg.weyl_sq_ < 0) throw ConfigError("weyl_sq must be nonnegative");
    if (h_mode == HMode::CustomConstant && cfg.h_custom_ <= 0)
        throw ConfigError("custom coupling constant must be positive");
    if (cfg.h() <= 0) throw ConfigError("coupling constant h must be positive");
    return cfg;
}

Rational ProductConfig::scalar_curvature() const {
    return Rational(sphere_.d) * Rational(sphere_.d - 1) / sphere_.r2 + factor2_.scalar_curvature;
}

Rational ProductConfig::h() const {
    switch (h_mode_) {
        case HMode::ProductDefault: return lambda1_sphere() / (two_star() - 2);
        case HMode::YamabeCoupling: return c_n() * scalar_curvature();
        case HMode::CustomConstant: return h_custom_;
    }
    throw std::logic_error("unreachable");
}

double ProductConfig::u0() const { return u0_pow(Rational(1)); }

double ProductConfig::u0_pow(const Rational& e) const {
    Rational h_exp = e * Rational(n_ - 2) / 4;
    if (auto exact = u0_pow_exact(e)) return to_double(*exact);
    return std::pow(to_double(h()), to_double(h_exp));
}

std::optional<Rational> ProductConfig::u0_pow_exact(const Rational& e) const {
    Rational h_exp = e * Rational(n_ - 2) / 4;
    Rational hv = h();
    mpz_class num = h_exp.get_num(), den = h_exp.get_den();
    if (den == 1) {
        long p = num.get_si();
        return pow_int(hv, p);
    }
    auto root = exact_root(hv, den.get_ui());
    if (!root) return std::nullopt;
    return pow_int(*root, num.get_si());
}

ConstantSolution constant_solution(const ProductConfig& cfg) {
    ConstantSolution sol;
    sol.h = cfg.h();
    if (sol.h <= 0) throw HypothesisError("coupling constant h must be positive");
    sol.u0 = cfg.u0();
    sol.u0_exact = cfg.u0_exact();
    // h * u0 = u0^(2* - 1): both sides are h^((n+2)/4), checked at the
    // exponent level so the identity is exact even when u0 is irrational.
    Rational lhs_exp = 1 + Rational(cfg.n() - 2) / 4;
    Rational rhs_exp = (cfg.two_star() - 1) * Rational(cfg.n() - 2) / 4;
    if (lhs_exp != rhs_exp)
        throw std::logic_error("constant_solution: h u0 = u0^(2*-1) failed");
    return sol;
}

KernelBasis kernel_basis(const ProductConfig& cfg) {
    Rational lam1 = cfg.lambda1_sphere();
    if ((cfg.two_star() - 2) * cfg.h() != lam1)
        throw HypothesisError(
            "kernel characterization fails: (2*-2) h must equal the first sphere eigenvalue "
            "lambda1(M1) so that the linearization degenerates along the sphere factor");
    if (!cfg.is_pure_sphere()) {
        if (lam1 > cfg.factor2().lambda1)
            throw HypothesisError(
                "kernel characterization fails: lambda1(M1) < lambda1(M2) is required (got "
                "lambda1(M1) = " + to_string(lam1) + " > lambda1(M2) = " +
                to_string(cfg.factor2().lambda1) + ")");
        if (lam1 == cfg.factor2().lambda1)
            throw HypothesisError(
                "kernel characterization fails: lambda1(M1) = lambda1(M2); the strict inequality "
                "lambda1(M1) < lambda1(M2) is required and the equal case is refused");
    }

    KernelBasis kb;
    kb.dim = cfg.sphere().d + 1;
    kb.degenerate = kb.dim > 0;
    for (int i = 0; i < kb.dim; ++i) {
        SphereFunction f(cfg.sphere());
        f.set_component(1, HomPoly::coordinate(cfg.sphere().ambient_dim(), i));
        kb.basis.push_back(std::move(f));
    }
    // |phi_c|_h^2 = (lambda1 + h) Vol(M2) int_{M1} phi_c^2 and
    // int_{M1} x_i^2 = r^2/(d+1) in sphere-volume units.
    kb.h_norm_volume_units = (lam1 + cfg.h()) * cfg.sphere().r2 / (cfg.sphere().d + 1);
    kb.h_norm_factor =
        to_double(kb.h_norm_volume_units) * cfg.factor2().volume * sphere_volume(cfg.sphere());
    return kb;
}

double h_norm_sq(const KernelBasis& kb, const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != kb.dim)
        throw std::invalid_argument("h_norm_sq: coefficient count != kernel dim");
    Rational c2 = 0;
    for (const auto& ci : c) c2 += ci * ci;
    return kb.h_norm_factor * to_double(c2);
}

SecondVariation second_variation_check(const ProductConfig& cfg) {
    SecondVariation sv;
    sv.kernel_dim = cfg.sphere().d + 1;
    sv.nonnegative = cfg.is_pure_sphere() || cfg.lambda1_sphere() <= cfg.factor2().lambda1;
    return sv;
}

ProductConfig yamabe_product(const AbstractFactor& N, int d, int kappa,
                             std::optional<Rational> weyl_sq, bool lcf) {
    if (d < 1) throw ConfigError("yamabe_product: d must be >= 1");
    if (N.dim < 1) throw ConfigError("yamabe_product: factor must have dim >= 1");
    if (N.scalar_curvature <= 0)
        throw HypothesisError("yamabe_product: the factor must have positive scalar curvature");
    if (!(N.scalar_curvature < Rational(N.dim) * N.lambda1))
        throw HypothesisError(
            "yamabe_product: R(N) < dim(N) lambda1(N) fails (got R = " +
            to_string(N.scalar_curvature) + ", dim * lambda1 = " +
            to_string(Rational(N.dim) * N.lambda1) + ")");
    if (d + N.dim < 3) throw HypothesisError("yamabe_product: n = d + dim(N) must be >= 3");

    Rational r0_sq = Rational(N.dim) * Rational(d) / N.scalar_curvature;
    auto cfg = ProductConfig::make(SphereSpec::with_radius_squared(d, r0_sq), N, kappa,
                                   HMode::YamabeCoupling, 0, std::move(weyl_sq), lcf);
    // c_n R_g = lambda1(S^d(r0)) / (2* - 2) must hold exactly for this radius.
    if (cfg.h() != cfg.lambda1_sphere() / (cfg.two_star() - 2))
        throw std::logic_error("yamabe_product: coupling identity failed");
    return cfg;
}

double sphere_volume(const SphereSpec& s) {
    return omega(s.d).value() * std::pow(s.radius(), s.d);
}

double product_volume(const ProductConfig& cfg) {
    return sphere_volume(cfg.sphere()) * cfg.factor2().volume;
}

}  // namespace lsglue
