#include "lsglue/blowup.hpp"

#include <cmath>
#include <sstream>

namespace lsglue {

std::string to_string(RegimeCase c) {
    switch (c) {
        case RegimeCase::LowDim: return "low_dim";
        case RegimeCase::Dim6SignChanging: return "dim6_sign_changing";
        case RegimeCase::Dim6Positive: return "dim6_positive";
        case RegimeCase::YamabeDim3to9: return "yamabe_dim3to9";
        case RegimeCase::YamabeDim10Weyl: return "yamabe_dim10_weyl";
        case RegimeCase::LCFYamabe: return "lcf_yamabe";
        case RegimeCase::None: return "none";
    }
    return "?";
}

namespace {

bool is_yamabe_coupled(const ProductConfig& cfg) {
    return cfg.h() == cfg.c_n() * cfg.scalar_curvature();
}

}  // namespace

Regime classify_regime(const ProductConfig& cfg) {
    const int n = cfg.n();
    Regime reg;
    reg.kappa = cfg.kappa();
    Rational h = cfg.h();
    Rational gap = cfg.c_n() * cfg.scalar_curvature() - h;  // c_n R_g - h

    auto accept = [&](RegimeCase kind) {
        reg.kind = kind;
        reg.F0 = F0_eval(cfg, Regime{kind, reg.kappa, std::nullopt, ""});
        return reg;
    };

    if (reg.kappa == 1) {
        if (n != 6) {
            reg.reason = "positive glueing requires n = 6";
            return reg;
        }
        // h - c_6 R_g > 2 u0 > 0; u0 = h is exact for n = 6.
        Rational u0 = cfg.u0_pow_exact(Rational(1)).value();
        if (-gap > 2 * u0 && u0 > 0) return accept(RegimeCase::Dim6Positive);
        reg.reason = "h - c_6 R_g > 2 u0 fails";
        return reg;
    }

    if (n >= 3 && n <= 5) return accept(RegimeCase::LowDim);
    if (n == 6) {
        Rational u0 = cfg.u0_pow_exact(Rational(1)).value();
        if (gap < 2 * u0) return accept(RegimeCase::Dim6SignChanging);
    }
    if (n >= 3 && n <= 9 && is_yamabe_coupled(cfg)) return accept(RegimeCase::YamabeDim3to9);
    if (n == 10 && is_yamabe_coupled(cfg)) {
        if (!cfg.weyl_sq())
            throw ConfigError(
                "the n = 10 scalar-curvature branch needs weyl_sq (pass 0 for conformally flat)");
        Rational u0 = cfg.u0_pow_exact(Rational(1)).value();  // u0 = h^2 is exact
        if (u0 > rational_of(5, 567) * *cfg.weyl_sq()) return accept(RegimeCase::YamabeDim10Weyl);
    }
    if (cfg.lcf() && is_yamabe_coupled(cfg)) return accept(RegimeCase::LCFYamabe);

    std::ostringstream why;
    why << "no sign-changing case matches: n = " << n;
    if (n == 6) why << ", c_6 R_g - h < 2 u0 fails";
    if (!is_yamabe_coupled(cfg)) why << ", h != c_n R_g";
    if (n == 10 && is_yamabe_coupled(cfg)) why << ", u0 > (5/567) |Weyl|^2 fails";
    if (!cfg.lcf()) why << ", not locally conformally flat";
    reg.reason = why.str();
    return reg;
}

std::optional<Rational> F0_exact(const ProductConfig& cfg, int kappa) {
    const int n = cfg.n();
    // (n(n-2))^((n-2)/4) is rational iff (n-2) is a multiple of 4; the
    // omega ratio drops the pi power iff n is even. u0 must be exact.
    if ((n - 2) % 4 != 0 || n % 2 != 0) return std::nullopt;
    auto u0 = cfg.u0_exact();
    if (!u0) return std::nullopt;
    Omega om_lo = omega(n - 1), om_hi = omega(n);
    if (om_lo.pi_power != om_hi.pi_power) return std::nullopt;
    Rational base = pow_int(Rational(n) * Rational(n - 2), (n - 2) / 4);
    Rational universal = -Rational(kappa) * pow_int(Rational(2), n) * om_lo.coeff /
                         (base * om_hi.coeff) * (*u0);
    Rational extra = 0;
    Rational coupling_gap = cfg.h() - cfg.c_n() * cfg.scalar_curvature();  // h - c_n R_g
    if (n == 6) {
        extra = Rational(2 * (n - 1)) / (Rational(n - 2) * Rational(n - 4)) * coupling_gap;
    } else if (n == 10 && coupling_gap == 0) {
        if (!cfg.weyl_sq()) return std::nullopt;
        extra = -*cfg.weyl_sq() / Rational(24 * (n - 4) * (n - 6));
    }
    return universal + extra;
}

double F0_formula(const ProductConfig& cfg, int kappa) {
    if (auto exact = F0_exact(cfg, kappa)) return to_double(*exact);
    const int n = cfg.n();
    double universal = -kappa * std::pow(2.0, n) * omega(n - 1).value() * cfg.u0() /
                       (std::pow(n * (n - 2.0), (n - 2.0) / 4.0) * omega(n).value());
    double gap = to_double(cfg.h() - cfg.c_n() * cfg.scalar_curvature());
    double extra = 0.0;
    if (n == 6) {
        extra = 2.0 * (n - 1.0) / ((n - 2.0) * (n - 4.0)) * gap;
    } else if (n == 10 && gap == 0.0) {
        if (!cfg.weyl_sq())
            throw ConfigError("the n = 10 scalar-curvature branch needs weyl_sq");
        extra = -to_double(*cfg.weyl_sq()) / (24.0 * (n - 4.0) * (n - 6.0));
    }
    return universal + extra;
}

double F0_eval(const ProductConfig& cfg, const Regime& regime) {
    if (regime.kind == RegimeCase::None)
        throw std::invalid_argument("F0_eval: no accepted regime");
    double value = F0_formula(cfg, regime.kappa);
    if (!(value > 0.0))
        throw std::logic_error(
            "internal inconsistency: F(0) must be positive in an accepted regime, got " +
            std::to_string(value));
    return value;
}

EnergyProfile profile_and_window(int n, double F0) {
    if (n < 3) throw ConfigError("profile: n must be >= 3");
    if (!(F0 > 0.0)) throw ConfigError("profile: F0 must be positive");
    EnergyProfile p;
    p.n = n;
    p.F0 = F0;
    p.t_star = std::pow((n - 2.0) / (2.0 * F0), 2.0 / (n - 2.0));
    p.a = p.t_star / 2.0;
    p.b = 2.0 * p.t_star;
    return p;
}

double psi(double t, int n, double F0) {
    if (!(t > 0.0)) throw std::domain_error("psi: t must be positive");
    return (n - 2.0) * (n - 2.0) / 4.0 * std::log(1.0 / t) + F0 * std::pow(t, (n - 2.0) / 2.0);
}

double psi_prime(double t, int n, double F0) {
    if (!(t > 0.0)) throw std::domain_error("psi_prime: t must be positive");
    return -(n - 2.0) * (n - 2.0) / (4.0 * t) +
           F0 * (n - 2.0) / 2.0 * std::pow(t, (n - 4.0) / 2.0);
}

RateFunctions rate_functions(int n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("rate_functions: delta must be in (0,1)");
    if (n < 3) throw ConfigError("rate_functions: n must be >= 3");
    RateFunctions r;
    double log_inv = std::log(1.0 / delta);
    if (n < 6)
        r.eps1 = std::pow(delta, (n - 2.0) / 2.0);
    else if (n == 6)
        r.eps1 = delta * delta * std::pow(log_inv, 2.0 / 3.0);
    else
        r.eps1 = std::pow(delta, (n + 2.0) / 4.0);
    if (n == 3)
        r.eps2 = delta;
    else if (n == 4)
        r.eps2 = delta * delta * log_inv;
    else
        r.eps2 = std::pow(delta, n / 2.0);
    return r;
}

}  // namespace lsglue
