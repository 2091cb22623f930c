#pragma once

// Blow-up regime classification, the leading energy constant F(0), the
// reduced concentration profile and its optimal scale window, and the rate
// functions reported as metadata.

#include "lsglue/model.hpp"

#include <optional>
#include <string>

namespace lsglue {

enum class RegimeCase {
    LowDim,           // 3 <= n <= 5, sign-changing glueing
    Dim6SignChanging, // n = 6 with c_6 R_g - h < 2 u0
    Dim6Positive,     // n = 6 with h - c_6 R_g > 2 u0 > 0, positive glueing
    YamabeDim3to9,    // h = c_n R_g and 3 <= n <= 9
    YamabeDim10Weyl,  // n = 10, h = c_n R_g, u0 > (5/567) |Weyl|^2
    LCFYamabe,        // locally conformally flat with h = c_n R_g
    None
};

std::string to_string(RegimeCase c);

struct Regime {
    RegimeCase kind = RegimeCase::None;
    int kappa = -1;
    std::optional<double> F0;   // present (and positive) iff kind != None
    std::string reason;         // explanation when kind == None
};

/// First matching case for the configured sign: kappa = -1 walks the
/// sign-changing list in order, kappa = +1 tests the positive dim-6 case.
Regime classify_regime(const ProductConfig& cfg);

/// The leading constant of the reduced energy along the concentration ray:
///   F(0) = -kappa 2^n omega_{n-1} u0 / ((n(n-2))^((n-2)/4) omega_n)
///          + (5/4)(h - c_6 R_g)            when n = 6
///          - |Weyl|^2 / 576                when n = 10 and h = c_n R_g.
/// Raw formula value, no positivity enforcement (used by parameter sweeps).
double F0_formula(const ProductConfig& cfg, int kappa);

/// Exact value when every ingredient is rational (always the case for the
/// sign-sensitive branches n = 6 and n = 10).
std::optional<Rational> F0_exact(const ProductConfig& cfg, int kappa);

/// Positivity-enforced evaluation for an accepted regime; a nonpositive
/// value here is an internal inconsistency and aborts with a diagnostic.
double F0_eval(const ProductConfig& cfg, const Regime& regime);

/// Reduced profile psi(t) = ((n-2)^2/4) ln(1/t) + F0 t^((n-2)/2) with its
/// interior minimum t_star and the bracketing window [a, b] = [t_star/2,
/// 2 t_star].
struct EnergyProfile {
    int n = 0;
    double F0 = 0.0;
    double t_star = 0.0;
    double a = 0.0;
    double b = 0.0;
};

EnergyProfile profile_and_window(int n, double F0);

double psi(double t, int n, double F0);
double psi_prime(double t, int n, double F0);

/// Error-rate metadata: eps1 governs the glueing error, eps2 the energy
/// splitting error, both piecewise in the dimension.
struct RateFunctions {
    double eps1 = 0.0;
    double eps2 = 0.0;
};

RateFunctions rate_functions(int n, double delta);

}  // namespace lsglue
