#pragma once

// The analytic glueing series along a kernel direction: Taylor coefficients
// of the critical nonlinearity at the constant solution, multinomial power
// tensors, and the spectral recursion for the correction terms P_L.
//
// Scalar bookkeeping: with u = u0 v the equation for v - 1 has coefficients
// h * prod_{i=1..k}(2* - i)/k!, all rational, and P_L(phi) = u0^(1-L) Pi_L
// where Pi_L solves the same recursion with those reduced coefficients and
// Pi_1 = phi. The polynomial layer therefore stays exact for every
// configuration; irrational scalars appear only as u0-power prefactors.

#include "lsglue/model.hpp"
#include "lsglue/sphere.hpp"

#include <optional>
#include <vector>

namespace lsglue {

/// Taylor coefficients a_k of u -> u^(2*-1) at u0:
/// a_k = u0^(2*-1-k) prod_{i=1..k}(2* - i) / k!.
struct TaylorCoeffs {
    double two_star = 0.0;
    double u0 = 0.0;
    std::vector<double> a;  // a[k], k = 0..L_max
};

TaylorCoeffs taylor_coeffs(double u0, double two_star, int L_max);

/// Reduced rational coefficients a~_k = h prod_{i=1..k}(2* - i)/k! with
/// a_k = u0^(1-k) a~_k.
std::vector<Rational> reduced_taylor_coeffs(const Rational& h, const Rational& two_star, int L_max);

/// One term of the multinomial expansion (X_1 + ... + X_L)^k: exponents
/// r_1..r_L with sum r = k, and coefficient k!/prod r_l!.
struct MultinomialTerm {
    std::vector<int> exponents;
    Rational coeff;
};

/// All terms with sum_l l r_l = j; empty iff j is outside [k, Lk].
std::vector<MultinomialTerm> multinomial_Q(int k, int L, int j);

/// Truncated glueing series along a fixed kernel direction.
/// reduced[L] = Pi_L for L = 1..L_max (index 0 unused); P_L = u0^(1-L) Pi_L.
class SeriesExpansion {
public:
    SeriesExpansion(const ProductConfig& cfg, std::vector<Rational> direction, int L_max);

    const std::vector<Rational>& direction() const { return direction_; }
    int L_max() const { return L_max_; }
    const SphereFunction& reduced(int L) const { return reduced_.at(L); }

    /// u0^(1-L), the scalar carrying P_L = scale * reduced(L).
    double term_scale(int L) const;
    std::optional<Rational> term_scale_exact(int L) const;

    /// L2(M)-norm of P_L (includes the second-factor volume).
    double term_l2_norm(int L) const;

    const ProductConfig& config() const { return cfg_; }

private:
    ProductConfig cfg_;
    std::vector<Rational> direction_;
    int L_max_;
    std::vector<SphereFunction> reduced_;
};

/// P_L for one direction as (scale, function) with P_L = scale * fn.
struct ScaledFn {
    double scale = 1.0;
    SphereFunction fn;
};

ScaledFn compute_P(const ProductConfig& cfg, const std::vector<Rational>& direction, int L);

/// Linear combination of rational sphere functions with double scalars;
/// the working representation of the truncated u when u0 is irrational.
struct ScaledSum {
    SphereSpec sphere;
    std::vector<std::pair<double, SphereFunction>> terms;

    double evaluate(const std::vector<double>& x) const;
    SphereFunctionD collapse() const;
};

/// Truncated glueing map u(t phi) = u0 + t phi + sum_L t^L P_L.
ScaledSum u_truncated(const SeriesExpansion& series, double t);

/// True when every scalar in the truncated series is exactly rational
/// (u0 and its inverse powers), so the exact evaluation path applies.
bool series_is_exact(const SeriesExpansion& series);

/// Exact single-function form of u(t phi) for rational t; requires
/// series_is_exact.
SphereFunction u_truncated_exact(const SeriesExpansion& series, const Rational& t);

struct GlueingEval {
    SeriesExpansion series;
    ScaledSum u_truncated;           // u0 + phi + sum_L P_L at t = 1
    std::vector<double> norm_decay;  // |P_L|_{L2(M)} for L = 1..L_max
};

GlueingEval glueing_eval(const ProductConfig& cfg, const std::vector<Rational>& direction, int L_max);

/// Squared L2-norm of the projected fixed-point residual
///   Pi_{K0 perp}( u(t) - (Lap + h)^{-1}( u(t)^(2*-1) ) )
/// for the truncated series, in units of the total volume of M; decays like
/// t^(2 L_max + 2). Exact when series_is_exact and t is rational; for
/// non-integer 2* the nonlinearity is Taylor-expanded to the working order,
/// which leaves the residual meaningful through order L_max + 1.
double residual_projected_norm_sq(const SeriesExpansion& series, double t);
Rational residual_projected_norm_sq_exact(const SeriesExpansion& series, const Rational& t);

}  // namespace lsglue
