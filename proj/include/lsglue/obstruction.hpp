#pragma once

// Obstruction forms on the degenerate kernel: the cubic and quartic forms
// measuring the failure of kernel directions to extend to solutions, the
// general homogeneous coefficients of the norm expansions, functional
// evaluations along rays, and the strict-local-minimizer classifier.

#include "lsglue/model.hpp"
#include "lsglue/series.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lsglue {

/// Symmetric cubic form on the kernel; values are indexed [i][j][k] flat.
struct CubicForm {
    int kernel_dim = 0;
    std::vector<double> values;
    double max_abs = 0.0;
    bool exactly_zero = true;  // established on the exact rational integrals

    double operator()(const std::vector<double>& c) const;
};

CubicForm A3_form(const ProductConfig& cfg);

/// A3 along one direction, from the defining integral.
double A3_eval(const ProductConfig& cfg, const std::vector<Rational>& direction);

/// The quartic obstruction evaluated along one direction through three
/// routes that must agree: the defining integral with the computed second
/// series term, the constant-solution resolvent form, and the product
/// closed form proportional to the fourth moment.
struct A4Paths {
    double direct = 0.0;
    double constant_form = 0.0;
    double closed_form = 0.0;
    double max_rel_disagreement = 0.0;
};

A4Paths A4_eval(const ProductConfig& cfg, const std::vector<Rational>& direction);

enum class Certificate : std::uint8_t { ClosedForm, NumericHeuristic };

std::string to_string(Certificate c);

/// Symmetric quartic form with its minimum over the unit sphere of the
/// coupling norm and the certificate of how that minimum was obtained.
struct QuarticForm {
    int kernel_dim = 0;
    std::vector<double> values;  // flat [i][j][k][l]
    double min_on_unit_sphere = 0.0;
    Certificate certificate = Certificate::ClosedForm;
    /// Exact sign of the form on nonzero directions: +1, 0, or -1
    /// (from the rational closed-form coefficient).
    int sign = 0;

    double operator()(const std::vector<double>& c) const;
};

QuarticForm A4_form(const ProductConfig& cfg);

/// Multi-start projected gradient descent for min A4 over the unit sphere
/// of the coupling norm; deterministic in the seed.
double A4_min_heuristic(const ProductConfig& cfg, const QuarticForm& form, std::uint64_t seed,
                        int starts = 64);

/// Coefficient u_{k,q} of the norm expansion: requires the series to carry
/// P_1..P_max(k-1, q).
double u_kq(const SeriesExpansion& series, int k, int q);

/// A_L = -u_{L-1,1}, the degree-L obstruction coefficient.
double A_L_eval(const SeriesExpansion& series, int L);

/// Exact value of A_L in volume units (per Vol(M2) omega_d r^d), available
/// when the u0 power ladder is exact.
std::optional<Rational> A_L_exact_volume_units(const SeriesExpansion& series, int L);

/// Order-by-order verification of the two norm-expansion identities
///   |u|_h^2 - |u|_{2*}^{2*} = sum_L A_L t^L
///   |u|_{2*}^{2*} = |u0|_{2*}^{2*} - (n/2) sum_L ((L-2)/L) A_L t^L
/// along the ray t -> t phi: both sides are interpolated from Chebyshev-
/// spaced nodes and compared per order. With an integer critical exponent
/// and exact u0 the nodes are rationalized and the fit is exact.
struct NormExpansionResult {
    bool exact_mode = false;
    int L_max = 0;
    std::vector<double> lhs1, rhs1, lhs2, rhs2;          // coefficients per order 0..L_max
    std::vector<double> residual1, residual2;            // absolute per order
    double scale1 = 0.0, scale2 = 0.0;                   // max coefficient magnitudes
    double max_rel_residual1 = 0.0, max_rel_residual2 = 0.0;
};

NormExpansionResult norm_expansion_check(const ProductConfig& cfg,
                                         const std::vector<Rational>& direction, int L_max);

/// Functional data of one function on the product manifold.
struct Functionals {
    double norm_h_sq = 0.0;    // |u|_h^2 over M
    double lp_integral = 0.0;  // int_M H(u)^{2*}
    double norm_2star = 0.0;   // lp_integral^(1/2*)
    double I0 = 0.0;
    double J0 = 0.0;
};

/// quad_order controls the fallback pointwise integration used when the
/// critical exponent is not an integer or u changes sign.
Functionals functionals_eval(const ProductConfig& cfg, const ScaledSum& u, int quad_order = 48);

/// Functionals of the constant solution (closed form).
Functionals functionals_u0(const ProductConfig& cfg);

/// Exact functional core for rational functions: coupling norm and critical
/// integral in volume units. Requires an integer critical exponent; the
/// caller is responsible for positivity when the exponent is odd.
struct ExactFunctionals {
    Rational norm_h_sq_vu;
    Rational lp_vu;
};

ExactFunctionals functionals_exact_volume_units(const ProductConfig& cfg, const SphereFunction& u);

/// Evaluation of the normalized ray function
///   f(t) = (J0(u(t phi)) - J0(u0)) / (t^2 |u0|_h^2),   f(0) = 0,
/// its finite-difference derivative, and the residual of the closed ray
/// identity relating I0 to f and f'.
struct RayEvaluation {
    double t = 0.0;
    double I0 = 0.0;
    double J0 = 0.0;
    double f = 0.0;
    double f_prime = 0.0;
    double identity_residual = 0.0;
};

RayEvaluation ray_eval(const ProductConfig& cfg, const std::vector<Rational>& direction, double t,
                       int L_max);

/// Same evaluation on an already-built series (avoids recomputing P_L when
/// scanning many t along one ray).
RayEvaluation ray_eval(const SeriesExpansion& series, double t);

enum class Verdict : std::uint8_t { StrictLocalMin, Inconclusive, NotLocalMin };

std::string to_string(Verdict v);

struct MinimizerReport {
    bool A3_zero = false;
    bool second_var_nonneg = false;
    double A4_min = 0.0;
    Certificate certificate = Certificate::ClosedForm;
    Verdict verdict = Verdict::Inconclusive;
};

MinimizerReport classify_minimizer(const ProductConfig& cfg, int L_max = 4,
                                   std::uint64_t seed = 0);

}  // namespace lsglue
