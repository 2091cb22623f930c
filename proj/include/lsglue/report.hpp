#pragma once

// Pipeline orchestration and the serializable analysis report
// (schema "report.v1").

#include "lsglue/blowup.hpp"
#include "lsglue/config.hpp"
#include "lsglue/obstruction.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lsglue {

struct IdentityCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct AnalysisReport {
    // configuration echo
    int sphere_d = 0;
    Rational sphere_r2;
    int factor2_dim = 0;
    double factor2_volume = 1.0;
    Rational factor2_lambda1;
    Rational factor2_scalar_curvature;
    std::string mode;
    int kappa = -1;
    std::optional<Rational> weyl_sq;
    bool lcf = false;
    int order = 6;
    std::uint64_t seed = 0;

    // constants
    int n = 0;
    Rational two_star;
    Rational c_n;
    Rational h;
    double u0 = 0.0;
    std::optional<Rational> u0_exact;
    std::vector<Omega> omegas;

    // kernel
    int kernel_dim = 0;
    bool degenerate = true;
    std::vector<std::string> basis_labels;
    double h_norm_factor = 0.0;

    // second variation
    bool second_var_nonneg = false;

    // obstruction
    double A3_max_abs = 0.0;
    bool A3_exactly_zero = false;
    double A4_min = 0.0;
    Certificate certificate = Certificate::ClosedForm;
    A4Paths a4_paths;

    Verdict verdict = Verdict::Inconclusive;
    Regime regime;
    std::optional<EnergyProfile> profile;

    double rates_delta = 0.01;
    RateFunctions rates;

    std::vector<double> norm_decay;
    std::vector<IdentityCheck> identity_suite;

    /// 0: strict local minimizer with an accepted regime; 2: analysis ran
    /// but the existence hypotheses are not verified.
    int exit_code() const;
};

AnalysisReport run_analyze(const AnalysisOptions& options, std::uint64_t seed = 0);

std::string report_to_json(const AnalysisReport& report, int indent = 2);
std::string report_to_text(const AnalysisReport& report);

}  // namespace lsglue
