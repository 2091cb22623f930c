#include "lsglue/report.hpp"

#include "json.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lsglue {

namespace {

using nlohmann::json;

std::vector<Rational> random_direction(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(dim);
    bool nonzero = false;
    for (auto& ci : c) {
        ci = rational_of(num(rng), den(rng));
        if (ci != 0) nonzero = true;
    }
    if (!nonzero) c[0] = 1;
    return c;
}

IdentityCheck make_check(std::string name, double residual, double tolerance) {
    IdentityCheck c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

/// Exact residual of the first-eigenspace resolvent identity on this
/// configuration's sphere (0 or 1; it either holds exactly or not).
double resolvent_identity_residual(const ProductConfig& cfg, std::mt19937_64& rng) {
    const SphereSpec s = SphereSpec::unit(cfg.sphere().d);
    Rational lam1 = eigenvalue(1, s), lam2 = eigenvalue(2, s);
    auto c = random_direction(rng, s.ambient_dim());
    auto phi_poly = HomPoly::linear(s.ambient_dim(), c);
    auto phi_sq = multiply(phi_poly, phi_poly);
    auto lhs = resolvent_shifted(restrict_to_sphere(phi_sq, s), lam1);
    Rational lap_value = laplacian_euclidean(phi_sq).coeff(MultiIndex(s.ambient_dim(), 0));
    auto rhs = (restrict_to_sphere(phi_sq, s) +
                SphereFunction::constant(s, lam2 * lap_value / (2 * (s.d + 1) * lam1))) *
               (Rational(1) / (lam2 - lam1));
    return lhs == rhs ? 0.0 : 1.0;
}

}  // namespace

int AnalysisReport::exit_code() const {
    return (verdict == Verdict::StrictLocalMin && regime.kind != RegimeCase::None) ? 0 : 2;
}

AnalysisReport run_analyze(const AnalysisOptions& options, std::uint64_t seed) {
    const ProductConfig& cfg = options.cfg;
    AnalysisReport rep;
    rep.sphere_d = cfg.sphere().d;
    rep.sphere_r2 = cfg.sphere().r2;
    rep.factor2_dim = cfg.factor2().dim;
    rep.factor2_volume = cfg.factor2().volume;
    rep.factor2_lambda1 = cfg.factor2().lambda1;
    rep.factor2_scalar_curvature = cfg.factor2().scalar_curvature;
    rep.mode = to_string(cfg.h_mode());
    rep.kappa = cfg.kappa();
    rep.weyl_sq = cfg.weyl_sq();
    rep.lcf = cfg.lcf();
    rep.order = options.order;
    rep.seed = seed;

    auto cs = constants(cfg.n());
    rep.n = cfg.n();
    rep.two_star = cs.two_star;
    rep.c_n = cs.c_n;
    rep.omegas = cs.omegas;
    auto sol = constant_solution(cfg);
    rep.h = sol.h;
    rep.u0 = sol.u0;
    rep.u0_exact = sol.u0_exact;

    auto kb = kernel_basis(cfg);
    rep.kernel_dim = kb.dim;
    rep.degenerate = kb.degenerate;
    for (int i = 0; i < kb.dim; ++i) rep.basis_labels.push_back("x" + std::to_string(i + 1));
    rep.h_norm_factor = kb.h_norm_factor;

    rep.second_var_nonneg = second_variation_check(cfg).nonnegative;

    std::mt19937_64 rng(seed);
    auto probe_dir = random_direction(rng, kb.dim);

    auto a3 = A3_form(cfg);
    rep.A3_max_abs = a3.max_abs;
    rep.A3_exactly_zero = a3.exactly_zero;
    auto minrep = classify_minimizer(cfg, options.order, seed);
    rep.A4_min = minrep.A4_min;
    rep.certificate = minrep.certificate;
    rep.a4_paths = A4_eval(cfg, probe_dir);
    rep.verdict = minrep.verdict;

    rep.regime = classify_regime(cfg);
    if (rep.regime.kind != RegimeCase::None && rep.regime.F0)
        rep.profile = profile_and_window(cfg.n(), *rep.regime.F0);
    rep.rates = rate_functions(cfg.n(), rep.rates_delta);

    // Series diagnostics along a coupling-norm-normalized direction.
    {
        double norm = std::sqrt(h_norm_sq(kb, probe_dir));
        Rational scale(static_cast<long>(std::lround((1 << 20) / norm)), 1 << 20);
        scale.canonicalize();
        std::vector<Rational> unit_dir;
        for (const auto& c : probe_dir) unit_dir.push_back(c * scale);
        auto ge = glueing_eval(cfg, unit_dir, options.order);
        rep.norm_decay = ge.norm_decay;

        // Built-in identity checks for this configuration.
        rep.identity_suite.push_back(
            make_check("resolvent_identity_first_eigenspace", resolvent_identity_residual(cfg, rng), 0.0));
        {
            MultiIndex a4(cfg.sphere().ambient_dim(), 0), a2(cfg.sphere().ambient_dim(), 0);
            a4[0] = 4;
            a2[0] = 2;
            Rational lhs = sphere_moment(a4, cfg.sphere().d, 1).ratio_to_volume /
                           sphere_moment(a2, cfg.sphere().d, 1).ratio_to_volume;
            Rational rhs = rational_of(3, cfg.sphere().d + 3);
            rep.identity_suite.push_back(make_check("fourth_moment_ratio", lhs == rhs ? 0.0 : 1.0, 0.0));
        }
        rep.identity_suite.push_back(
            make_check("constant_solution_identity",
                       std::abs(to_double(rep.h) * rep.u0 - std::pow(rep.u0, to_double(rep.two_star) - 1.0)),
                       1e-12 * (1.0 + rep.u0)));
        {
            Rational lhs = (cfg.two_star() - 1) * cfg.h();  // (2*-1) u0^(2*-2) with u0^(2*-2) = h
            Rational rhs = cfg.lambda1_sphere() + cfg.h();
            rep.identity_suite.push_back(make_check("kernel_coupling_norm", lhs == rhs ? 0.0 : 1.0, 0.0));
        }
        rep.identity_suite.push_back(
            make_check("quartic_three_paths", rep.a4_paths.max_rel_disagreement, 1e-10));
        {
            SeriesExpansion s5(cfg, probe_dir, 5);
            double worst = 0.0;
            for (int L = 4; L <= 5; ++L)
                for (int q = 2; q <= L - 2; ++q) {
                    double a = u_kq(s5, L - q, q), b = u_kq(s5, q, L - q);
                    worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)));
                }
            rep.identity_suite.push_back(make_check("expansion_coefficient_symmetry", worst, 1e-10));
        }
        rep.identity_suite.push_back(make_check(
            "ray_identity", ray_eval(cfg, unit_dir, 0.02, std::min(options.order, 6)).identity_residual,
            1e-8));
        if (rep.profile) {
            rep.identity_suite.push_back(make_check(
                "profile_stationarity",
                std::abs(psi_prime(rep.profile->t_star, rep.profile->n, rep.profile->F0)), 1e-12));
        }
    }
    return rep;
}

namespace {

json rational_json(const Rational& q) { return to_string(q); }

json omega_json(const Omega& o) {
    return json{{"coeff", rational_json(o.coeff)}, {"pi_power", o.pi_power}, {"value", o.value()}};
}

}  // namespace

std::string report_to_json(const AnalysisReport& r, int indent) {
    json j;
    j["schema"] = "report.v1";
    j["config"] = {
        {"sphere", {{"d", r.sphere_d}, {"r2", rational_json(r.sphere_r2)}, {"r", std::sqrt(to_double(r.sphere_r2))}}},
        {"factor2",
         {{"dim", r.factor2_dim},
          {"volume", r.factor2_volume},
          {"lambda1", rational_json(r.factor2_lambda1)},
          {"scalar_curvature", rational_json(r.factor2_scalar_curvature)}}},
        {"mode", r.mode},
        {"kappa", r.kappa},
        {"weyl_sq", r.weyl_sq ? json(rational_json(*r.weyl_sq)) : json(nullptr)},
        {"lcf", r.lcf},
        {"order", r.order},
        {"seed", r.seed}};
    json omegas = json::array();
    for (const auto& o : r.omegas) omegas.push_back(omega_json(o));
    j["constants"] = {{"n", r.n},
                      {"two_star", rational_json(r.two_star)},
                      {"two_star_value", to_double(r.two_star)},
                      {"c_n", rational_json(r.c_n)},
                      {"c_n_value", to_double(r.c_n)},
                      {"h", rational_json(r.h)},
                      {"h_value", to_double(r.h)},
                      {"u0", r.u0},
                      {"u0_exact", r.u0_exact ? json(rational_json(*r.u0_exact)) : json(nullptr)},
                      {"omega", omegas}};
    j["kernel"] = {{"dim", r.kernel_dim},
                   {"degenerate", r.degenerate},
                   {"basis", r.basis_labels},
                   {"h_norm_factor", r.h_norm_factor}};
    j["second_variation"] = {{"nonnegative", r.second_var_nonneg}, {"kernel_dim", r.kernel_dim}};
    j["obstruction"] = {{"A3_max_abs", r.A3_max_abs},
                        {"A3_exactly_zero", r.A3_exactly_zero},
                        {"A4_min", r.A4_min},
                        {"certificate", to_string(r.certificate)},
                        {"A4_paths",
                         {{"direct", r.a4_paths.direct},
                          {"constant_form", r.a4_paths.constant_form},
                          {"closed_form", r.a4_paths.closed_form},
                          {"max_rel_disagreement", r.a4_paths.max_rel_disagreement}}}};
    j["verdict"] = to_string(r.verdict);
    j["regime"] = {{"case", to_string(r.regime.kind)},
                   {"kappa", r.regime.kappa},
                   {"F0", r.regime.F0 ? json(*r.regime.F0) : json(nullptr)},
                   {"reason", r.regime.reason}};
    j["profile"] = r.profile ? json{{"n", r.profile->n},
                                    {"F0", r.profile->F0},
                                    {"t_star", r.profile->t_star},
                                    {"a", r.profile->a},
                                    {"b", r.profile->b}}
                             : json(nullptr);
    j["rates"] = {{"delta", r.rates_delta}, {"eps1", r.rates.eps1}, {"eps2", r.rates.eps2}};
    j["series_diagnostics"] = {{"norm_decay", r.norm_decay}};
    json suite = json::array();
    for (const auto& c : r.identity_suite)
        suite.push_back({{"name", c.name},
                         {"status", c.pass ? "pass" : "fail"},
                         {"residual", c.residual},
                         {"tolerance", c.tolerance}});
    j["identity_suite"] = suite;
    j["exit_code"] = r.exit_code();
    return j.dump(indent);
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "model: S^" << r.sphere_d << "(r2=" << to_string(r.sphere_r2) << ") x ";
    if (r.factor2_dim == 0)
        os << "point";
    else
        os << "M2(dim=" << r.factor2_dim << ", vol=" << r.factor2_volume
           << ", lambda1=" << to_string(r.factor2_lambda1) << ", R=" << to_string(r.factor2_scalar_curvature)
           << ")";
    os << "  [mode " << r.mode << ", kappa " << r.kappa << "]\n";
    os << "constants: n=" << r.n << "  2*=" << to_string(r.two_star) << "  c_n=" << to_string(r.c_n)
       << "  h=" << to_string(r.h) << "  u0=" << r.u0;
    if (r.u0_exact) os << " (= " << to_string(*r.u0_exact) << ")";
    os << "\n";
    os << "kernel: dim " << r.kernel_dim << " { ";
    for (const auto& b : r.basis_labels) os << b << " ";
    os << "}  degenerate=" << (r.degenerate ? "yes" : "no")
       << "  second variation nonnegative=" << (r.second_var_nonneg ? "yes" : "no") << "\n";
    os << "obstruction: A3 " << (r.A3_exactly_zero ? "== 0 (exact)" : "nonzero")
       << "  A4_min=" << r.A4_min << " [" << to_string(r.certificate) << "]"
       << "  path agreement " << r.a4_paths.max_rel_disagreement << "\n";
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "regime: " << to_string(r.regime.kind);
    if (r.regime.F0) os << "  F0=" << *r.regime.F0;
    if (!r.regime.reason.empty()) os << "  (" << r.regime.reason << ")";
    os << "\n";
    if (r.profile)
        os << "profile: t*=" << r.profile->t_star << "  window [" << r.profile->a << ", "
           << r.profile->b << "]\n";
    os << "rates (delta=" << r.rates_delta << "): eps1=" << r.rates.eps1 << "  eps2=" << r.rates.eps2
       << "\n";
    os << "series decay:";
    for (double v : r.norm_decay) os << " " << v;
    os << "\n";
    os << "identity suite:\n";
    for (const auto& c : r.identity_suite)
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  residual " << c.residual
           << " (tol " << c.tolerance << ")\n";
    os << "exit code: " << r.exit_code() << "\n";
    return os.str();
}

}  // namespace lsglue
