#include "lsglue/verify.hpp"

#include "lsglue/blowup.hpp"
#include "lsglue/obstruction.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lsglue {

ProductConfig config_reference_n4() {
    AbstractFactor f{2, 7.0, Rational(3), Rational(0)};
    return ProductConfig::make(SphereSpec::unit(2), f);
}

ProductConfig config_product_n3() {
    return ProductConfig::make(SphereSpec::unit(1), AbstractFactor::sphere(2, 1));
}

ProductConfig config_product_n6_vol1() {
    AbstractFactor f{4, 1.0, Rational(5), Rational(0)};
    return ProductConfig::make(SphereSpec::unit(2), f);
}

ProductConfig config_yamabe_n3() { return yamabe_product(AbstractFactor::sphere(2, 1), 1); }

ProductConfig config_pure_sphere(int n) {
    return ProductConfig::make(SphereSpec::unit(n), AbstractFactor::point());
}

namespace {

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

void push(std::vector<CheckResult>& out, std::string name, double expected, double actual,
          double tolerance, std::string detail = "") {
    CheckResult c;
    c.name = std::move(name);
    c.expected = expected;
    c.actual = actual;
    c.tolerance = tolerance;
    c.pass = std::abs(actual - expected) <= tolerance;
    c.detail = std::move(detail);
    out.push_back(std::move(c));
}

void suite_spectral(std::vector<CheckResult>& out, std::mt19937_64& rng) {
    // Exact resolvent identity for first-eigenspace squares, three
    // directions per dimension; pass/fail is exact.
    for (int d = 1; d <= 6; ++d) {
        auto s = SphereSpec::unit(d);
        Rational lam1 = eigenvalue(1, s), lam2 = eigenvalue(2, s);
        bool all = true;
        for (int trial = 0; trial < 3; ++trial) {
            auto c = random_direction(rng, d + 1);
            auto phi_sq = multiply(HomPoly::linear(d + 1, c), HomPoly::linear(d + 1, c));
            auto lhs = resolvent_shifted(restrict_to_sphere(phi_sq, s), lam1);
            Rational lap = laplacian_euclidean(phi_sq).coeff(MultiIndex(d + 1, 0));
            auto rhs = (restrict_to_sphere(phi_sq, s) +
                        SphereFunction::constant(s, lam2 * lap / (2 * (d + 1) * lam1))) *
                       (Rational(1) / (lam2 - lam1));
            all = all && lhs == rhs;
        }
        push(out, "resolvent_identity_d" + std::to_string(d), 1.0, all ? 1.0 : 0.0, 0.0, "exact");
    }
    for (int d = 1; d <= 6; ++d) {
        MultiIndex a4(d + 1, 0), a2(d + 1, 0);
        a4[0] = 4;
        a2[0] = 2;
        Rational ratio = sphere_moment(a4, d, 1).ratio_to_volume / sphere_moment(a2, d, 1).ratio_to_volume;
        push(out, "fourth_moment_ratio_d" + std::to_string(d), 1.0,
             ratio == rational_of(3, d + 3) ? 1.0 : 0.0, 0.0, "exact, expected 3/(d+3)");
    }
    {
        auto s = SphereSpec::unit(3);
        auto f = restrict_to_sphere(HomPoly::radius_squared(4), s);
        auto g = SphereFunction::constant(s, 1);
        Rational lam1 = eigenvalue(1, s);
        Rational lhs = l2_inner(resolvent_shifted(f, lam1), g);
        Rational rhs = l2_inner(f, resolvent_shifted(g, lam1));
        push(out, "resolvent_self_adjoint", 1.0, lhs == rhs ? 1.0 : 0.0, 0.0, "exact");
    }
}

void suite_series(std::vector<CheckResult>& out, std::mt19937_64& rng) {
    auto cfg = config_reference_n4();
    {
        auto P2 = compute_P(cfg, {Rational(1), Rational(0), Rational(0)}, 2);
        MultiIndex a2(3, 0);
        a2[0] = 2;
        auto expected = restrict_to_sphere(HomPoly::monomial(3, a2, rational_of(3, 4)), cfg.sphere()) +
                        SphereFunction::constant(cfg.sphere(), rational_of(-3, 4));
        push(out, "p2_closed_form_n4", 1.0, P2.fn == expected && P2.scale == 1.0 ? 1.0 : 0.0, 0.0,
             "P2(x1) = (3/4) x1^2 - 3/4, exact");
    }
    {
        auto dir = random_direction(rng, 3);
        SeriesExpansion series(cfg, dir, 5);
        bool ok = true;
        for (int L = 2; L <= 5; ++L)
            ok = ok && series.reduced(L).components().count(1) == 0 && series.reduced(L).max_degree() <= L;
        push(out, "series_kernel_complement", 1.0, ok ? 1.0 : 0.0, 0.0, "P_L has no first-eigenspace part");
    }
    for (int L_max : {3, 4, 5}) {
        auto dir = random_direction(rng, 3);
        SeriesExpansion series(cfg, dir, L_max);
        Rational t = rational_of(1, 50);
        Rational r_full = residual_projected_norm_sq_exact(series, t);
        Rational r_half = residual_projected_norm_sq_exact(series, t / 2);
        double ratio = r_half == 0 ? std::numeric_limits<double>::infinity()
                                   : std::sqrt(to_double(r_full / r_half));
        double threshold = std::pow(2.0, L_max + 1) * 0.9;
        push(out, "residual_order_Lmax" + std::to_string(L_max), 1.0, ratio >= threshold ? 1.0 : 0.0,
             0.0, "halving reduction factor " + std::to_string(ratio));
    }
}

void suite_obstruction(std::vector<CheckResult>& out, std::mt19937_64& rng) {
    std::vector<std::pair<std::string, ProductConfig>> cfgs = {
        {"n3", config_product_n3()},
        {"n4", config_reference_n4()},
        {"n6", config_product_n6_vol1()},
        {"yamabe_n3", config_yamabe_n3()},
    };
    for (const auto& [label, cfg] : cfgs) {
        auto dir = random_direction(rng, cfg.sphere().ambient_dim());
        auto paths = A4_eval(cfg, dir);
        push(out, "quartic_three_paths_" + label, 0.0, paths.max_rel_disagreement, 1e-10);
        push(out, "cubic_vanishes_" + label, 1.0, A3_form(cfg).exactly_zero ? 1.0 : 0.0, 0.0, "exact");
    }
    {
        auto paths = A4_eval(config_reference_n4(), {Rational(1), Rational(0), Rational(0)});
        push(out, "quartic_value_n4_axis", 56.0 * M_PI / 5.0, paths.direct, 1e-10,
             "A4(x1) = 8 pi V / 5 with V = 7");
    }
    for (int n : {3, 4, 5, 6}) {
        auto cfg = config_pure_sphere(n);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            auto paths = A4_eval(cfg, random_direction(rng, n + 1));
            worst = std::max({worst, std::abs(paths.direct), std::abs(paths.constant_form),
                              std::abs(paths.closed_form)});
        }
        push(out, "quartic_vanishes_sphere_n" + std::to_string(n), 0.0, worst, 1e-12);
    }
    {
        auto cfg = config_reference_n4();
        auto dir = random_direction(rng, 3);
        SeriesExpansion series(cfg, dir, 6);
        double worst = 0.0;
        for (int L = 4; L <= 6; ++L)
            for (int q = 2; q <= L - 2; ++q)
                worst = std::max(worst, std::abs(u_kq(series, L - q, q) - u_kq(series, q, L - q)) /
                                            (1.0 + std::abs(u_kq(series, L - q, q))));
        push(out, "expansion_coefficient_symmetry", 0.0, worst, 1e-10);

        auto nec = norm_expansion_check(cfg, dir, 5);
        push(out, "norm_expansion_identity_1", 0.0, nec.max_rel_residual1, 1e-9, "exact mode");
        push(out, "norm_expansion_identity_2", 0.0, nec.max_rel_residual2, 1e-9, "exact mode");
    }
    {
        auto cfg = config_reference_n4();
        auto kb = kernel_basis(cfg);
        auto dir = random_direction(rng, 3);
        double norm = std::sqrt(h_norm_sq(kb, dir));
        Rational scale(static_cast<long>(std::lround((1 << 20) / norm)), 1 << 20);
        scale.canonicalize();
        std::vector<Rational> unit;
        for (const auto& c : dir) unit.push_back(c * scale);
        push(out, "ray_identity_residual", 0.0, ray_eval(cfg, unit, 0.03, 6).identity_residual, 1e-8);
    }
    push(out, "verdict_yamabe_n3", 1.0,
         classify_minimizer(config_yamabe_n3()).verdict == Verdict::StrictLocalMin ? 1.0 : 0.0, 0.0);
    push(out, "verdict_pure_sphere", 1.0,
         classify_minimizer(config_pure_sphere(4)).verdict == Verdict::Inconclusive ? 1.0 : 0.0, 0.0);
}

void suite_energy(std::vector<CheckResult>& out, std::mt19937_64& rng) {
    {
        // Dimension-6 scalar-curvature coupling: F0 = (5/2) u0 exactly.
        auto cfg = yamabe_product(AbstractFactor::sphere(4, 1), 2);
        Rational F0 = F0_exact(cfg, -1).value();
        Rational expected = rational_of(5, 2) * cfg.u0_exact().value();
        push(out, "f0_dim6_value", 1.0, F0 == expected ? 1.0 : 0.0, 0.0, "F0 = (5/2) u0, exact");
    }
    {
        auto profile = profile_and_window(5, 0.7);
        push(out, "profile_stationarity", 0.0, std::abs(psi_prime(profile.t_star, 5, 0.7)), 1e-12);
        bool window = profile.a == profile.t_star / 2 && profile.b == 2 * profile.t_star &&
                      profile.a < profile.t_star && profile.t_star < profile.b;
        push(out, "profile_window", 1.0, window ? 1.0 : 0.0, 0.0, "a = t*/2 < t* < b = 2 t*");
    }
    {
        std::uniform_int_distribution<int> num(-60, 60), den(1, 9);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            AbstractFactor f{4, 3.0, Rational(9), rational_of(num(rng), den(rng))};
            auto cfg = ProductConfig::make(SphereSpec::unit(2), f);
            Rational F0 = F0_exact(cfg, -1).value();
            Rational gap = cfg.c_n() * cfg.scalar_curvature() - cfg.h();
            Rational u0 = cfg.u0_exact().value();
            if ((F0 > 0) != (gap < 2 * u0)) ++bad;
        }
        push(out, "f0_sign_equivalence_dim6", 0.0, bad, 0.0, "100 exact parameter samples");
    }
    {
        auto r5 = rate_functions(5, 0.01);
        push(out, "rate_eps1_n5", 1e-3, r5.eps1, 1e-15);
        auto r4 = rate_functions(4, 0.01);
        push(out, "rate_eps2_n4", 1e-4 * std::log(100.0), r4.eps2, 1e-15);
    }
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL);
    bool all = suite == "all";
    if (suite == "spectral" || all) suite_spectral(out, rng);
    if (suite == "series" || all) suite_series(out, rng);
    if (suite == "obstruction" || all) suite_obstruction(out, rng);
    if (suite == "energy" || all) suite_energy(out, rng);
    if (out.empty() && !all)
        throw ConfigError("unknown suite '" + suite + "' (expected spectral, series, obstruction, energy or all)");
    return out;
}

}  // namespace lsglue
