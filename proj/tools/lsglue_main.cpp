// Command-line front end: analyze a model configuration, run the built-in
// identity suites, dump the glueing series, or report the blow-up energy
// data. Exit codes for `analyze`: 0 when the configuration is certified a
// strict local minimizer in an accepted regime, 2 when the analysis ran but
// the hypotheses are not verified, 1 on invalid input.

#include "lsglue/blowup.hpp"
#include "lsglue/report.hpp"
#include "lsglue/series.hpp"
#include "lsglue/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <iostream>

namespace {

using nlohmann::json;
using namespace lsglue;

int cmd_analyze(const std::string& path, int order_override, bool as_json, std::uint64_t seed) {
    auto options = parse_config_file(path);
    if (order_override > 0) options.order = order_override;
    auto report = run_analyze(options, seed);
    if (as_json)
        std::cout << report_to_json(report) << "\n";
    else
        std::cout << report_to_text(report);
    return report.exit_code();
}

int cmd_verify(const std::string& suite, bool as_json, std::uint64_t seed) {
    auto results = run_verify_suite(suite, seed);
    bool all_pass = true;
    if (as_json) {
        json j = json::array();
        for (const auto& r : results) {
            j.push_back({{"name", r.name},
                         {"status", r.pass ? "pass" : "fail"},
                         {"expected", r.expected},
                         {"actual", r.actual},
                         {"tolerance", r.tolerance},
                         {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name;
            if (!r.pass)
                std::cout << "  expected " << r.expected << ", actual " << r.actual << ", tolerance "
                          << r.tolerance;
            if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << "\n";
        }
        std::cout << (all_pass ? "all checks passed" : "FAILURES present") << " (" << results.size()
                  << " checks)\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_series(const std::string& path, int order, bool as_json) {
    auto options = parse_config_file(path);
    if (order > 0) options.order = order;
    auto kb = kernel_basis(options.cfg);
    // Dump along the first coordinate direction.
    std::vector<Rational> dir(kb.dim, Rational(0));
    dir[0] = 1;
    SeriesExpansion series(options.cfg, dir, options.order);

    if (as_json) {
        json j;
        j["direction"] = "x1";
        j["order"] = options.order;
        json terms = json::array();
        for (int L = 1; L <= options.order; ++L) {
            json comps = json::array();
            for (const auto& [k, h] : series.reduced(L).components()) {
                json monomials = json::array();
                for (const auto& [a, c] : h.coeffs()) {
                    monomials.push_back({{"exponents", a}, {"coeff", to_string(c)}});
                }
                comps.push_back({{"degree", k}, {"monomials", monomials}});
            }
            terms.push_back({{"L", L},
                             {"scale", series.term_scale(L)},
                             {"l2_norm", series.term_l2_norm(L)},
                             {"components", comps}});
        }
        j["terms"] = terms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "glueing series along x1, order " << options.order << "\n";
        for (int L = 1; L <= options.order; ++L) {
            std::cout << "P_" << L << " = " << series.term_scale(L) << " * [ "
                      << to_string(series.reduced(L)) << " ]  |P_" << L
                      << "|_L2 = " << series.term_l2_norm(L) << "\n";
        }
    }
    return 0;
}

int cmd_energy(const std::string& path, bool as_json) {
    auto options = parse_config_file(path);
    auto regime = classify_regime(options.cfg);
    json j;
    j["regime"] = {{"case", to_string(regime.kind)},
                   {"kappa", regime.kappa},
                   {"F0", regime.F0 ? json(*regime.F0) : json(nullptr)},
                   {"reason", regime.reason}};
    if (regime.kind != RegimeCase::None && regime.F0) {
        auto p = profile_and_window(options.cfg.n(), *regime.F0);
        j["profile"] = {{"n", p.n}, {"F0", p.F0}, {"t_star", p.t_star}, {"a", p.a}, {"b", p.b}};
    } else {
        j["profile"] = nullptr;
    }
    auto rates = rate_functions(options.cfg.n(), 0.01);
    j["rates"] = {{"delta", 0.01}, {"eps1", rates.eps1}, {"eps2", rates.eps2}};
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "regime: " << to_string(regime.kind);
        if (regime.F0) std::cout << "  F0 = " << *regime.F0;
        if (!regime.reason.empty()) std::cout << "  (" << regime.reason << ")";
        std::cout << "\n";
        if (!j["profile"].is_null())
            std::cout << "profile: t* = " << j["profile"]["t_star"].get<double>() << ", window ["
                      << j["profile"]["a"].get<double>() << ", " << j["profile"]["b"].get<double>()
                      << "]\n";
        std::cout << "rates at delta = 0.01: eps1 = " << rates.eps1 << ", eps2 = " << rates.eps2
                  << "\n";
    }
    return regime.kind == RegimeCase::None ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenerate-kernel analysis of critical equations on sphere products"};
    app.require_subcommand(1);

    std::string config_path, suite = "all";
    int order = 0;
    bool as_json = false;
    std::uint64_t seed = 0;

    auto* analyze = app.add_subcommand("analyze", "run the full pipeline on a configuration");
    analyze->add_option("config", config_path, "configuration file")->required();
    analyze->add_option("--order", order, "series truncation order (2..10)");
    analyze->add_flag("--json", as_json, "emit the JSON report");
    analyze->add_option("--seed", seed, "seed for sampled checks");

    auto* verify = app.add_subcommand("verify", "run built-in identity suites");
    verify->add_option("--suite", suite, "spectral | series | obstruction | energy | all");
    verify->add_flag("--json", as_json, "emit JSON results");
    verify->add_option("--seed", seed, "seed for sampled checks");

    auto* series = app.add_subcommand("series", "dump the glueing series terms");
    series->add_option("config", config_path, "configuration file")->required();
    series->add_option("--order", order, "series truncation order (2..10)");
    series->add_flag("--json", as_json, "emit JSON");

    auto* energy = app.add_subcommand("energy", "blow-up regime and profile only");
    energy->add_option("config", config_path, "configuration file")->required();
    energy->add_flag("--json", as_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(config_path, order, as_json, seed);
        if (verify->parsed()) return cmd_verify(suite, as_json, seed);
        if (series->parsed()) return cmd_series(config_path, order, as_json);
        if (energy->parsed()) return cmd_energy(config_path, as_json);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
