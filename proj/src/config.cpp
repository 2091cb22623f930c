#include "lsglue/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace lsglue {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

AnalysisOptions parse_config_text(const std::string& text, const std::string& source_name) {
    static const std::vector<std::string> known = {
        "sphere.d",       "sphere.r",        "factor2.dim", "factor2.volume",
        "factor2.lambda1", "factor2.scalar_curvature", "mode",  "h",
        "kappa",          "weyl_sq",         "lcf",         "order"};

    std::map<std::string, RawEntry> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(source_name, line_no, "expected 'key = value'");
        std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail(source_name, line_no, "unknown key '" + key + "'");
        if (value.empty()) fail(source_name, line_no, "empty value for '" + key + "'");
        if (entries.count(key)) fail(source_name, line_no, "duplicate key '" + key + "'");
        entries[key] = RawEntry{value, line_no};
    }

    auto take = [&](const std::string& key) -> std::optional<RawEntry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        RawEntry e = it->second;
        entries.erase(it);
        return e;
    };
    auto rational_value = [&](const RawEntry& e, const std::string& key) {
        try {
            return parse_rational(e.value);
        } catch (const std::exception& ex) {
            fail(source_name, e.line, "bad number for '" + key + "': " + ex.what());
        }
    };
    auto int_value = [&](const RawEntry& e, const std::string& key) {
        Rational q = rational_value(e, key);
        if (q.get_den() != 1) fail(source_name, e.line, "'" + key + "' must be an integer");
        return static_cast<int>(q.get_num().get_si());
    };
    auto bool_value = [&](const RawEntry& e, const std::string& key) {
        if (e.value == "true" || e.value == "1") return true;
        if (e.value == "false" || e.value == "0") return false;
        fail(source_name, e.line, "'" + key + "' must be true or false");
    };

    auto mode_entry = take("mode");
    std::string mode = mode_entry ? mode_entry->value : "product";
    if (mode != "product" && mode != "yamabe" && mode != "custom")
        fail(source_name, mode_entry ? mode_entry->line : 0,
             "mode must be product, yamabe or custom (got '" + mode + "')");

    auto d_entry = take("sphere.d");
    if (!d_entry) fail(source_name, 0, "missing required key 'sphere.d'");
    int d = int_value(*d_entry, "sphere.d");

    auto dim_entry = take("factor2.dim");
    if (!dim_entry) fail(source_name, 0, "missing required key 'factor2.dim'");
    int dim2 = int_value(*dim_entry, "factor2.dim");

    AbstractFactor factor2;
    factor2.dim = dim2;
    if (auto v = take("factor2.volume"))
        factor2.volume = to_double(rational_value(*v, "factor2.volume"));
    else
        factor2.volume = 1.0;
    if (auto v = take("factor2.lambda1")) {
        factor2.lambda1 = rational_value(*v, "factor2.lambda1");
    } else if (dim2 > 0) {
        fail(source_name, 0, "missing required key 'factor2.lambda1'");
    }
    if (auto v = take("factor2.scalar_curvature"))
        factor2.scalar_curvature = rational_value(*v, "factor2.scalar_curvature");

    int kappa = -1;
    if (auto v = take("kappa")) {
        kappa = int_value(*v, "kappa");
        if (kappa != -1 && kappa != 1) fail(source_name, v->line, "kappa must be -1 or 1");
    }
    std::optional<Rational> weyl;
    if (auto v = take("weyl_sq")) weyl = rational_value(*v, "weyl_sq");
    bool lcf = false;
    if (auto v = take("lcf")) lcf = bool_value(*v, "lcf");

    AnalysisOptions out;
    if (auto v = take("order")) {
        out.order = int_value(*v, "order");
        if (out.order < 2 || out.order > 10)
            fail(source_name, v->line, "order must lie in [2, 10]");
    }

    auto r_entry = take("sphere.r");
    auto h_entry = take("h");

    if (mode == "yamabe") {
        if (r_entry)
            fail(source_name, r_entry->line,
                 "sphere.r is derived from the factor in yamabe mode; remove it");
        if (h_entry) fail(source_name, h_entry->line, "h is derived in yamabe mode; remove it");
        out.cfg = yamabe_product(factor2, d, kappa, weyl, lcf);
    } else {
        Rational r = 1;
        if (r_entry) {
            r = rational_value(*r_entry, "sphere.r");
            if (r <= 0) fail(source_name, r_entry->line, "sphere.r must be positive");
        }
        HMode hmode = HMode::ProductDefault;
        Rational h_custom = 0;
        if (mode == "custom") {
            if (!h_entry) fail(source_name, 0, "custom mode requires 'h'");
            hmode = HMode::CustomConstant;
            h_custom = rational_value(*h_entry, "h");
        } else if (h_entry) {
            fail(source_name, h_entry->line, "'h' is only accepted in custom mode");
        }
        out.cfg = ProductConfig::make(SphereSpec::with_radius(d, r), factor2, kappa, hmode,
                                      h_custom, weyl, lcf);
    }

    if (!entries.empty())
        fail(source_name, entries.begin()->second.line,
             "key '" + entries.begin()->first + "' is not valid in mode '" + mode + "'");
    return out;
}

AnalysisOptions parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

}  // namespace lsglue
