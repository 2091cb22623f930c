#pragma once

// Built-in identity-verification suites over fixed reference configurations,
// exposed both through the CLI (`verify --suite ...`) and reused by tests.

#include "lsglue/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lsglue {

struct CheckResult {
    std::string name;
    bool pass = false;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// suite: "spectral", "series", "obstruction", "energy" or "all".
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed = 0);

// Reference configurations used across suites and acceptance checks.
ProductConfig config_reference_n4();                 // S^2(1) x (dim 2, lambda1 3, vol 7), n = 4
ProductConfig config_product_n3();                   // S^1(1) x S^2(1), n = 3
ProductConfig config_product_n6_vol1();              // S^2(1) x (dim 4, lambda1 5, vol 1), n = 6
ProductConfig config_yamabe_n3();                    // Yamabe product over N = S^2(1), d = 1
ProductConfig config_pure_sphere(int n);             // S^n(1) x point

}  // namespace lsglue
