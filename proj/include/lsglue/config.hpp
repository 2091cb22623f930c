#pragma once

// Flat key-value configuration files describing a model configuration:
//
//   sphere.d = 2
//   sphere.r = 3/2            # rational or decimal; derived in yamabe mode
//   factor2.dim = 2
//   factor2.volume = 7
//   factor2.lambda1 = 3
//   factor2.scalar_curvature = 0
//   mode = product            # product | yamabe | custom
//   h = 1/4                   # custom mode only
//   kappa = -1
//   weyl_sq = 0               # optional
//   lcf = false
//   order = 6
//
// '#' starts a comment; keys may appear in any order. Parse errors carry the
// line number.

#include "lsglue/model.hpp"

#include <iosfwd>
#include <string>

namespace lsglue {

struct AnalysisOptions {
    ProductConfig cfg = ProductConfig::make(SphereSpec::unit(3), AbstractFactor::point());
    int order = 6;
};

AnalysisOptions parse_config_text(const std::string& text, const std::string& source_name = "<config>");
AnalysisOptions parse_config_file(const std::string& path);

}  // namespace lsglue
