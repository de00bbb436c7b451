#pragma once

#include <filesystem>

#include "tomoprior/fbp.hpp"
#include "tomoprior/pipeline.hpp"

namespace tomoprior {

/// Experiment-level settings that sit outside the solver config: sparse
/// view count, the dense reference view count it is drawn from, and the
/// FBP filter.
struct ExperimentConfig {
    int views = 45;
    int dense_views = 360;
    FbpFilter filter = FbpFilter::RamLak;
};

struct ParsedConfig {
    ReconConfig recon;
    ExperimentConfig experiment;
};

/// Reads the line-oriented "key = value" config format ('#' comments).
/// Unknown keys are rejected by name; type errors carry the line number.
/// An empty file yields all documented defaults.
ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace tomoprior
