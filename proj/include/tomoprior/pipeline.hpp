#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tomoprior/cs.hpp"
#include "tomoprior/eigenspace.hpp"
#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"
#include "tomoprior/weights.hpp"

namespace tomoprior {

struct ReconConfig {
    double lambda1 = 0.01;
    double lambda2 = 1.0;
    double k = 20.0;
    double smoothing_sigma = 1.0;
    int eigen_rank_high = 0; // 0 = L-1
    int eigen_rank_low = 0;  // 0 = L-1
    int outer_iterations = 5;
    CsOptions cs;
    std::vector<PilotMethod> pilot_methods; // empty = default {fbp, sirt, sart, cs}
    std::uint64_t seed = 0;

    void validate() const;
    std::vector<PilotMethod> effective_pilot_methods() const;
};

struct OuterIteration {
    int iteration = 0;
    double data_term = 0.0;
    double sparsity_term = 0.0;
    double prior_term = 0.0;
    double total = 0.0;
};

struct Diagnostics {
    std::vector<OuterIteration> outer;

    /// Plain-text table: iteration, data term, sparsity term, prior term,
    /// total.
    std::string format_table() const;
};

struct PipelineResult {
    ImageGrid image;
    WeightMap weights;
    Diagnostics diagnostics;
};

/// Full weighted-prior reconstruction: eigenspace from the high-quality
/// templates, weight map from the pilot ensemble, then alternating
/// theta/alpha minimization of the weighted objective, warm-started from
/// the FBP pilot. Stops after outer_iterations or when the relative
/// objective change drops below 1e-4.
PipelineResult weighted_prior_reconstruct(const Sinogram& test_sino,
                                          const TemplateSet& templates,
                                          const ReconConfig& cfg);

/// Same optimization with the weight map forced to all-ones (the pilot
/// machinery is bypassed).
ImageGrid plain_prior_reconstruct(const Sinogram& test_sino, const TemplateSet& templates,
                                  const ReconConfig& cfg);

/// Single dispatch for CLI and benchmarks. Methods: fdk, art, sart, sirt,
/// cs, prior, weighted-prior. The prior methods require templates.
ImageGrid reconstruct(const std::string& method, const Sinogram& sino,
                      const TemplateSet* templates, const ReconConfig& cfg);

} // namespace tomoprior
