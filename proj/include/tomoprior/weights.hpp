#pragma once

#include <string>
#include <vector>

#include "tomoprior/algebraic.hpp"
#include "tomoprior/cs.hpp"
#include "tomoprior/eigenspace.hpp"
#include "tomoprior/fbp.hpp"
#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"
#include "tomoprior/weightmap.hpp"

namespace tomoprior {

enum class PilotKind { Fbp, Art, Sart, Sirt, Cs };

std::string pilot_kind_name(PilotKind kind);
PilotKind pilot_kind_from_name(const std::string& name);

/// One member of the pilot reconstruction ensemble. Only the options
/// relevant to `kind` are consulted.
struct PilotMethod {
    PilotKind kind = PilotKind::Fbp;
    FbpFilter filter = FbpFilter::RamLak;
    AlgebraicOptions algebraic;
    CsOptions cs;

    static PilotMethod make(PilotKind kind);
};

/// Everything the weight formula consumes: pilot reconstructions of the
/// test (X^j) and of every template (Y_i^j), the per-method low-quality
/// eigenspaces, and the projections P^j of X^j onto them.
struct PilotSet {
    std::vector<PilotMethod> methods;
    std::vector<ImageGrid> test_pilots;                  // X^j, one per method
    std::vector<std::vector<ImageGrid>> template_pilots; // Y_i^j, [method][template]
    std::vector<Eigenspace> eigenspaces;                 // E_low^j
    std::vector<ImageGrid> projections;                  // P^j

    int method_count() const { return static_cast<int>(methods.size()); }
    void validate() const;
};

/// Simulated measurements of every template with the exact geometry used
/// for the test scan.
std::vector<Sinogram> simulate_template_sinograms(const TemplateSet& set,
                                                  const ScanGeometry& geom);

/// Runs every pilot method on the test and template sinograms, builds the
/// per-method eigenspaces from the template pilots and projects each test
/// pilot onto its own eigenspace. Needs >= 2 methods. rank = 0 selects
/// L-1.
PilotSet build_pilot_set(const Sinogram& test_sino,
                         const std::vector<Sinogram>& template_sinos,
                         const std::vector<PilotMethod>& methods, int rank = 0);

/// d = min_j |X^j - P^j| after per-pilot intensity normalization (each
/// method's pair is scaled by the 99th percentile of |X^j|), optionally
/// Gaussian-smoothed; W = 1 / (1 + k d), so W is in (0, 1] and equals 1
/// exactly where d vanishes.
WeightMap compute_weight_map(const PilotSet& pilots, double k, double smoothing_sigma);

/// The normalized |X^j - P^j| maps, for diagnostics.
std::vector<ImageGrid> per_method_difference_maps(const PilotSet& pilots);

} // namespace tomoprior
