#pragma once

#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"

namespace tomoprior {

enum class FbpFilter { RamLak, Hann };

/// Filtered backprojection: frequency-domain ramp filtering of each
/// angular row (zero-padded to the next power of two >= 2*n_detectors),
/// backprojection, and a pi/n_angles angular scale. Requires >= 2 angles.
ImageGrid fbp_reconstruct(const Sinogram& sino, FbpFilter filter = FbpFilter::RamLak);

} // namespace tomoprior
