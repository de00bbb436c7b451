#pragma once

#include <optional>

#include "tomoprior/grid.hpp"

namespace tomoprior {

/// Mean local SSIM with a Gaussian window (sigma 1.5, 11x11 support),
/// C1 = (0.01 R)^2, C2 = (0.03 R)^2 with R the pooled dynamic range of
/// both inputs. Windows are truncated and renormalized at boundaries.
/// Restricting to a ROI evaluates SSIM on the extracted sub-images.
double ssim(const ImageGrid& a, const ImageGrid& b,
            const std::optional<RegionOfInterest>& roi = std::nullopt);

/// Root mean squared difference over the ROI (full image if absent).
double rmse(const ImageGrid& a, const ImageGrid& b,
            const std::optional<RegionOfInterest>& roi = std::nullopt);

} // namespace tomoprior
