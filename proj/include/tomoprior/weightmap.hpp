#pragma once

#include "tomoprior/grid.hpp"

namespace tomoprior {

/// Per-voxel prior weights in (0, 1]. 1 means the prior fully applies;
/// values toward 0 hand the voxel over to the measurements.
struct WeightMap {
    ImageGrid values;

    static WeightMap uniform(int width, int height) {
        return WeightMap{ImageGrid::constant(width, height, 1.0)};
    }

    void validate() const;
};

} // namespace tomoprior
