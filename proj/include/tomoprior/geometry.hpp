#pragma once

#include <filesystem>
#include <vector>

#include "tomoprior/grid.hpp"

namespace tomoprior {

/// 2D parallel-beam scan geometry. Rays are sampled at detector-bin
/// centers; the detector array is centered on the image center.
struct ScanGeometry {
    std::vector<double> angles; // radians, strictly increasing, in [0, pi)
    int n_detectors = 0;
    double detector_spacing = 1.0;
    int image_width = 0;
    int image_height = 0;

    int n_angles() const { return static_cast<int>(angles.size()); }
    std::size_t n_rays() const {
        return angles.size() * static_cast<std::size_t>(n_detectors);
    }

    /// Throws GeometryError on any violated invariant.
    void validate() const;

    /// n_views equally spaced angles i*pi/n_views. With n_detectors = 0 the
    /// detector count defaults to ceil(hypot(width, height)) so every pixel
    /// is covered at every angle.
    static ScanGeometry uniform(int image_width, int image_height, int n_views,
                                int n_detectors = 0, double detector_spacing = 1.0);

    bool operator==(const ScanGeometry&) const = default;
};

/// Measurement vector: one row per angle, one column per detector bin.
struct Sinogram {
    ScanGeometry geometry;
    std::vector<double> data; // row-major, n_angles x n_detectors

    double at(int angle, int detector) const {
        return data[static_cast<std::size_t>(angle) * geometry.n_detectors + detector];
    }
    void validate() const;
};

/// Sinogram files are TPRASTER (width = n_detectors, height = n_angles)
/// plus a key=value sidecar holding the geometry.
void save_sinogram(const Sinogram& sino, const std::filesystem::path& raster_path,
                   const std::filesystem::path& geometry_path);
Sinogram load_sinogram(const std::filesystem::path& raster_path,
                       const std::filesystem::path& geometry_path);

void save_geometry(const ScanGeometry& geom, const std::filesystem::path& path);
ScanGeometry load_geometry(const std::filesystem::path& path);

} // namespace tomoprior
