#pragma once

#include <Eigen/Core>

#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"

namespace tomoprior {

/// Line integrals of the image along every ray of the geometry, by Joseph
/// interpolating traversal. Linear in the image.
Sinogram forward_project(const ImageGrid& image, const ScanGeometry& geom);

/// Exact adjoint of forward_project (identical ray weights, transposed):
/// <Ax, y> == <x, A^T y> for all x, y.
ImageGrid back_project(const Sinogram& sino);

/// Dense system matrix, rows = rays (angle-major), cols = pixels
/// (row-major). Brute-force oracle; limited to image_width*image_height
/// <= 4096.
Eigen::MatrixXd dense_system_matrix(const ScanGeometry& geom);

/// Largest singular value of the system operator, by power iteration on
/// A^T A with a fixed deterministic start vector.
double estimate_largest_singular_value(const ScanGeometry& geom, int iterations);

} // namespace tomoprior
