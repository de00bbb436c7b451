#pragma once

#include <optional>

#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"

namespace tomoprior {

enum class AlgebraicMethod { Art, Sart, Sirt };

struct AlgebraicOptions {
    AlgebraicMethod method = AlgebraicMethod::Sirt;
    int iterations = 0; // 0 = per-method default (ART 10, SART 20, SIRT 100)
    double relaxation = 1.0;
    std::optional<ImageGrid> initial; // default zero

    void validate() const;
};

/// ART: Kaczmarz sweeps over rays in fixed angle-major order.
/// SART: angle-block updates normalized by in-block row/column sums.
/// SIRT: x <- x + relax * C * A^T * R * (y - A x), R and C the inverse
/// row/column-sum diagonals. Zero rows/columns contribute no update.
ImageGrid algebraic_reconstruct(const Sinogram& sino, const AlgebraicOptions& opts);

} // namespace tomoprior
