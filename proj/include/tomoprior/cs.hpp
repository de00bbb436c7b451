#pragma once

#include <optional>
#include <vector>

#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"
#include "tomoprior/transform.hpp"
#include "tomoprior/weightmap.hpp"

namespace tomoprior {

struct CsOptions {
    double lambda1 = 0.01;
    int max_iterations = 200;
    double tolerance = 1e-5; // relative objective change
    int lipschitz_power_iters = 30;

    void validate() const;
};

struct CsResult {
    ImageGrid image;
    std::vector<double> objective; // objective value per FISTA iteration
    int iterations = 0;
};

/// Minimizes |A Psi theta - y|_2^2 + lambda1 |theta|_1 by monotone FISTA
/// with step 1/L, L estimated as 2 sigma_max(A)^2 by power iteration with
/// a 1.05 safety factor. Returns x = Psi theta.
CsResult cs_reconstruct(const Sinogram& sino, const SparsifyingTransform& transform,
                        const CsOptions& opts,
                        const std::optional<ImageGrid>& initial = std::nullopt);

/// Theta step of the weighted-prior objective: minimizes
///   |A Psi theta - y|^2 + lambda1 |theta|_1 + lambda2 |W (Psi theta - p)|^2
/// with p the current eigenspace estimate. The smooth gradient is
/// Psi^T (2 A^T (A Psi theta - y) + 2 lambda2 W^2 (Psi theta - p)) with
/// Lipschitz bound 2 sigma_max(A)^2 + 2 lambda2 max(W^2).
CsResult solve_theta_subproblem(const Sinogram& sino, const SparsifyingTransform& transform,
                                const ImageGrid& prior_estimate, const WeightMap& weights,
                                double lambda1, double lambda2, const CsOptions& opts,
                                const std::optional<ImageGrid>& initial = std::nullopt);

} // namespace tomoprior
