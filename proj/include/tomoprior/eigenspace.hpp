#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <vector>

#include "tomoprior/grid.hpp"
#include "tomoprior/weightmap.hpp"

namespace tomoprior {

struct TemplateSet {
    std::vector<ImageGrid> templates;

    int count() const { return static_cast<int>(templates.size()); }
    void validate() const; // >= 2 templates, identical dimensions
};

struct AlphaCoefficients {
    Eigen::VectorXd values;
};

/// Affine subspace mean + span of orthonormal principal components of a
/// template set. Components are columns of a pixels x rank matrix.
class Eigenspace {
public:
    Eigenspace(ImageGrid mean, Eigen::MatrixXd components);

    int width() const { return mean_.width(); }
    int height() const { return mean_.height(); }
    int rank() const { return static_cast<int>(components_.cols()); }
    const ImageGrid& mean() const { return mean_; }
    const Eigen::MatrixXd& components() const { return components_; }
    ImageGrid component(int i) const;

private:
    ImageGrid mean_;
    Eigen::MatrixXd components_; // orthonormal columns
};

/// PCA of the template set: mean image plus the top-`rank` left singular
/// vectors of the centered template matrix. Singular directions below
/// 1e-10 of the largest singular value are dropped, so the returned rank
/// may be lower than requested. rank must be <= L-1.
Eigenspace build_eigenspace(const TemplateSet& set, int rank);

/// alpha = V^T (x - mu); projected = mu + V alpha, the Euclidean-closest
/// point to x in the affine subspace.
std::pair<AlphaCoefficients, ImageGrid> project_onto_eigenspace(const Eigenspace& space,
                                                                const ImageGrid& x);

/// argmin_alpha |W (x - mu - V alpha)|_2^2 via the r x r normal equations
/// (V^T W^2 V + eps I) alpha = V^T W^2 (x - mu), eps = 1e-10 tr(...)/r.
AlphaCoefficients solve_alpha_subproblem(const ImageGrid& x, const WeightMap& weights,
                                         const Eigenspace& space);

/// Reconstructs mu + V alpha as an image.
ImageGrid eigenspace_estimate(const Eigenspace& space, const AlphaCoefficients& alpha);

/// Persistence: a directory with mean.tpr, component_XX.tpr and a
/// key=value manifest (rank, dimensions, source checksums).
void save_eigenspace(const Eigenspace& space, const std::filesystem::path& dir,
                     const std::vector<std::uint64_t>& source_checksums = {});
Eigenspace load_eigenspace(const std::filesystem::path& dir);

} // namespace tomoprior
