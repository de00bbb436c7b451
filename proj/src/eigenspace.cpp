#include "tomoprior/eigenspace.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tomoprior/errors.hpp"
#include "tomoprior/keyvalue.hpp"

namespace tomoprior {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const ImageGrid& g) {
    return {g.data().data(), static_cast<Eigen::Index>(g.size())};
}

ImageGrid to_grid(const Eigen::VectorXd& v, int width, int height) {
    return ImageGrid(width, height, std::vector<double>(v.data(), v.data() + v.size()));
}

} // namespace

void TemplateSet::validate() const {
    if (templates.size() < 2) {
        throw ValidationError("template set needs at least 2 templates");
    }
    for (const auto& t : templates) {
        if (!t.same_shape(templates.front())) {
            throw ValidationError("templates must share dimensions");
        }
    }
}

Eigenspace::Eigenspace(ImageGrid mean, Eigen::MatrixXd components)
    : mean_(std::move(mean)), components_(std::move(components)) {
    if (components_.rows() != static_cast<Eigen::Index>(mean_.size())) {
        throw ValidationError("component length does not match mean image");
    }
    if (components_.cols() < 1) {
        throw ValidationError("eigenspace needs at least one component");
    }
}

ImageGrid Eigenspace::component(int i) const {
    if (i < 0 || i >= rank()) {
        throw BoundsError("component index out of range");
    }
    return to_grid(components_.col(i), width(), height());
}

Eigenspace build_eigenspace(const TemplateSet& set, int rank) {
    set.validate();
    const int count = set.count();
    if (rank < 1 || rank > count - 1) {
        throw RankError("rank must lie in [1, L-1], got " + std::to_string(rank) +
                        " for L = " + std::to_string(count));
    }
    const ImageGrid& first = set.templates.front();
    const auto n_pixels = static_cast<Eigen::Index>(first.size());

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n_pixels);
    for (const auto& t : set.templates) mean += as_vector(t);
    mean /= static_cast<double>(count);

    Eigen::MatrixXd centered(n_pixels, count);
    for (int i = 0; i < count; ++i) {
        centered.col(i) = as_vector(set.templates[i]) - mean;
    }
    if (centered.cwiseAbs().maxCoeff() == 0.0) {
        throw DegenerateSpanError("identical templates span no eigenspace");
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const auto& singular = svd.singularValues();
    const double cutoff = 1e-10 * singular(0);
    int kept = 0;
    while (kept < rank && kept < singular.size() && singular(kept) > cutoff) ++kept;
    if (kept == 0) {
        throw DegenerateSpanError("all singular values below cutoff");
    }
    return Eigenspace(to_grid(mean, first.width(), first.height()),
                      svd.matrixU().leftCols(kept));
}

std::pair<AlphaCoefficients, ImageGrid> project_onto_eigenspace(const Eigenspace& space,
                                                                const ImageGrid& x) {
    if (x.width() != space.width() || x.height() != space.height()) {
        throw ValidationError("image does not match eigenspace dimensions");
    }
    const Eigen::VectorXd centered = as_vector(x) - as_vector(space.mean());
    AlphaCoefficients alpha{space.components().transpose() * centered};
    const Eigen::VectorXd projected =
        as_vector(space.mean()) + space.components() * alpha.values;
    return {std::move(alpha), to_grid(projected, space.width(), space.height())};
}

AlphaCoefficients solve_alpha_subproblem(const ImageGrid& x, const WeightMap& weights,
                                         const Eigenspace& space) {
    if (x.width() != space.width() || x.height() != space.height()) {
        throw ValidationError("image does not match eigenspace dimensions");
    }
    weights.validate();
    if (!weights.values.same_shape(x)) {
        throw ValidationError("weight map does not match image dimensions");
    }
    const auto& V = space.components();
    Eigen::VectorXd w_sq = as_vector(weights.values).array().square();
    const Eigen::MatrixXd weighted = w_sq.asDiagonal() * V;
    Eigen::MatrixXd gram = V.transpose() * weighted;
    const double trace = gram.trace();
    if (trace <= 0.0) {
        return AlphaCoefficients{Eigen::VectorXd::Zero(space.rank())};
    }
    const double eps = 1e-10 * trace / static_cast<double>(space.rank());
    gram.diagonal().array() += eps;
    const Eigen::VectorXd rhs =
        weighted.transpose() * (as_vector(x) - as_vector(space.mean()));
    return AlphaCoefficients{gram.ldlt().solve(rhs)};
}

ImageGrid eigenspace_estimate(const Eigenspace& space, const AlphaCoefficients& alpha) {
    if (alpha.values.size() != space.rank()) {
        throw ValidationError("alpha length does not match eigenspace rank");
    }
    const Eigen::VectorXd est = as_vector(space.mean()) + space.components() * alpha.values;
    return to_grid(est, space.width(), space.height());
}

void save_eigenspace(const Eigenspace& space, const std::filesystem::path& dir,
                     const std::vector<std::uint64_t>& source_checksums) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    save_raster(space.mean(), dir / "mean.tpr");
    char name[32];
    for (int i = 0; i < space.rank(); ++i) {
        std::snprintf(name, sizeof name, "component_%02d.tpr", i);
        save_raster(space.component(i), dir / name);
    }
    std::ofstream manifest(dir / "manifest.txt", std::ios::trunc);
    if (!manifest) {
        throw IoError("cannot write manifest in " + dir.string());
    }
    manifest << "rank = " << space.rank() << "\n";
    manifest << "width = " << space.width() << "\n";
    manifest << "height = " << space.height() << "\n";
    for (auto checksum : source_checksums) {
        manifest << "source_checksum = " << checksum << "\n";
    }
}

Eigenspace load_eigenspace(const std::filesystem::path& dir) {
    int rank = 0, width = 0, height = 0;
    for (const auto& kv : parse_key_value_file(dir / "manifest.txt")) {
        if (kv.key == "rank") {
            rank = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "width") {
            width = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "height") {
            height = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "source_checksum") {
            parse_unsigned(kv);
        } else {
            throw ConfigError("unknown manifest key '" + kv.key + "'");
        }
    }
    if (rank < 1 || width < 1 || height < 1) {
        throw FormatError(dir.string() + ": manifest missing rank or dimensions");
    }
    ImageGrid mean = load_raster(dir / "mean.tpr");
    if (mean.width() != width || mean.height() != height) {
        throw FormatError(dir.string() + ": mean raster disagrees with manifest");
    }
    Eigen::MatrixXd components(static_cast<Eigen::Index>(mean.size()), rank);
    char name[32];
    for (int i = 0; i < rank; ++i) {
        std::snprintf(name, sizeof name, "component_%02d.tpr", i);
        const ImageGrid c = load_raster(dir / name);
        if (!c.same_shape(mean)) {
            throw FormatError(dir.string() + ": component dimensions disagree with mean");
        }
        components.col(i) = as_vector(c);
    }
    // binary32 storage perturbs orthonormality; restore it with a thin QR,
    // keeping each column's sign aligned with the stored one.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(components);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(components.rows(), rank);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
    for (int i = 0; i < rank; ++i) {
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    }
    return Eigenspace(std::move(mean), std::move(q));
}

} // namespace tomoprior
