#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "helpers.hpp"
#include "tomoprior/algebraic.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/projector.hpp"

using namespace tomoprior;

namespace {

// Consistent system: project a known 4x4 image over a dense angle set.
struct TinySystem {
    ScanGeometry geom = ScanGeometry::uniform(4, 4, 8);
    ImageGrid truth = ImageGrid::zeros(4, 4);
    Sinogram sino{geom, {}};

    TinySystem() {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> dist(0.2, 1.0);
        std::vector<double> data(16);
        for (auto& v : data) v = dist(rng);
        truth = ImageGrid(4, 4, std::move(data));
        sino = forward_project(truth, geom);
    }

    // Least-squares oracle from the dense matrix.
    std::vector<double> least_squares() const {
        const Eigen::MatrixXd system = dense_system_matrix(geom);
        const Eigen::Map<const Eigen::VectorXd> y(sino.data.data(),
                                                  static_cast<Eigen::Index>(sino.data.size()));
        const Eigen::VectorXd x =
            system.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
        return {x.data(), x.data() + x.size()};
    }
};

double residual_norm(const Sinogram& sino, const ImageGrid& x) {
    const Sinogram ax = forward_project(x, sino.geometry);
    double acc = 0.0;
    for (std::size_t i = 0; i < ax.data.size(); ++i) {
        const double r = ax.data[i] - sino.data[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

} // namespace

TEST_CASE("options validation") {
    AlgebraicOptions opts;
    opts.relaxation = 2.0;
    CHECK_THROWS_AS(opts.validate(), ValidationError);
    opts.relaxation = 0.0;
    CHECK_THROWS_AS(opts.validate(), ValidationError);
}

TEST_CASE("zero sinogram with zero init is a fixed point") {
    const ScanGeometry geom = ScanGeometry::uniform(8, 8, 5);
    const Sinogram zero{geom, std::vector<double>(geom.n_rays(), 0.0)};
    for (auto method : {AlgebraicMethod::Art, AlgebraicMethod::Sart, AlgebraicMethod::Sirt}) {
        AlgebraicOptions opts;
        opts.method = method;
        opts.iterations = 3;
        const ImageGrid x = algebraic_reconstruct(zero, opts);
        for (double v : x.data()) CHECK(v == 0.0);
    }
}

TEST_CASE("SIRT solves the consistent tiny system") {
    const TinySystem sys;
    AlgebraicOptions opts;
    opts.method = AlgebraicMethod::Sirt;
    opts.iterations = 500;
    const ImageGrid x = algebraic_reconstruct(sys.sino, opts);
    CHECK(residual_norm(sys.sino, x) / test_helpers::norm(sys.sino.data) < 1e-3);
    CHECK(test_helpers::rmse_vec(x.data(), sys.least_squares()) < 1e-2);
}

TEST_CASE("all three methods approach the dense least-squares oracle") {
    const TinySystem sys;
    const auto oracle = sys.least_squares();
    for (auto method : {AlgebraicMethod::Art, AlgebraicMethod::Sart, AlgebraicMethod::Sirt}) {
        AlgebraicOptions opts;
        opts.method = method;
        opts.iterations = method == AlgebraicMethod::Sirt ? 800 : 200;
        const ImageGrid x = algebraic_reconstruct(sys.sino, opts);
        CAPTURE(static_cast<int>(method));
        CHECK(test_helpers::rmse_vec(x.data(), oracle) < 2e-2);
    }
}

TEST_CASE("SIRT residual is non-increasing at relaxation 1") {
    const int size = 32;
    const ImageGrid disk = test_helpers::smooth_disk(size, 0.3, 1.0);
    const ScanGeometry geom = ScanGeometry::uniform(size, size, 45);
    const Sinogram sino = forward_project(disk, geom);

    AlgebraicOptions opts;
    opts.method = AlgebraicMethod::Sirt;
    double previous = residual_norm(sino, ImageGrid::zeros(size, size));
    for (int budget = 5; budget <= 40; budget += 5) {
        opts.iterations = budget;
        const double current = residual_norm(sino, algebraic_reconstruct(sino, opts));
        CHECK(current <= previous + 1e-9);
        previous = current;
    }
}

TEST_CASE("identical inputs give bitwise identical outputs") {
    const TinySystem sys;
    for (auto method : {AlgebraicMethod::Art, AlgebraicMethod::Sart, AlgebraicMethod::Sirt}) {
        AlgebraicOptions opts;
        opts.method = method;
        opts.iterations = 15;
        const ImageGrid a = algebraic_reconstruct(sys.sino, opts);
        const ImageGrid b = algebraic_reconstruct(sys.sino, opts);
        CHECK(a == b);
    }
}

TEST_CASE("warm start from a provided initial image") {
    const TinySystem sys;
    AlgebraicOptions opts;
    opts.method = AlgebraicMethod::Sirt;
    opts.iterations = 1;
    opts.initial = sys.truth; // already consistent: update should be tiny
    const ImageGrid x = algebraic_reconstruct(sys.sino, opts);
    CHECK(test_helpers::rmse_vec(x.data(), sys.truth.data()) < 1e-10);
    opts.initial = ImageGrid::zeros(5, 5);
    CHECK_THROWS_AS(algebraic_reconstruct(sys.sino, opts), GeometryError);
}
