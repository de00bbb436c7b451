#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/fbp.hpp"
#include "tomoprior/metrics.hpp"
#include "tomoprior/projector.hpp"

using namespace tomoprior;

namespace {

// RMSE between reconstruction and phantom over the interior disk, away
// from boundary ring artefacts.
double interior_rmse(const ImageGrid& recon, const ImageGrid& truth) {
    const double cx = 0.5 * (truth.width() - 1);
    const double cy = 0.5 * (truth.height() - 1);
    const double radius = 0.45 * truth.width();
    double acc = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < truth.height(); ++y) {
        for (int x = 0; x < truth.width(); ++x) {
            if (std::hypot(x - cx, y - cy) <= radius) {
                const double d = recon.at(x, y) - truth.at(x, y);
                acc += d * d;
                ++count;
            }
        }
    }
    return std::sqrt(acc / static_cast<double>(count));
}

double disk_rmse(int n_views, FbpFilter filter = FbpFilter::RamLak) {
    const int size = 64;
    const ImageGrid disk = test_helpers::smooth_disk(size, 0.3, 1.0);
    const ScanGeometry geom = ScanGeometry::uniform(size, size, n_views);
    const Sinogram sino = forward_project(disk, geom);
    return interior_rmse(fbp_reconstruct(sino, filter), disk);
}

} // namespace

TEST_CASE("zero sinogram reconstructs to a zero image") {
    const ScanGeometry geom = ScanGeometry::uniform(16, 16, 8);
    const Sinogram zero{geom, std::vector<double>(geom.n_rays(), 0.0)};
    const ImageGrid image = fbp_reconstruct(zero);
    for (double v : image.data()) CHECK(v == 0.0);
}

TEST_CASE("fewer than 2 angles is rejected") {
    const ScanGeometry geom = ScanGeometry::uniform(16, 16, 1);
    const Sinogram sino{geom, std::vector<double>(geom.n_rays(), 0.0)};
    CHECK_THROWS_AS(fbp_reconstruct(sino), GeometryError);
}

TEST_CASE("dense-view reconstruction converges on the smooth disk") {
    CHECK(disk_rmse(180) < 0.05);
}

TEST_CASE("sparse views degrade the reconstruction monotonically") {
    const double rmse_12 = disk_rmse(12);
    const double rmse_45 = disk_rmse(45);
    const double rmse_180 = disk_rmse(180);
    CHECK(rmse_12 > rmse_45);
    CHECK(rmse_45 > rmse_180);
}

TEST_CASE("fbp is linear in the sinogram") {
    std::mt19937 rng(17);
    const ScanGeometry geom = ScanGeometry::uniform(16, 16, 9);
    const Sinogram a = test_helpers::random_sinogram(geom, rng);
    const Sinogram b = test_helpers::random_sinogram(geom, rng);
    Sinogram sum{geom, a.data};
    for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += b.data[i];
    const ImageGrid fa = fbp_reconstruct(a);
    const ImageGrid fb = fbp_reconstruct(b);
    const ImageGrid fsum = fbp_reconstruct(sum);
    for (std::size_t i = 0; i < fsum.size(); ++i) {
        CHECK(fsum.data()[i] ==
              doctest::Approx(fa.data()[i] + fb.data()[i]).epsilon(1e-10));
    }
}

TEST_CASE("hann filter attenuates high-frequency content") {
    const int size = 64;
    std::mt19937 rng(23);
    const ImageGrid noisy = test_helpers::random_grid(size, size, rng);
    const ScanGeometry geom = ScanGeometry::uniform(size, size, 90);
    const Sinogram sino = forward_project(noisy, geom);
    const ImageGrid sharp = fbp_reconstruct(sino, FbpFilter::RamLak);
    const ImageGrid smooth = fbp_reconstruct(sino, FbpFilter::Hann);
    CHECK(test_helpers::norm(smooth.data()) < test_helpers::norm(sharp.data()));
}
