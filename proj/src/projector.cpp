#include "tomoprior/projector.hpp"

#include <cmath>
#include <random>

#include "tomoprior/detail/ray.hpp"
#include "tomoprior/errors.hpp"

namespace tomoprior {

using detail::traverse_ray;

namespace {

void check_dimensions(const ImageGrid& image, const ScanGeometry& geom) {
    if (image.width() != geom.image_width || image.height() != geom.image_height) {
        throw GeometryError("image is " + std::to_string(image.width()) + "x" +
                            std::to_string(image.height()) + " but geometry expects " +
                            std::to_string(geom.image_width) + "x" +
                            std::to_string(geom.image_height));
    }
}

} // namespace

Sinogram forward_project(const ImageGrid& image, const ScanGeometry& geom) {
    geom.validate();
    check_dimensions(image, geom);
    Sinogram sino{geom, std::vector<double>(geom.n_rays(), 0.0)};
    const auto& pixels = image.data();
    std::size_t ray = 0;
    for (int ia = 0; ia < geom.n_angles(); ++ia) {
        for (int id = 0; id < geom.n_detectors; ++id, ++ray) {
            double sum = 0.0;
            traverse_ray(geom, ia, id,
                         [&](std::size_t pix, double w) { sum += w * pixels[pix]; });
            sino.data[ray] = sum;
        }
    }
    return sino;
}

ImageGrid back_project(const Sinogram& sino) {
    sino.validate();
    const ScanGeometry& geom = sino.geometry;
    std::vector<double> image(static_cast<std::size_t>(geom.image_width) * geom.image_height,
                              0.0);
    std::size_t ray = 0;
    for (int ia = 0; ia < geom.n_angles(); ++ia) {
        for (int id = 0; id < geom.n_detectors; ++id, ++ray) {
            const double sample = sino.data[ray];
            if (sample == 0.0) continue;
            traverse_ray(geom, ia, id,
                         [&](std::size_t pix, double w) { image[pix] += w * sample; });
        }
    }
    return ImageGrid(geom.image_width, geom.image_height, std::move(image));
}

Eigen::MatrixXd dense_system_matrix(const ScanGeometry& geom) {
    geom.validate();
    const std::size_t n_pixels =
        static_cast<std::size_t>(geom.image_width) * geom.image_height;
    if (n_pixels > 4096) {
        throw SizeError("dense system matrix limited to 4096 pixels, got " +
                        std::to_string(n_pixels));
    }
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(geom.n_rays()),
                                                   static_cast<Eigen::Index>(n_pixels));
    std::size_t ray = 0;
    for (int ia = 0; ia < geom.n_angles(); ++ia) {
        for (int id = 0; id < geom.n_detectors; ++id, ++ray) {
            traverse_ray(geom, ia, id, [&](std::size_t pix, double w) {
                system(static_cast<Eigen::Index>(ray), static_cast<Eigen::Index>(pix)) += w;
            });
        }
    }
    return system;
}

double estimate_largest_singular_value(const ScanGeometry& geom, int iterations) {
    geom.validate();
    if (iterations <= 0) {
        throw ValidationError("power iteration count must be positive");
    }
    const int w = geom.image_width;
    const int h = geom.image_height;
    std::mt19937_64 rng(0x746f6d6fu); // fixed seed: estimate must be deterministic
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) {
        x = (static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max())) - 0.5;
    }
    double sigma_sq = 0.0;
    for (int it = 0; it < iterations; ++it) {
        ImageGrid xi(w, h, v);
        const Sinogram ax = forward_project(xi, geom);
        const ImageGrid atax = back_project(ax);
        double norm = 0.0;
        for (double val : atax.data()) norm += val * val;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        sigma_sq = norm;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = atax.data()[i] / norm;
    }
    return std::sqrt(sigma_sq);
}

} // namespace tomoprior
