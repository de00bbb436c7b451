#include "tomoprior/algebraic.hpp"

#include <cmath>
#include <vector>

#include "tomoprior/detail/ray.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

using detail::traverse_ray;

namespace {

int default_iterations(AlgebraicMethod method) {
    switch (method) {
        case AlgebraicMethod::Art: return 10;
        case AlgebraicMethod::Sart: return 20;
        case AlgebraicMethod::Sirt: return 100;
    }
    throw ValidationError("unknown algebraic method");
}

std::vector<double> initial_image(const Sinogram& sino, const AlgebraicOptions& opts) {
    const ScanGeometry& geom = sino.geometry;
    if (opts.initial) {
        if (opts.initial->width() != geom.image_width ||
            opts.initial->height() != geom.image_height) {
            throw GeometryError("initial image does not match scan geometry");
        }
        return opts.initial->data();
    }
    return std::vector<double>(static_cast<std::size_t>(geom.image_width) * geom.image_height,
                               0.0);
}

std::vector<double> art_solve(const Sinogram& sino, const AlgebraicOptions& opts,
                              int iterations) {
    const ScanGeometry& geom = sino.geometry;
    auto x = initial_image(sino, opts);
    std::vector<std::size_t> pixels;
    std::vector<double> weights;
    for (int sweep = 0; sweep < iterations; ++sweep) {
        std::size_t ray = 0;
        for (int ia = 0; ia < geom.n_angles(); ++ia) {
            for (int id = 0; id < geom.n_detectors; ++id, ++ray) {
                pixels.clear();
                weights.clear();
                double dot = 0.0, norm_sq = 0.0;
                traverse_ray(geom, ia, id, [&](std::size_t pix, double w) {
                    pixels.push_back(pix);
                    weights.push_back(w);
                    dot += w * x[pix];
                    norm_sq += w * w;
                });
                if (norm_sq == 0.0) continue;
                const double step = opts.relaxation * (sino.data[ray] - dot) / norm_sq;
                for (std::size_t i = 0; i < pixels.size(); ++i) {
                    x[pixels[i]] += step * weights[i];
                }
            }
        }
    }
    return x;
}

std::vector<double> sart_solve(const Sinogram& sino, const AlgebraicOptions& opts,
                               int iterations) {
    const ScanGeometry& geom = sino.geometry;
    const std::size_t n_pixels =
        static_cast<std::size_t>(geom.image_width) * geom.image_height;
    auto x = initial_image(sino, opts);

    // Per-angle row sums and in-block column sums are iteration invariants.
    std::vector<std::vector<double>> row_sums(geom.n_angles());
    std::vector<std::vector<double>> col_sums(geom.n_angles());
    for (int ia = 0; ia < geom.n_angles(); ++ia) {
        row_sums[ia].assign(geom.n_detectors, 0.0);
        col_sums[ia].assign(n_pixels, 0.0);
        for (int id = 0; id < geom.n_detectors; ++id) {
            traverse_ray(geom, ia, id, [&](std::size_t pix, double w) {
                row_sums[ia][id] += w;
                col_sums[ia][pix] += w;
            });
        }
    }

    std::vector<double> residual(geom.n_detectors);
    std::vector<double> update(n_pixels);
    for (int it = 0; it < iterations; ++it) {
        for (int ia = 0; ia < geom.n_angles(); ++ia) {
            std::fill(update.begin(), update.end(), 0.0);
            for (int id = 0; id < geom.n_detectors; ++id) {
                double dot = 0.0;
                traverse_ray(geom, ia, id,
                             [&](std::size_t pix, double w) { dot += w * x[pix]; });
                const std::size_t ray = static_cast<std::size_t>(ia) * geom.n_detectors + id;
                residual[id] = row_sums[ia][id] > 0.0
                                   ? (sino.data[ray] - dot) / row_sums[ia][id]
                                   : 0.0;
            }
            for (int id = 0; id < geom.n_detectors; ++id) {
                if (residual[id] == 0.0) continue;
                traverse_ray(geom, ia, id, [&](std::size_t pix, double w) {
                    update[pix] += w * residual[id];
                });
            }
            for (std::size_t pix = 0; pix < n_pixels; ++pix) {
                if (col_sums[ia][pix] > 0.0) {
                    x[pix] += opts.relaxation * update[pix] / col_sums[ia][pix];
                }
            }
        }
    }
    return x;
}

std::vector<double> sirt_solve(const Sinogram& sino, const AlgebraicOptions& opts,
                               int iterations) {
    const ScanGeometry& geom = sino.geometry;
    const std::size_t n_pixels =
        static_cast<std::size_t>(geom.image_width) * geom.image_height;
    auto x = initial_image(sino, opts);

    std::vector<double> row_sums(geom.n_rays(), 0.0);
    std::vector<double> col_sums(n_pixels, 0.0);
    {
        std::size_t ray = 0;
        for (int ia = 0; ia < geom.n_angles(); ++ia) {
            for (int id = 0; id < geom.n_detectors; ++id, ++ray) {
                traverse_ray(geom, ia, id, [&](std::size_t pix, double w) {
                    row_sums[ray] += w;
                    col_sums[pix] += w;
                });
            }
        }
    }

    for (int it = 0; it < iterations; ++it) {
        ImageGrid xi(geom.image_width, geom.image_height, x);
        Sinogram ax = forward_project(xi, geom);
        for (std::size_t ray = 0; ray < ax.data.size(); ++ray) {
            ax.data[ray] = row_sums[ray] > 0.0
                               ? (sino.data[ray] - ax.data[ray]) / row_sums[ray]
                               : 0.0;
        }
        const ImageGrid bp = back_project(ax);
        for (std::size_t pix = 0; pix < n_pixels; ++pix) {
            if (col_sums[pix] > 0.0) {
                x[pix] += opts.relaxation * bp.data()[pix] / col_sums[pix];
            }
        }
    }
    return x;
}

} // namespace

void AlgebraicOptions::validate() const {
    if (iterations < 0) {
        throw ValidationError("iteration count must be non-negative");
    }
    if (!(relaxation > 0.0) || !(relaxation < 2.0)) {
        throw ValidationError("relaxation must lie in (0, 2)");
    }
}

ImageGrid algebraic_reconstruct(const Sinogram& sino, const AlgebraicOptions& opts) {
    sino.validate();
    opts.validate();
    const int iterations = opts.iterations > 0 ? opts.iterations
                                               : default_iterations(opts.method);
    std::vector<double> x;
    switch (opts.method) {
        case AlgebraicMethod::Art: x = art_solve(sino, opts, iterations); break;
        case AlgebraicMethod::Sart: x = sart_solve(sino, opts, iterations); break;
        case AlgebraicMethod::Sirt: x = sirt_solve(sino, opts, iterations); break;
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw NumericalError("algebraic solve produced a non-finite value");
        }
    }
    return ImageGrid(sino.geometry.image_width, sino.geometry.image_height, std::move(x));
}

} // namespace tomoprior
