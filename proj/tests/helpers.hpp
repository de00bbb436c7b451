#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tomoprior/geometry.hpp"
#include "tomoprior/grid.hpp"

namespace test_helpers {

using tomoprior::ImageGrid;
using tomoprior::ScanGeometry;
using tomoprior::Sinogram;

// Random grid with binary32-representable values so disk round-trips are
// exact.
inline ImageGrid random_grid(int width, int height, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<float> dist(-static_cast<float>(scale),
                                               static_cast<float>(scale));
    std::vector<double> data(static_cast<std::size_t>(width) * height);
    for (auto& v : data) v = static_cast<double>(dist(rng));
    return ImageGrid(width, height, std::move(data));
}

inline Sinogram random_sinogram(const ScanGeometry& geom, std::mt19937& rng,
                                double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> data(geom.n_rays());
    for (auto& v : data) v = dist(rng);
    return Sinogram{geom, std::move(data)};
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm(const std::vector<double>& a) {
    return std::sqrt(dot(a, a));
}

inline double rmse_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

// Flat disk of the given value with an erf-smoothed edge; radial symmetry
// tests and FBP convergence tests both want a band-limited profile.
inline ImageGrid smooth_disk(int size, double radius_fraction, double value,
                             double edge_sigma = 1.5) {
    std::vector<double> data(static_cast<std::size_t>(size) * size);
    const double cx = 0.5 * (size - 1);
    const double cy = 0.5 * (size - 1);
    const double radius = radius_fraction * size;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double r = std::hypot(x - cx, y - cy);
            data[static_cast<std::size_t>(y) * size + x] =
                value * 0.5 * std::erfc((r - radius) / (std::numbers::sqrt2 * edge_sigma));
        }
    }
    return ImageGrid(size, size, std::move(data));
}

// Orthonormal DCT-II basis matrix built from the textbook cosine formula;
// independent of the FFTW-backed transform. Column k is the k-th basis
// image flattened row-major.
inline std::vector<std::vector<double>> dense_dct_basis(int width, int height) {
    const auto n = static_cast<std::size_t>(width) * height;
    std::vector<std::vector<double>> basis(n, std::vector<double>(n, 0.0));
    for (int ky = 0; ky < height; ++ky) {
        for (int kx = 0; kx < width; ++kx) {
            const std::size_t col = static_cast<std::size_t>(ky) * width + kx;
            const double wx = kx == 0 ? std::sqrt(1.0 / width) : std::sqrt(2.0 / width);
            const double wy = ky == 0 ? std::sqrt(1.0 / height) : std::sqrt(2.0 / height);
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    const std::size_t row = static_cast<std::size_t>(y) * width + x;
                    basis[row][col] = wx * wy *
                                      std::cos(std::numbers::pi * (x + 0.5) * kx / width) *
                                      std::cos(std::numbers::pi * (y + 0.5) * ky / height);
                }
            }
        }
    }
    return basis;
}

} // namespace test_helpers
