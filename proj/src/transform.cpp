#include "tomoprior/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "tomoprior/errors.hpp"

namespace tomoprior {

// FFTW REDFT10 computes Y[k] = 2 sum_n x[n] cos(pi (n+1/2) k / N); the
// orthonormal DCT-II coefficient is w(k)/2 * Y[k] with w(0) = sqrt(1/N),
// w(k>0) = sqrt(2/N). REDFT01 with the matching prescale inverts it.
struct SparsifyingTransform::Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
    double* buffer = nullptr;
    std::size_t size = 0;
    mutable std::mutex mutex;

    ~Plans() {
        if (forward) fftw_destroy_plan(forward);
        if (inverse) fftw_destroy_plan(inverse);
        if (buffer) fftw_free(buffer);
    }
};

SparsifyingTransform::SparsifyingTransform(TransformKind kind, int width, int height)
    : kind_(kind), width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("transform dimensions must be positive");
    }
    if (kind_ == TransformKind::Dct2) {
        plans_ = std::make_unique<Plans>();
        plans_->size = static_cast<std::size_t>(width) * height;
        plans_->buffer = fftw_alloc_real(plans_->size);
        plans_->forward = fftw_plan_r2r_2d(height, width, plans_->buffer, plans_->buffer,
                                           FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
        plans_->inverse = fftw_plan_r2r_2d(height, width, plans_->buffer, plans_->buffer,
                                           FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
    }
}

SparsifyingTransform::~SparsifyingTransform() = default;
SparsifyingTransform::SparsifyingTransform(SparsifyingTransform&&) noexcept = default;
SparsifyingTransform& SparsifyingTransform::operator=(SparsifyingTransform&&) noexcept =
    default;

std::vector<double> SparsifyingTransform::forward(const ImageGrid& x) const {
    if (x.width() != width_ || x.height() != height_) {
        throw ValidationError("image does not match transform dimensions");
    }
    if (kind_ == TransformKind::Identity) {
        return x.data();
    }
    const int w = width_, h = height_;
    std::lock_guard<std::mutex> lock(plans_->mutex);
    double* buf = plans_->buffer;
    for (std::size_t i = 0; i < plans_->size; ++i) buf[i] = x.data()[i];
    fftw_execute(plans_->forward);
    const double s0x = std::sqrt(1.0 / (4.0 * w)), sx = std::sqrt(1.0 / (2.0 * w));
    const double s0y = std::sqrt(1.0 / (4.0 * h)), sy = std::sqrt(1.0 / (2.0 * h));
    std::vector<double> out(plans_->size);
    for (int ky = 0; ky < h; ++ky) {
        const double fy = ky == 0 ? s0y : sy;
        for (int kx = 0; kx < w; ++kx) {
            const double fx = kx == 0 ? s0x : sx;
            out[static_cast<std::size_t>(ky) * w + kx] =
                buf[static_cast<std::size_t>(ky) * w + kx] * fx * fy;
        }
    }
    return out;
}

ImageGrid SparsifyingTransform::inverse(const std::vector<double>& coefficients) const {
    const std::size_t expected = static_cast<std::size_t>(width_) * height_;
    if (coefficients.size() != expected) {
        throw ValidationError("coefficient vector does not match transform dimensions");
    }
    if (kind_ == TransformKind::Identity) {
        return ImageGrid(width_, height_, coefficients);
    }
    const int w = width_, h = height_;
    std::lock_guard<std::mutex> lock(plans_->mutex);
    double* buf = plans_->buffer;
    const double s0x = std::sqrt(1.0 / w), sx = std::sqrt(1.0 / (2.0 * w));
    const double s0y = std::sqrt(1.0 / h), sy = std::sqrt(1.0 / (2.0 * h));
    for (int ky = 0; ky < h; ++ky) {
        const double fy = ky == 0 ? s0y : sy;
        for (int kx = 0; kx < w; ++kx) {
            const double fx = kx == 0 ? s0x : sx;
            buf[static_cast<std::size_t>(ky) * w + kx] =
                coefficients[static_cast<std::size_t>(ky) * w + kx] * fx * fy;
        }
    }
    fftw_execute(plans_->inverse);
    std::vector<double> out(expected);
    for (std::size_t i = 0; i < expected; ++i) out[i] = buf[i];
    return ImageGrid(w, h, std::move(out));
}

std::vector<double> transform_forward(const ImageGrid& x, const SparsifyingTransform& t) {
    return t.forward(x);
}

ImageGrid transform_inverse(const std::vector<double>& coefficients,
                            const SparsifyingTransform& t) {
    return t.inverse(coefficients);
}

} // namespace tomoprior
