#include "tomoprior/fbp.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <vector>

#include "tomoprior/errors.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

namespace {

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

// Band-limited Ram-Lak kernel (Kak & Slaney): h[0] = 1/4, h[n] = 0 for
// even n, h[n] = -1/(pi^2 n^2) for odd n, scaled by 1/spacing. Laid out
// in wrap-around order on the padded length.
std::vector<double> ramp_kernel(std::size_t padded, double spacing) {
    std::vector<double> kernel(padded, 0.0);
    kernel[0] = 0.25 / spacing;
    for (std::size_t n = 1; n < padded / 2; n += 2) {
        const double v = -1.0 / (std::numbers::pi * std::numbers::pi * n * n * spacing);
        kernel[n] = v;
        kernel[padded - n] = v;
    }
    return kernel;
}

} // namespace

ImageGrid fbp_reconstruct(const Sinogram& sino, FbpFilter filter) {
    sino.validate();
    const ScanGeometry& geom = sino.geometry;
    if (geom.n_angles() < 2) {
        throw GeometryError("fbp needs at least 2 projection angles");
    }

    const int n_det = geom.n_detectors;
    const std::size_t padded = next_power_of_two(2 * static_cast<std::size_t>(n_det));
    const std::size_t n_freq = padded / 2 + 1;

    std::unique_ptr<double, FftwDeleter> real_buf(fftw_alloc_real(padded));
    std::unique_ptr<fftw_complex, FftwDeleter> cplx_buf(fftw_alloc_complex(n_freq));
    fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(padded), real_buf.get(),
                                         cplx_buf.get(), FFTW_ESTIMATE);
    fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(padded), cplx_buf.get(),
                                         real_buf.get(), FFTW_ESTIMATE);

    // Frequency response of the spatial kernel; real and even by symmetry.
    const auto kernel = ramp_kernel(padded, geom.detector_spacing);
    std::vector<double> response(n_freq);
    {
        for (std::size_t i = 0; i < padded; ++i) real_buf.get()[i] = kernel[i];
        fftw_execute(fwd);
        for (std::size_t i = 0; i < n_freq; ++i) response[i] = cplx_buf.get()[i][0];
    }
    if (filter == FbpFilter::Hann) {
        for (std::size_t i = 0; i < n_freq; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(padded / 2);
            response[i] *= 0.5 * (1.0 + std::cos(std::numbers::pi * f));
        }
    }

    Sinogram filtered{geom, std::vector<double>(sino.data.size())};
    const double inv_padded = 1.0 / static_cast<double>(padded);
    for (int ia = 0; ia < geom.n_angles(); ++ia) {
        const double* row = sino.data.data() + static_cast<std::size_t>(ia) * n_det;
        for (int i = 0; i < n_det; ++i) real_buf.get()[i] = row[i];
        for (std::size_t i = n_det; i < padded; ++i) real_buf.get()[i] = 0.0;
        fftw_execute(fwd);
        for (std::size_t i = 0; i < n_freq; ++i) {
            cplx_buf.get()[i][0] *= response[i];
            cplx_buf.get()[i][1] *= response[i];
        }
        fftw_execute(inv);
        double* out = filtered.data.data() + static_cast<std::size_t>(ia) * n_det;
        for (int i = 0; i < n_det; ++i) {
            out[i] = real_buf.get()[i] * inv_padded * geom.detector_spacing;
        }
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);

    ImageGrid image = back_project(filtered);
    return (std::numbers::pi / geom.n_angles()) * image;
}

} // namespace tomoprior
