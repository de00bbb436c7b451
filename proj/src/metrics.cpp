#include "tomoprior/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tomoprior/errors.hpp"

namespace tomoprior {

namespace {

constexpr int kWindowRadius = 5; // 11x11 support
constexpr double kWindowSigma = 1.5;

void check_shape(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b)) {
        throw ValidationError("metric inputs have different dimensions");
    }
}

// Gaussian-weighted local mean of the elementwise product a.*b, with the
// window truncated and renormalized at image boundaries. Separable pass.
std::vector<double> local_mean(const std::vector<double>& values, int w, int h,
                               const std::vector<double>& kernel) {
    std::vector<double> horiz(values.size());
    std::vector<double> horiz_norm(values.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, norm = 0.0;
            for (int k = -kWindowRadius; k <= kWindowRadius; ++k) {
                const int xx = x + k;
                if (xx < 0 || xx >= w) continue;
                const double g = kernel[k + kWindowRadius];
                acc += g * values[static_cast<std::size_t>(y) * w + xx];
                norm += g;
            }
            horiz[static_cast<std::size_t>(y) * w + x] = acc;
            horiz_norm[static_cast<std::size_t>(y) * w + x] = norm;
        }
    }
    std::vector<double> out(values.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, norm = 0.0;
            for (int k = -kWindowRadius; k <= kWindowRadius; ++k) {
                const int yy = y + k;
                if (yy < 0 || yy >= h) continue;
                const double g = kernel[k + kWindowRadius];
                acc += g * horiz[static_cast<std::size_t>(yy) * w + x];
                norm += g * horiz_norm[static_cast<std::size_t>(yy) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc / norm;
        }
    }
    return out;
}

std::vector<double> product(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

} // namespace

double ssim(const ImageGrid& a, const ImageGrid& b,
            const std::optional<RegionOfInterest>& roi) {
    check_shape(a, b);
    if (roi) {
        return ssim(extract_roi(a, *roi), extract_roi(b, *roi), std::nullopt);
    }

    const auto [lo_a, hi_a] = std::minmax_element(a.data().begin(), a.data().end());
    const auto [lo_b, hi_b] = std::minmax_element(b.data().begin(), b.data().end());
    const double range = std::max(*hi_a, *hi_b) - std::min(*lo_a, *lo_b);
    if (range == 0.0) {
        if (a.data() == b.data()) return 1.0;
        throw MetricError("degenerate dynamic range: unequal constant images");
    }
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);

    std::vector<double> kernel(2 * kWindowRadius + 1);
    for (int k = -kWindowRadius; k <= kWindowRadius; ++k) {
        kernel[k + kWindowRadius] = std::exp(-0.5 * k * k / (kWindowSigma * kWindowSigma));
    }

    const int w = a.width(), h = a.height();
    const auto mu_a = local_mean(a.data(), w, h, kernel);
    const auto mu_b = local_mean(b.data(), w, h, kernel);
    const auto m_aa = local_mean(product(a.data(), a.data()), w, h, kernel);
    const auto m_bb = local_mean(product(b.data(), b.data()), w, h, kernel);
    const auto m_ab = local_mean(product(a.data(), b.data()), w, h, kernel);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double var_a = std::max(0.0, m_aa[i] - mu_a[i] * mu_a[i]);
        const double var_b = std::max(0.0, m_bb[i] - mu_b[i] * mu_b[i]);
        const double cov = m_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
        const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
        total += num / den;
    }
    return total / static_cast<double>(mu_a.size());
}

double rmse(const ImageGrid& a, const ImageGrid& b,
            const std::optional<RegionOfInterest>& roi) {
    check_shape(a, b);
    if (roi) {
        return rmse(extract_roi(a, *roi), extract_roi(b, *roi), std::nullopt);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

} // namespace tomoprior
