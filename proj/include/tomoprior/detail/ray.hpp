#pragma once

#include <cmath>
#include <cstddef>

#include "tomoprior/geometry.hpp"

namespace tomoprior::detail {

// Joseph traversal of one ray. The ray for detector bin d at angle a is
// p(u) = s*n + u*t with n = (cos a, sin a), t = (-sin a, cos a) and
// s = (d - (n_det-1)/2) * spacing, in a frame centered on the image center
// with pixel (ix, iy) at (ix - (w-1)/2, iy - (h-1)/2). Steps along the
// dominant axis of t, linearly interpolating along the other; each
// crossing weighs 1/|t_major| (the chord through a unit slab).
// visit(pixel_index, weight) runs in a fixed order, so accumulation is
// deterministic.
template <typename Visit>
void traverse_ray(const ScanGeometry& geom, int angle_idx, int det_idx, Visit&& visit) {
    const int w = geom.image_width;
    const int h = geom.image_height;
    const double a = geom.angles[angle_idx];
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    const double s = (det_idx - 0.5 * (geom.n_detectors - 1)) * geom.detector_spacing;
    const double half_w = 0.5 * (w - 1);
    const double half_h = 0.5 * (h - 1);

    if (std::abs(ca) >= std::abs(sa)) {
        // |t_y| >= |t_x|: step image rows.
        const double weight = 1.0 / std::abs(ca);
        for (int iy = 0; iy < h; ++iy) {
            const double cy = iy - half_h;
            const double u = (cy - s * sa) / ca;
            const double x = s * ca - u * sa;
            const double fx = x + half_w;
            const double fl = std::floor(fx);
            const int ix0 = static_cast<int>(fl);
            const double frac = fx - fl;
            if (ix0 >= 0 && ix0 < w) {
                visit(static_cast<std::size_t>(iy) * w + ix0, (1.0 - frac) * weight);
            }
            if (frac != 0.0 && ix0 + 1 >= 0 && ix0 + 1 < w) {
                visit(static_cast<std::size_t>(iy) * w + ix0 + 1, frac * weight);
            }
        }
    } else {
        // |t_x| > |t_y|: step image columns.
        const double weight = 1.0 / std::abs(sa);
        for (int ix = 0; ix < w; ++ix) {
            const double cx = ix - half_w;
            const double u = (cx - s * ca) / (-sa);
            const double y = s * sa + u * ca;
            const double fy = y + half_h;
            const double fl = std::floor(fy);
            const int iy0 = static_cast<int>(fl);
            const double frac = fy - fl;
            if (iy0 >= 0 && iy0 < h) {
                visit(static_cast<std::size_t>(iy0) * w + ix, (1.0 - frac) * weight);
            }
            if (frac != 0.0 && iy0 + 1 >= 0 && iy0 + 1 < h) {
                visit((static_cast<std::size_t>(iy0) + 1) * w + ix, frac * weight);
            }
        }
    }
}

} // namespace tomoprior::detail
