#include "tomoprior/cs.hpp"

#include <cmath>
#include <vector>

#include "tomoprior/errors.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

namespace {

constexpr double kSigmaSafety = 1.05; // power iteration underestimates sigma_max

double l1_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += std::abs(x);
    return acc;
}

std::vector<double> soft_threshold(const std::vector<double>& v, double tau) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]) - tau;
        out[i] = a > 0.0 ? (v[i] > 0.0 ? a : -a) : 0.0;
    }
    return out;
}

struct ThetaProblem {
    const Sinogram& sino;
    const SparsifyingTransform& transform;
    const ImageGrid* prior = nullptr;          // nullptr when lambda2 == 0
    const std::vector<double>* w_sq = nullptr; // elementwise W^2
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    double objective(const std::vector<double>& theta, ImageGrid* x_out = nullptr) const {
        ImageGrid x = transform.inverse(theta);
        const Sinogram ax = forward_project(x, sino.geometry);
        double data_term = 0.0;
        for (std::size_t i = 0; i < ax.data.size(); ++i) {
            const double r = ax.data[i] - sino.data[i];
            data_term += r * r;
        }
        double prior_term = 0.0;
        if (lambda2 > 0.0) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x.data()[i] - prior->data()[i];
                prior_term += (*w_sq)[i] * d * d;
            }
        }
        const double value = data_term + lambda2 * prior_term + lambda1 * l1_norm(theta);
        if (x_out) *x_out = std::move(x);
        return value;
    }

    std::vector<double> smooth_gradient(const std::vector<double>& theta) const {
        const ImageGrid x = transform.inverse(theta);
        Sinogram ax = forward_project(x, sino.geometry);
        for (std::size_t i = 0; i < ax.data.size(); ++i) {
            ax.data[i] = 2.0 * (ax.data[i] - sino.data[i]);
        }
        ImageGrid g = back_project(ax);
        if (lambda2 > 0.0) {
            std::vector<double> gd = g.data();
            for (std::size_t i = 0; i < gd.size(); ++i) {
                gd[i] += 2.0 * lambda2 * (*w_sq)[i] * (x.data()[i] - prior->data()[i]);
            }
            g = ImageGrid(g.width(), g.height(), std::move(gd));
        }
        return transform.forward(g);
    }
};

// Monotone FISTA (accepts the proximal candidate only when it does not
// increase the objective; momentum still tracks the candidate).
CsResult run_mfista(const ThetaProblem& problem, const CsOptions& opts,
                    std::vector<double> theta0) {
    const std::size_t n = theta0.size();
    double sigma = estimate_largest_singular_value(problem.sino.geometry,
                                                   opts.lipschitz_power_iters);
    sigma *= kSigmaSafety;
    double lip = 2.0 * sigma * sigma;
    if (problem.lambda2 > 0.0) {
        double w_max = 0.0;
        for (double w : *problem.w_sq) w_max = std::max(w_max, w);
        lip += 2.0 * problem.lambda2 * w_max;
    }

    CsResult result{ImageGrid::zeros(problem.transform.width(), problem.transform.height()),
                    {}, 0};
    if (lip <= 0.0) {
        result.image = problem.transform.inverse(theta0);
        result.objective.push_back(problem.objective(theta0));
        return result;
    }
    const double step = 1.0 / lip;

    std::vector<double> x = std::move(theta0);
    std::vector<double> y = x;
    double t = 1.0;
    double fx = problem.objective(x);
    result.objective.push_back(fx);

    for (int it = 0; it < opts.max_iterations; ++it) {
        const std::vector<double> grad = problem.smooth_gradient(y);
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = y[i] - step * grad[i];
        z = soft_threshold(z, step * problem.lambda1);
        const double fz = problem.objective(z);

        std::vector<double> x_next;
        double f_next;
        if (fz <= fx) {
            x_next = z;
            f_next = fz;
        } else {
            x_next = x;
            f_next = fx;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        std::vector<double> y_next(n);
        for (std::size_t i = 0; i < n; ++i) {
            y_next[i] = x_next[i] + (t / t_next) * (z[i] - x_next[i]) +
                        ((t - 1.0) / t_next) * (x_next[i] - x[i]);
        }

        const double change = std::abs(fx - f_next);
        x = std::move(x_next);
        y = std::move(y_next);
        t = t_next;
        fx = f_next;
        result.objective.push_back(fx);
        result.iterations = it + 1;
        if (change <= opts.tolerance * std::max(1.0, std::abs(fx))) {
            break;
        }
    }
    result.image = problem.transform.inverse(x);
    return result;
}

void check_dimensions(const Sinogram& sino, const SparsifyingTransform& transform) {
    if (transform.width() != sino.geometry.image_width ||
        transform.height() != sino.geometry.image_height) {
        throw GeometryError("transform does not match scan geometry dimensions");
    }
}

std::vector<double> starting_point(const SparsifyingTransform& transform,
                                   const std::optional<ImageGrid>& initial) {
    if (initial) {
        return transform.forward(*initial);
    }
    return std::vector<double>(
        static_cast<std::size_t>(transform.width()) * transform.height(), 0.0);
}

} // namespace

void CsOptions::validate() const {
    if (lambda1 < 0.0 || !std::isfinite(lambda1)) {
        throw ValidationError("lambda1 must be non-negative");
    }
    if (max_iterations <= 0) {
        throw ValidationError("max_iterations must be positive");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    if (lipschitz_power_iters <= 0) {
        throw ValidationError("lipschitz_power_iters must be positive");
    }
}

CsResult cs_reconstruct(const Sinogram& sino, const SparsifyingTransform& transform,
                        const CsOptions& opts, const std::optional<ImageGrid>& initial) {
    sino.validate();
    opts.validate();
    check_dimensions(sino, transform);
    ThetaProblem problem{sino, transform, nullptr, nullptr, opts.lambda1, 0.0};
    return run_mfista(problem, opts, starting_point(transform, initial));
}

CsResult solve_theta_subproblem(const Sinogram& sino, const SparsifyingTransform& transform,
                                const ImageGrid& prior_estimate, const WeightMap& weights,
                                double lambda1, double lambda2, const CsOptions& opts,
                                const std::optional<ImageGrid>& initial) {
    sino.validate();
    opts.validate();
    check_dimensions(sino, transform);
    if (lambda1 < 0.0 || lambda2 < 0.0) {
        throw ValidationError("lambda1 and lambda2 must be non-negative");
    }
    if (prior_estimate.width() != transform.width() ||
        prior_estimate.height() != transform.height()) {
        throw ValidationError("prior estimate does not match transform dimensions");
    }
    weights.validate();
    if (!weights.values.same_shape(prior_estimate)) {
        throw ValidationError("weight map does not match prior dimensions");
    }

    std::vector<double> w_sq(weights.values.size());
    for (std::size_t i = 0; i < w_sq.size(); ++i) {
        w_sq[i] = weights.values.data()[i] * weights.values.data()[i];
    }
    ThetaProblem problem{sino, transform, &prior_estimate, &w_sq, lambda1, lambda2};
    if (lambda2 == 0.0) {
        problem.prior = nullptr;
        problem.w_sq = nullptr;
    }
    return run_mfista(problem, opts, starting_point(transform, initial));
}

} // namespace tomoprior
