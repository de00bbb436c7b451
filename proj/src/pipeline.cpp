#include "tomoprior/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tomoprior/errors.hpp"
#include "tomoprior/fbp.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

namespace {

struct ObjectiveTerms {
    double data = 0.0;
    double sparsity = 0.0;
    double prior = 0.0;
    double total() const { return data + sparsity + prior; }
};

ObjectiveTerms evaluate_objective(const Sinogram& sino, const SparsifyingTransform& dct,
                                  const ImageGrid& x, const std::vector<double>& theta,
                                  const WeightMap& weights, const ImageGrid& prior_estimate,
                                  double lambda1, double lambda2) {
    ObjectiveTerms terms;
    const Sinogram ax = forward_project(x, sino.geometry);
    for (std::size_t i = 0; i < ax.data.size(); ++i) {
        const double r = ax.data[i] - sino.data[i];
        terms.data += r * r;
    }
    for (double t : theta) terms.sparsity += std::abs(t);
    terms.sparsity *= lambda1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = weights.values.data()[i] * (x.data()[i] - prior_estimate.data()[i]);
        terms.prior += d * d;
    }
    terms.prior *= lambda2;
    return terms;
}

PipelineResult alternate_minimize(const Sinogram& test_sino, const TemplateSet& templates,
                                  const ReconConfig& cfg, WeightMap weights) {
    const ScanGeometry& geom = test_sino.geometry;
    const int L = templates.count();
    const int rank_high = cfg.eigen_rank_high == 0 ? L - 1 : cfg.eigen_rank_high;
    const Eigenspace space = build_eigenspace(templates, rank_high);

    SparsifyingTransform dct(TransformKind::Dct2, geom.image_width, geom.image_height);
    CsOptions theta_opts = cfg.cs;
    theta_opts.lambda1 = cfg.lambda1;

    ImageGrid x = fbp_reconstruct(test_sino);
    AlphaCoefficients alpha = solve_alpha_subproblem(x, weights, space);
    ImageGrid prior_estimate = eigenspace_estimate(space, alpha);
    std::vector<double> theta = dct.forward(x);

    Diagnostics diag;
    ObjectiveTerms terms = evaluate_objective(test_sino, dct, x, theta, weights,
                                              prior_estimate, cfg.lambda1, cfg.lambda2);
    diag.outer.push_back(
        {0, terms.data, terms.sparsity, terms.prior, terms.total()});

    for (int outer = 1; outer <= cfg.outer_iterations; ++outer) {
        const CsResult step =
            solve_theta_subproblem(test_sino, dct, prior_estimate, weights, cfg.lambda1,
                                   cfg.lambda2, theta_opts, x);
        x = step.image;
        theta = dct.forward(x);

        // Closed-form alpha step; kept only if it does not raise the prior
        // term (the tiny ridge in the normal equations could, in principle).
        const AlphaCoefficients alpha_next = solve_alpha_subproblem(x, weights, space);
        const ImageGrid estimate_next = eigenspace_estimate(space, alpha_next);
        double prior_old = 0.0, prior_new = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = weights.values.data()[i];
            const double d_old = w * (x.data()[i] - prior_estimate.data()[i]);
            const double d_new = w * (x.data()[i] - estimate_next.data()[i]);
            prior_old += d_old * d_old;
            prior_new += d_new * d_new;
        }
        if (prior_new <= prior_old) {
            alpha = alpha_next;
            prior_estimate = estimate_next;
        }

        terms = evaluate_objective(test_sino, dct, x, theta, weights, prior_estimate,
                                   cfg.lambda1, cfg.lambda2);
        diag.outer.push_back({outer, terms.data, terms.sparsity, terms.prior, terms.total()});

        const double previous = diag.outer[diag.outer.size() - 2].total;
        if (std::abs(previous - terms.total()) <= 1e-4 * std::max(1.0, std::abs(previous))) {
            break;
        }
    }
    return PipelineResult{std::move(x), std::move(weights), std::move(diag)};
}

void check_consistency(const Sinogram& test_sino, const TemplateSet& templates) {
    test_sino.validate();
    templates.validate();
    if (templates.templates.front().width() != test_sino.geometry.image_width ||
        templates.templates.front().height() != test_sino.geometry.image_height) {
        throw GeometryError("templates do not match the scan geometry dimensions");
    }
}

} // namespace

void ReconConfig::validate() const {
    if (lambda1 < 0.0 || lambda2 < 0.0 || !std::isfinite(lambda1) ||
        !std::isfinite(lambda2)) {
        throw ValidationError("lambda1 and lambda2 must be non-negative");
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw ValidationError("k must be positive");
    }
    if (smoothing_sigma < 0.0 || !std::isfinite(smoothing_sigma)) {
        throw ValidationError("smoothing_sigma must be non-negative");
    }
    if (eigen_rank_high < 0 || eigen_rank_low < 0) {
        throw ValidationError("eigenspace ranks must be positive (or 0 for L-1)");
    }
    if (outer_iterations <= 0) {
        throw ValidationError("outer_iterations must be positive");
    }
    cs.validate();
}

std::vector<PilotMethod> ReconConfig::effective_pilot_methods() const {
    if (!pilot_methods.empty()) {
        return pilot_methods;
    }
    std::vector<PilotMethod> methods;
    // FBP leads the ensemble; CS inherits the configured sparsity weight.
    methods.push_back(PilotMethod::make(PilotKind::Fbp));
    methods.push_back(PilotMethod::make(PilotKind::Sirt));
    methods.push_back(PilotMethod::make(PilotKind::Sart));
    PilotMethod cs_pilot = PilotMethod::make(PilotKind::Cs);
    cs_pilot.cs = cs;
    cs_pilot.cs.lambda1 = lambda1;
    methods.push_back(cs_pilot);
    return methods;
}

std::string Diagnostics::format_table() const {
    std::ostringstream out;
    out << "iteration\tdata\tsparsity\tprior\ttotal\n";
    char buf[160];
    for (const auto& row : outer) {
        std::snprintf(buf, sizeof buf, "%d\t%.10e\t%.10e\t%.10e\t%.10e\n", row.iteration,
                      row.data_term, row.sparsity_term, row.prior_term, row.total);
        out << buf;
    }
    return out.str();
}

PipelineResult weighted_prior_reconstruct(const Sinogram& test_sino,
                                          const TemplateSet& templates,
                                          const ReconConfig& cfg) {
    cfg.validate();
    check_consistency(test_sino, templates);
    const auto methods = cfg.effective_pilot_methods();
    if (methods.size() < 2) {
        throw ValidationError("weighted mode needs at least 2 pilot methods");
    }
    const auto template_sinos = simulate_template_sinograms(templates, test_sino.geometry);
    const int rank_low =
        cfg.eigen_rank_low == 0 ? templates.count() - 1 : cfg.eigen_rank_low;
    const PilotSet pilots =
        build_pilot_set(test_sino, template_sinos, methods, rank_low);
    WeightMap weights = compute_weight_map(pilots, cfg.k, cfg.smoothing_sigma);
    return alternate_minimize(test_sino, templates, cfg, std::move(weights));
}

ImageGrid plain_prior_reconstruct(const Sinogram& test_sino, const TemplateSet& templates,
                                  const ReconConfig& cfg) {
    cfg.validate();
    check_consistency(test_sino, templates);
    WeightMap ones =
        WeightMap::uniform(test_sino.geometry.image_width, test_sino.geometry.image_height);
    return alternate_minimize(test_sino, templates, cfg, std::move(ones)).image;
}

ImageGrid reconstruct(const std::string& method, const Sinogram& sino,
                      const TemplateSet* templates, const ReconConfig& cfg) {
    cfg.validate();
    sino.validate();
    const auto algebraic = [&](AlgebraicMethod m) {
        AlgebraicOptions opts;
        opts.method = m;
        return algebraic_reconstruct(sino, opts);
    };
    if (method == "fdk" || method == "fbp") {
        return fbp_reconstruct(sino);
    }
    if (method == "art") return algebraic(AlgebraicMethod::Art);
    if (method == "sart") return algebraic(AlgebraicMethod::Sart);
    if (method == "sirt") return algebraic(AlgebraicMethod::Sirt);
    if (method == "cs") {
        SparsifyingTransform dct(TransformKind::Dct2, sino.geometry.image_width,
                                 sino.geometry.image_height);
        CsOptions opts = cfg.cs;
        opts.lambda1 = cfg.lambda1;
        return cs_reconstruct(sino, dct, opts).image;
    }
    if (method == "prior" || method == "weighted-prior") {
        if (!templates) {
            throw UsageError("method '" + method + "' requires templates");
        }
        if (method == "prior") {
            return plain_prior_reconstruct(sino, *templates, cfg);
        }
        return weighted_prior_reconstruct(sino, *templates, cfg).image;
    }
    throw UsageError("unknown reconstruction method '" + method + "'");
}

} // namespace tomoprior
