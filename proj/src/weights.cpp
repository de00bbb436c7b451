#include "tomoprior/weights.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tomoprior/errors.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

namespace {

ImageGrid run_pilot(const PilotMethod& method, const Sinogram& sino) {
    switch (method.kind) {
        case PilotKind::Fbp:
            return fbp_reconstruct(sino, method.filter);
        case PilotKind::Art:
        case PilotKind::Sart:
        case PilotKind::Sirt:
            return algebraic_reconstruct(sino, method.algebraic);
        case PilotKind::Cs: {
            SparsifyingTransform dct(TransformKind::Dct2, sino.geometry.image_width,
                                     sino.geometry.image_height);
            return cs_reconstruct(sino, dct, method.cs).image;
        }
    }
    throw ValidationError("unknown pilot kind");
}

ImageGrid pilot_or_rethrow(const PilotMethod& method, const Sinogram& sino) {
    const std::string tag = "pilot method " + pilot_kind_name(method.kind) + ": ";
    try {
        return run_pilot(method, sino);
    } catch (const DegenerateSpanError& e) {
        throw DegenerateSpanError(tag + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(tag + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(tag + e.what());
    } catch (const Error& e) {
        throw Error(tag + e.what());
    }
}

// Nearest-rank 99th percentile of |values|; deterministic scale for
// cross-method comparability.
double normalization_scale(const ImageGrid& image) {
    std::vector<double> magnitudes(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        magnitudes[i] = std::abs(image.data()[i]);
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(magnitudes.size())));
    const double p99 = magnitudes[std::min(rank, magnitudes.size()) - 1];
    return p99 > 0.0 ? p99 : 1.0;
}

std::vector<double> gaussian_blur(const std::vector<double>& values, int w, int h,
                                  double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double norm = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
        norm += kernel[k + radius];
    }
    for (auto& g : kernel) g /= norm;

    std::vector<double> tmp(values.size()), out(values.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, wsum = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int xx = x + k;
                if (xx < 0 || xx >= w) continue;
                acc += kernel[k + radius] * values[static_cast<std::size_t>(y) * w + xx];
                wsum += kernel[k + radius];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = acc / wsum;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0, wsum = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int yy = y + k;
                if (yy < 0 || yy >= h) continue;
                acc += kernel[k + radius] * tmp[static_cast<std::size_t>(yy) * w + x];
                wsum += kernel[k + radius];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc / wsum;
        }
    }
    return out;
}

} // namespace

std::string pilot_kind_name(PilotKind kind) {
    switch (kind) {
        case PilotKind::Fbp: return "fbp";
        case PilotKind::Art: return "art";
        case PilotKind::Sart: return "sart";
        case PilotKind::Sirt: return "sirt";
        case PilotKind::Cs: return "cs";
    }
    throw ValidationError("unknown pilot kind");
}

PilotKind pilot_kind_from_name(const std::string& name) {
    if (name == "fbp" || name == "fdk") return PilotKind::Fbp;
    if (name == "art") return PilotKind::Art;
    if (name == "sart") return PilotKind::Sart;
    if (name == "sirt") return PilotKind::Sirt;
    if (name == "cs") return PilotKind::Cs;
    throw ValidationError("unknown pilot method '" + name + "'");
}

PilotMethod PilotMethod::make(PilotKind kind) {
    PilotMethod m;
    m.kind = kind;
    switch (kind) {
        case PilotKind::Art: m.algebraic.method = AlgebraicMethod::Art; break;
        case PilotKind::Sart: m.algebraic.method = AlgebraicMethod::Sart; break;
        case PilotKind::Sirt: m.algebraic.method = AlgebraicMethod::Sirt; break;
        default: break;
    }
    return m;
}

void PilotSet::validate() const {
    const int m = method_count();
    if (m < 2) {
        throw ValidationError("pilot ensemble needs at least 2 methods");
    }
    if (static_cast<int>(test_pilots.size()) != m ||
        static_cast<int>(template_pilots.size()) != m ||
        static_cast<int>(eigenspaces.size()) != m ||
        static_cast<int>(projections.size()) != m) {
        throw ValidationError("pilot set arrays disagree with method count");
    }
    const ImageGrid& ref = test_pilots.front();
    for (int j = 0; j < m; ++j) {
        if (!test_pilots[j].same_shape(ref) || !projections[j].same_shape(ref)) {
            throw ValidationError("pilot grids must share dimensions");
        }
        if (template_pilots[j].size() != template_pilots.front().size()) {
            throw ValidationError("per-method template pilot counts differ");
        }
        for (const auto& y : template_pilots[j]) {
            if (!y.same_shape(ref)) {
                throw ValidationError("pilot grids must share dimensions");
            }
        }
    }
}

std::vector<Sinogram> simulate_template_sinograms(const TemplateSet& set,
                                                  const ScanGeometry& geom) {
    set.validate();
    std::vector<Sinogram> sinos;
    sinos.reserve(set.templates.size());
    for (const auto& q : set.templates) {
        sinos.push_back(forward_project(q, geom));
    }
    return sinos;
}

PilotSet build_pilot_set(const Sinogram& test_sino,
                         const std::vector<Sinogram>& template_sinos,
                         const std::vector<PilotMethod>& methods, int rank) {
    test_sino.validate();
    if (methods.size() < 2) {
        throw ValidationError("pilot ensemble needs at least 2 methods, got " +
                              std::to_string(methods.size()));
    }
    std::set<PilotKind> kinds;
    for (const auto& m : methods) {
        if (!kinds.insert(m.kind).second) {
            throw ValidationError("duplicate pilot method '" + pilot_kind_name(m.kind) + "'");
        }
    }
    if (template_sinos.size() < 2) {
        throw ValidationError("need at least 2 template sinograms");
    }
    for (const auto& s : template_sinos) {
        if (!(s.geometry == test_sino.geometry)) {
            throw GeometryError("template sinogram geometry differs from test geometry");
        }
    }
    const int L = static_cast<int>(template_sinos.size());
    const int effective_rank = rank == 0 ? L - 1 : rank;

    PilotSet set;
    set.methods = methods;
    for (const auto& method : methods) {
        set.test_pilots.push_back(pilot_or_rethrow(method, test_sino));
        std::vector<ImageGrid> templates;
        templates.reserve(template_sinos.size());
        for (const auto& sino : template_sinos) {
            templates.push_back(pilot_or_rethrow(method, sino));
        }
        TemplateSet pilot_templates{std::move(templates)};
        set.eigenspaces.push_back(build_eigenspace(pilot_templates, effective_rank));
        set.template_pilots.push_back(std::move(pilot_templates.templates));
        auto [alpha, projected] =
            project_onto_eigenspace(set.eigenspaces.back(), set.test_pilots.back());
        set.projections.push_back(std::move(projected));
    }
    set.validate();
    return set;
}

std::vector<ImageGrid> per_method_difference_maps(const PilotSet& pilots) {
    pilots.validate();
    std::vector<ImageGrid> maps;
    maps.reserve(pilots.method_count());
    for (int j = 0; j < pilots.method_count(); ++j) {
        const double scale = 1.0 / normalization_scale(pilots.test_pilots[j]);
        const ImageGrid& x = pilots.test_pilots[j];
        const ImageGrid& p = pilots.projections[j];
        std::vector<double> diff(x.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = std::abs(x.data()[i] - p.data()[i]) * scale;
        }
        maps.emplace_back(x.width(), x.height(), std::move(diff));
    }
    return maps;
}

WeightMap compute_weight_map(const PilotSet& pilots, double k, double smoothing_sigma) {
    pilots.validate();
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw ValidationError("weight sensitivity k must be positive");
    }
    if (smoothing_sigma < 0.0 || !std::isfinite(smoothing_sigma)) {
        throw ValidationError("smoothing sigma must be non-negative");
    }
    const auto maps = per_method_difference_maps(pilots);
    const int w = maps.front().width();
    const int h = maps.front().height();
    std::vector<double> d = maps.front().data();
    for (std::size_t j = 1; j < maps.size(); ++j) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = std::min(d[i], maps[j].data()[i]);
        }
    }
    if (smoothing_sigma > 0.0) {
        d = gaussian_blur(d, w, h, smoothing_sigma);
    }
    for (auto& v : d) {
        v = 1.0 / (1.0 + k * v);
    }
    WeightMap map{ImageGrid(w, h, std::move(d))};
    map.validate();
    return map;
}

void WeightMap::validate() const {
    for (double v : values.data()) {
        if (!(v > 0.0) || v > 1.0) {
            throw ValidationError("weight values must lie in (0, 1]");
        }
    }
}

} // namespace tomoprior
