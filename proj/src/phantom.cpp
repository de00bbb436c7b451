#include "tomoprior/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "tomoprior/errors.hpp"
#include "tomoprior/keyvalue.hpp"

namespace tomoprior {

namespace {

constexpr int kSubSamples = 4; // 4x4 antialiasing grid per pixel

struct Bounds {
    double x0, y0, x1, y1;
};

Bounds shape_bounds(const Shape& s) {
    switch (s.kind) {
        case Shape::Kind::Disk:
            return {s.a - s.c, s.b - s.c, s.a + s.c, s.b + s.c};
        case Shape::Kind::Ellipse: {
            // axis-aligned bounds of the rotated ellipse
            const double t = s.angle_deg * std::numbers::pi / 180.0;
            const double ct = std::cos(t), st = std::sin(t);
            const double ex = std::hypot(s.c * ct, s.d * st);
            const double ey = std::hypot(s.c * st, s.d * ct);
            return {s.a - ex, s.b - ey, s.a + ex, s.b + ey};
        }
        case Shape::Kind::Rect:
            return {s.a, s.b, s.a + s.c, s.b + s.d};
    }
    throw ValidationError("unknown shape kind");
}

bool inside(const Shape& s, double x, double y) {
    switch (s.kind) {
        case Shape::Kind::Disk: {
            const double dx = x - s.a, dy = y - s.b;
            return dx * dx + dy * dy <= s.c * s.c;
        }
        case Shape::Kind::Ellipse: {
            const double t = s.angle_deg * std::numbers::pi / 180.0;
            const double ct = std::cos(t), st = std::sin(t);
            const double dx = x - s.a, dy = y - s.b;
            const double u = (dx * ct + dy * st) / s.c;
            const double v = (-dx * st + dy * ct) / s.d;
            return u * u + v * v <= 1.0;
        }
        case Shape::Kind::Rect:
            return x >= s.a && x < s.a + s.c && y >= s.b && y < s.b + s.d;
    }
    return false;
}

void rasterize(std::vector<double>& pixels, int size, const Shape& shape) {
    const Bounds bb = shape_bounds(shape);
    const int x_begin = std::max(0, static_cast<int>(std::floor(bb.x0)));
    const int y_begin = std::max(0, static_cast<int>(std::floor(bb.y0)));
    const int x_end = std::min(size, static_cast<int>(std::ceil(bb.x1)) + 1);
    const int y_end = std::min(size, static_cast<int>(std::ceil(bb.y1)) + 1);
    for (int y = y_begin; y < y_end; ++y) {
        for (int x = x_begin; x < x_end; ++x) {
            int hits = 0;
            for (int sy = 0; sy < kSubSamples; ++sy) {
                for (int sx = 0; sx < kSubSamples; ++sx) {
                    const double px = x + (sx + 0.5) / kSubSamples;
                    const double py = y + (sy + 0.5) / kSubSamples;
                    if (inside(shape, px, py)) ++hits;
                }
            }
            if (hits > 0) {
                pixels[static_cast<std::size_t>(y) * size + x] +=
                    shape.delta * hits / (kSubSamples * kSubSamples);
            }
        }
    }
}

ImageGrid render(int size, const std::vector<Shape>& base,
                 const std::vector<Shape>& defects, double noise_sigma,
                 std::uint64_t stream_seed) {
    std::vector<double> pixels(static_cast<std::size_t>(size) * size, 0.0);
    for (const auto& s : base) rasterize(pixels, size, s);
    for (const auto& s : defects) rasterize(pixels, size, s);
    if (noise_sigma > 0.0) {
        // Box-Muller on a seeded stream; two pixels per draw pair.
        std::mt19937_64 rng(stream_seed);
        const auto uniform = [&rng]() {
            return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        };
        for (std::size_t i = 0; i + 1 < pixels.size(); i += 2) {
            const double u1 = uniform(), u2 = uniform();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            pixels[i] += noise_sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
            pixels[i + 1] += noise_sigma * radius * std::sin(2.0 * std::numbers::pi * u2);
        }
        if (pixels.size() % 2 == 1) {
            const double u1 = uniform(), u2 = uniform();
            pixels.back() += noise_sigma * std::sqrt(-2.0 * std::log(u1)) *
                             std::cos(2.0 * std::numbers::pi * u2);
        }
    }
    return ImageGrid(size, size, std::move(pixels));
}

RegionOfInterest bounding_roi(const Shape& shape, int size) {
    const Bounds bb = shape_bounds(shape);
    const int x0 = std::clamp(static_cast<int>(std::floor(bb.x0)) - 1, 0, size - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor(bb.y0)) - 1, 0, size - 1);
    const int x1 = std::clamp(static_cast<int>(std::ceil(bb.x1)) + 1, 0, size - 1);
    const int y1 = std::clamp(static_cast<int>(std::ceil(bb.y1)) + 1, 0, size - 1);
    return RegionOfInterest{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
}

Shape parse_shape(const KeyValue& kv) {
    std::istringstream in(kv.value);
    std::string kind;
    in >> kind;
    Shape s;
    bool ok = false;
    if (kind == "disk") {
        s.kind = Shape::Kind::Disk;
        ok = static_cast<bool>(in >> s.a >> s.b >> s.c >> s.delta);
    } else if (kind == "ellipse") {
        s.kind = Shape::Kind::Ellipse;
        ok = static_cast<bool>(in >> s.a >> s.b >> s.c >> s.d >> s.angle_deg >> s.delta);
    } else if (kind == "rect") {
        s.kind = Shape::Kind::Rect;
        ok = static_cast<bool>(in >> s.a >> s.b >> s.c >> s.d >> s.delta);
    } else {
        throw ConfigError("line " + std::to_string(kv.line) + ": unknown shape '" + kind +
                          "'");
    }
    std::string rest;
    if (!ok || (in >> rest)) {
        throw ConfigError("line " + std::to_string(kv.line) + ": malformed shape '" +
                          kv.value + "'");
    }
    return s;
}

} // namespace

Shape Shape::disk(double cx, double cy, double r, double delta) {
    return Shape{Kind::Disk, cx, cy, r, 0.0, 0.0, delta};
}

Shape Shape::ellipse(double cx, double cy, double ax, double ay, double angle_deg,
                     double delta) {
    return Shape{Kind::Ellipse, cx, cy, ax, ay, angle_deg, delta};
}

Shape Shape::rect(double x0, double y0, double w, double h, double delta) {
    return Shape{Kind::Rect, x0, y0, w, h, delta};
}

void LongitudinalSpec::validate() const {
    if (size < 8) {
        throw ValidationError("phantom size must be at least 8");
    }
    if (template_defects.empty()) {
        throw ValidationError("need at least one template");
    }
    if (noise_sigma < 0.0 || !std::isfinite(noise_sigma)) {
        throw ValidationError("noise_sigma must be non-negative");
    }
    const auto check_shapes = [this](const std::vector<Shape>& shapes) {
        for (const auto& s : shapes) {
            const Bounds bb = shape_bounds(s);
            if (bb.x0 < 0.0 || bb.y0 < 0.0 || bb.x1 > size || bb.y1 > size) {
                throw ValidationError("shape extends outside the grid");
            }
            if (s.kind != Shape::Kind::Disk ? (s.c <= 0.0 || s.d <= 0.0) : s.c <= 0.0) {
                throw ValidationError("shape extents must be positive");
            }
        }
    };
    check_shapes(base);
    check_shapes(test_defects);
    for (const auto& defects : template_defects) check_shapes(defects);
}

LongitudinalDataset generate_longitudinal_dataset(const LongitudinalSpec& spec) {
    spec.validate();
    const int L = static_cast<int>(spec.template_defects.size());

    TemplateSet templates;
    templates.templates.reserve(L);
    for (int i = 0; i < L; ++i) {
        templates.templates.push_back(render(spec.size, spec.base, spec.template_defects[i],
                                             spec.noise_sigma,
                                             stream_seed(spec.seed, i)));
    }
    ImageGrid test = render(spec.size, spec.base, spec.test_defects, spec.noise_sigma,
                            stream_seed(spec.seed, L));

    // Ground truth: defects in the test but in no template, plus defects in
    // some template but not in the test.
    std::vector<Shape> union_template;
    for (const auto& defects : spec.template_defects) {
        for (const auto& s : defects) {
            if (std::find(union_template.begin(), union_template.end(), s) ==
                union_template.end()) {
                union_template.push_back(s);
            }
        }
    }
    std::vector<RegionOfInterest> new_regions;
    const auto add_region = [&](const Shape& s) {
        const RegionOfInterest roi = bounding_roi(s, spec.size);
        if (std::find(new_regions.begin(), new_regions.end(), roi) == new_regions.end()) {
            new_regions.push_back(roi);
        }
    };
    for (const auto& s : spec.test_defects) {
        if (std::find(union_template.begin(), union_template.end(), s) ==
            union_template.end()) {
            add_region(s);
        }
    }
    for (const auto& s : union_template) {
        if (std::find(spec.test_defects.begin(), spec.test_defects.end(), s) ==
            spec.test_defects.end()) {
            add_region(s);
        }
    }
    return LongitudinalDataset{std::move(templates), std::move(test),
                               std::move(new_regions)};
}

LongitudinalSpec potato_spec(std::uint64_t seed) {
    LongitudinalSpec spec;
    spec.size = 128;
    spec.seed = seed;
    spec.noise_sigma = 0.01;
    spec.base = {
        Shape::ellipse(64, 64, 46, 38, 20, 1.0),
        Shape::ellipse(64, 64, 34, 27, 20, 0.15),
        Shape::ellipse(52, 70, 9, 6, -30, 0.12),
        Shape::disk(74, 52, 5.0, 0.10),
    };
    const Shape hole1 = Shape::disk(45, 55, 5.5, -0.55);
    const Shape hole2 = Shape::disk(75, 45, 5.0, -0.55);
    const Shape hole3 = Shape::disk(60, 80, 5.5, -0.55);
    const Shape hole4 = Shape::disk(82, 72, 6.0, -0.55);
    spec.template_defects = {{}, {hole1}, {hole1, hole2}, {hole1, hole2, hole3}};
    spec.test_defects = {hole1, hole2, hole3, hole4};
    return spec;
}

LongitudinalSpec okra_spec(std::uint64_t seed) {
    LongitudinalSpec spec;
    spec.size = 128;
    spec.seed = seed;
    spec.noise_sigma = 0.01;
    spec.base = {
        Shape::ellipse(64, 64, 32, 50, 10, 0.9),
        Shape::ellipse(64, 64, 24, 42, 10, 0.18),
        Shape::disk(60, 40, 4.5, 0.28),
        Shape::disk(66, 58, 4.5, 0.28),
        Shape::disk(62, 76, 4.5, 0.28),
        Shape::disk(68, 94, 4.5, 0.28),
    };
    // Deformities every template shares; the test lacks them.
    const Shape deform1 = Shape::disk(47, 44, 6.0, -0.45);
    const Shape deform2 = Shape::disk(80, 86, 6.5, -0.45);
    spec.template_defects = {{deform1, deform2},
                             {deform1, deform2},
                             {deform1, deform2},
                             {deform1, deform2}};
    spec.test_defects = {};
    return spec;
}

LongitudinalSpec load_phantom_spec(const std::filesystem::path& path) {
    LongitudinalSpec spec;
    int templates = 0;
    std::vector<KeyValue> shape_lines;
    for (const auto& kv : parse_key_value_file(path)) {
        if (kv.key == "size") {
            spec.size = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "templates") {
            templates = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "noise_sigma") {
            spec.noise_sigma = parse_real(kv);
        } else if (kv.key == "seed") {
            spec.seed = parse_unsigned(kv);
        } else if (kv.key == "base" || kv.key == "test" || kv.key.starts_with("template")) {
            shape_lines.push_back(kv);
        } else {
            throw ConfigError(path.string() + ":" + std::to_string(kv.line) +
                              ": unknown phantom key '" + kv.key + "'");
        }
    }
    if (templates < 1) {
        throw ConfigError(path.string() + ": missing 'templates' count");
    }
    spec.template_defects.resize(templates);
    for (const auto& kv : shape_lines) {
        if (kv.key == "base") {
            spec.base.push_back(parse_shape(kv));
        } else if (kv.key == "test") {
            spec.test_defects.push_back(parse_shape(kv));
        } else {
            const std::string index_str = kv.key.substr(std::string("template").size());
            char* end = nullptr;
            const long index = std::strtol(index_str.c_str(), &end, 10);
            if (end == index_str.c_str() || *end != '\0' || index < 1 || index > templates) {
                throw ConfigError(path.string() + ":" + std::to_string(kv.line) +
                                  ": bad template index in key '" + kv.key + "'");
            }
            spec.template_defects[index - 1].push_back(parse_shape(kv));
        }
    }
    spec.validate();
    return spec;
}

void write_dataset(const LongitudinalDataset& dataset, const LongitudinalSpec& spec,
                   const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    char name[32];
    for (std::size_t i = 0; i < dataset.templates.templates.size(); ++i) {
        std::snprintf(name, sizeof name, "template_%02zu.tpr", i);
        save_raster(dataset.templates.templates[i], dir / name);
    }
    save_raster(dataset.test, dir / "test.tpr");
    std::ofstream manifest(dir / "manifest.txt", std::ios::trunc);
    if (!manifest) {
        throw IoError("cannot write manifest in " + dir.string());
    }
    manifest << "size = " << spec.size << "\n";
    manifest << "templates = " << dataset.templates.count() << "\n";
    manifest << "noise_sigma = " << spec.noise_sigma << "\n";
    manifest << "seed = " << spec.seed << "\n";
    for (const auto& roi : dataset.new_regions) {
        manifest << "new_region = " << roi.x0 << " " << roi.y0 << " " << roi.width << " "
                 << roi.height << "\n";
    }
}

} // namespace tomoprior
