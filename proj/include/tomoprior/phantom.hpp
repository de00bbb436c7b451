#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tomoprior/eigenspace.hpp"
#include "tomoprior/grid.hpp"

namespace tomoprior {

/// Analytic primitive added to the raster with antialiased coverage.
/// Disk: center, radius. Ellipse: center, semi-axes, rotation (degrees).
/// Rect: corner, extent. `delta` is the attenuation added inside.
struct Shape {
    enum class Kind { Disk, Ellipse, Rect };
    Kind kind = Kind::Disk;
    double a = 0.0; // cx | cx | x0
    double b = 0.0; // cy | cy | y0
    double c = 0.0; // r  | ax | w
    double d = 0.0; // -  | ay | h
    double angle_deg = 0.0;
    double delta = 0.0;

    bool operator==(const Shape&) const = default;

    static Shape disk(double cx, double cy, double r, double delta);
    static Shape ellipse(double cx, double cy, double ax, double ay, double angle_deg,
                         double delta);
    static Shape rect(double x0, double y0, double w, double h, double delta);
};

/// A synthetic longitudinal study: one base specimen, L template variants
/// (base + per-template defects + noise) and a test variant. Ground-truth
/// change locations are the symmetric difference between the test defects
/// and the union of template defects.
struct LongitudinalSpec {
    int size = 128;
    std::vector<Shape> base;
    std::vector<std::vector<Shape>> template_defects;
    std::vector<Shape> test_defects;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LongitudinalDataset {
    TemplateSet templates;
    ImageGrid test;
    std::vector<RegionOfInterest> new_regions;
};

LongitudinalDataset generate_longitudinal_dataset(const LongitudinalSpec& spec);

/// Built-in benchmark specimens. "potato": a body scanned repeatedly while
/// holes accumulate; the test adds one more hole. "okra": every template
/// shares two deformities that the test lacks.
LongitudinalSpec potato_spec(std::uint64_t seed);
LongitudinalSpec okra_spec(std::uint64_t seed);

LongitudinalSpec load_phantom_spec(const std::filesystem::path& path);

/// Writes template_XX.tpr, test.tpr and a key=value manifest listing the
/// new regions.
void write_dataset(const LongitudinalDataset& dataset, const LongitudinalSpec& spec,
                   const std::filesystem::path& dir);

} // namespace tomoprior
