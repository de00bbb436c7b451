#include "tomoprior/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "tomoprior/errors.hpp"
#include "tomoprior/keyvalue.hpp"

namespace tomoprior {

void ScanGeometry::validate() const {
    if (image_width <= 0 || image_height <= 0) {
        throw GeometryError("image dimensions must be positive");
    }
    if (n_detectors <= 0) {
        throw GeometryError("n_detectors must be positive");
    }
    if (!(detector_spacing > 0.0) || !std::isfinite(detector_spacing)) {
        throw GeometryError("detector_spacing must be a positive real");
    }
    if (angles.empty()) {
        throw GeometryError("at least one projection angle required");
    }
    double prev = -1.0;
    for (double a : angles) {
        if (!std::isfinite(a) || a < 0.0 || a >= std::numbers::pi) {
            throw GeometryError("angles must lie in [0, pi)");
        }
        if (a <= prev) {
            throw GeometryError("angles must be strictly increasing");
        }
        prev = a;
    }
}

ScanGeometry ScanGeometry::uniform(int image_width, int image_height, int n_views,
                                   int n_detectors, double detector_spacing) {
    if (n_views <= 0) {
        throw GeometryError("n_views must be positive");
    }
    ScanGeometry geom;
    geom.image_width = image_width;
    geom.image_height = image_height;
    geom.detector_spacing = detector_spacing;
    if (n_detectors == 0) {
        geom.n_detectors =
            static_cast<int>(std::ceil(std::hypot(image_width, image_height) / detector_spacing));
    } else {
        geom.n_detectors = n_detectors;
    }
    geom.angles.resize(n_views);
    for (int i = 0; i < n_views; ++i) {
        geom.angles[i] = i * std::numbers::pi / n_views;
    }
    geom.validate();
    return geom;
}

void Sinogram::validate() const {
    geometry.validate();
    if (data.size() != geometry.n_rays()) {
        throw LengthError("sinogram has " + std::to_string(data.size()) + " samples, expected " +
                          std::to_string(geometry.n_rays()));
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw ValidationError("non-finite sinogram sample");
        }
    }
}

void save_geometry(const ScanGeometry& geom, const std::filesystem::path& path) {
    geom.validate();
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "image_width = " << geom.image_width << "\n";
    out << "image_height = " << geom.image_height << "\n";
    out << "n_detectors = " << geom.n_detectors << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", geom.detector_spacing);
    out << "detector_spacing = " << buf << "\n";
    for (double a : geom.angles) {
        std::snprintf(buf, sizeof buf, "%.17g", a);
        out << "angle = " << buf << "\n";
    }
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

ScanGeometry load_geometry(const std::filesystem::path& path) {
    ScanGeometry geom;
    geom.detector_spacing = 0.0;
    for (const auto& kv : parse_key_value_file(path)) {
        if (kv.key == "image_width") {
            geom.image_width = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "image_height") {
            geom.image_height = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "n_detectors") {
            geom.n_detectors = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "detector_spacing") {
            geom.detector_spacing = parse_real(kv);
        } else if (kv.key == "angle") {
            geom.angles.push_back(parse_real(kv));
        } else {
            throw ConfigError(path.string() + ":" + std::to_string(kv.line) +
                              ": unknown geometry key '" + kv.key + "'");
        }
    }
    geom.validate();
    return geom;
}

void save_sinogram(const Sinogram& sino, const std::filesystem::path& raster_path,
                   const std::filesystem::path& geometry_path) {
    sino.validate();
    ImageGrid raster(sino.geometry.n_detectors, sino.geometry.n_angles(), sino.data);
    save_raster(raster, raster_path);
    save_geometry(sino.geometry, geometry_path);
}

Sinogram load_sinogram(const std::filesystem::path& raster_path,
                       const std::filesystem::path& geometry_path) {
    const ImageGrid raster = load_raster(raster_path);
    ScanGeometry geom = load_geometry(geometry_path);
    if (raster.width() != geom.n_detectors || raster.height() != geom.n_angles()) {
        throw GeometryError(raster_path.string() + ": raster is " +
                            std::to_string(raster.width()) + "x" +
                            std::to_string(raster.height()) + " but geometry expects " +
                            std::to_string(geom.n_detectors) + "x" +
                            std::to_string(geom.n_angles()));
    }
    Sinogram sino{std::move(geom), raster.data()};
    sino.validate();
    return sino;
}

} // namespace tomoprior
