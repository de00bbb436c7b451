#include "tomoprior/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tomoprior/errors.hpp"

namespace tomoprior {

namespace {

void check_shape(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b)) {
        throw ValidationError("image dimensions differ: " + std::to_string(a.width()) + "x" +
                              std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                              "x" + std::to_string(b.height()));
    }
}

std::vector<float> to_binary32(const ImageGrid& image) {
    std::vector<float> payload(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const auto v = static_cast<float>(image.data()[i]);
        if (!std::isfinite(v)) {
            throw ValidationError("value at index " + std::to_string(i) +
                                  " does not fit binary32");
        }
        payload[i] = v;
    }
    return payload;
}

} // namespace

ImageGrid::ImageGrid(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width_ <= 0 || height_ <= 0) {
        throw ValidationError("grid dimensions must be positive");
    }
    const auto expected = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    if (data_.size() != expected) {
        throw LengthError("grid payload has " + std::to_string(data_.size()) +
                          " values, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw ValidationError("non-finite value at index " + std::to_string(i));
        }
    }
}

ImageGrid ImageGrid::zeros(int width, int height) {
    return constant(width, height, 0.0);
}

ImageGrid ImageGrid::constant(int width, int height, double value) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("grid dimensions must be positive");
    }
    return ImageGrid(width, height,
                     std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

ImageGrid operator+(const ImageGrid& a, const ImageGrid& b) {
    check_shape(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] + b.data()[i];
    return ImageGrid(a.width(), a.height(), std::move(out));
}

ImageGrid operator-(const ImageGrid& a, const ImageGrid& b) {
    check_shape(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] - b.data()[i];
    return ImageGrid(a.width(), a.height(), std::move(out));
}

ImageGrid operator*(double s, const ImageGrid& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.data()[i];
    return ImageGrid(a.width(), a.height(), std::move(out));
}

// TPRASTER v1: one ASCII header line "TPRASTER 1 <width> <height>\n",
// then width*height little-endian binary32 values, row-major, no trailing
// bytes.
ImageGrid load_raster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw FormatError(path.string() + ": missing TPRASTER header");
    }
    std::istringstream hs(header);
    std::string magic;
    long version = 0, width = 0, height = 0;
    std::string rest;
    if (!(hs >> magic >> version >> width >> height) || (hs >> rest)) {
        throw FormatError(path.string() + ": malformed TPRASTER header '" + header + "'");
    }
    if (magic != "TPRASTER" || version != 1) {
        throw FormatError(path.string() + ": not a TPRASTER v1 file");
    }
    if (width <= 0 || height <= 0) {
        throw FormatError(path.string() + ": non-positive dimensions in header");
    }
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(float)) {
        throw LengthError(path.string() + ": truncated payload, expected " +
                          std::to_string(count) + " binary32 values");
    }
    if (in.get() != std::ifstream::traits_type::eof()) {
        throw LengthError(path.string() + ": trailing bytes after payload");
    }
    static_assert(std::endian::native == std::endian::little,
                  "TPRASTER I/O assumes a little-endian host");
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::isfinite(payload[i])) {
            throw ValidationError(path.string() + ": non-finite value at index " +
                                  std::to_string(i));
        }
        data[i] = static_cast<double>(payload[i]);
    }
    return ImageGrid(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

void save_raster(const ImageGrid& image, const std::filesystem::path& path) {
    const auto payload = to_binary32(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "TPRASTER 1 " << image.width() << " " << image.height() << "\n";
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

ImageGrid extract_roi(const ImageGrid& image, const RegionOfInterest& roi) {
    if (roi.x0 < 0 || roi.y0 < 0 || roi.width <= 0 || roi.height <= 0 ||
        roi.x0 + roi.width > image.width() || roi.y0 + roi.height > image.height()) {
        throw BoundsError("roi [" + std::to_string(roi.x0) + "," + std::to_string(roi.y0) + " " +
                          std::to_string(roi.width) + "x" + std::to_string(roi.height) +
                          "] outside " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " grid");
    }
    std::vector<double> out(static_cast<std::size_t>(roi.width) * roi.height);
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            out[static_cast<std::size_t>(y) * roi.width + x] = image.at(roi.x0 + x, roi.y0 + y);
        }
    }
    return ImageGrid(roi.width, roi.height, std::move(out));
}

std::uint64_t raster_checksum(const ImageGrid& image) {
    const auto payload = to_binary32(image);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(payload.data());
    for (std::size_t i = 0; i < payload.size() * sizeof(float); ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace tomoprior
