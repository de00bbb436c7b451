#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tomoprior {

struct RegionOfInterest {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    bool operator==(const RegionOfInterest&) const = default;
};

/// 2D scalar field on a regular raster. Row-major, immutable after
/// construction, all values finite. Stored as binary64 in memory and
/// binary32 on disk (TPRASTER format).
class ImageGrid {
public:
    ImageGrid(int width, int height, std::vector<double> data);

    static ImageGrid zeros(int width, int height);
    static ImageGrid constant(int width, int height, double value);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    double at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const ImageGrid& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool operator==(const ImageGrid&) const = default;

private:
    int width_;
    int height_;
    std::vector<double> data_;
};

ImageGrid operator+(const ImageGrid& a, const ImageGrid& b);
ImageGrid operator-(const ImageGrid& a, const ImageGrid& b);
ImageGrid operator*(double s, const ImageGrid& a);

ImageGrid load_raster(const std::filesystem::path& path);
void save_raster(const ImageGrid& image, const std::filesystem::path& path);

ImageGrid extract_roi(const ImageGrid& image, const RegionOfInterest& roi);

/// FNV-1a over the binary32 payload the grid serializes to; used for
/// eigenspace manifests.
std::uint64_t raster_checksum(const ImageGrid& image);

} // namespace tomoprior
