#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/grid.hpp"

using namespace tomoprior;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("tomoprior_grid_" + name);
}

} // namespace

TEST_CASE("raster round-trip preserves values exactly") {
    const ImageGrid grid(3, 2, {1, 2, 3, 4, 5, 6});
    const auto path = temp_file("roundtrip.tpr");
    save_raster(grid, path);
    const ImageGrid loaded = load_raster(path);
    CHECK(loaded == grid);
    fs::remove(path);
}

TEST_CASE("random binary32 grids round-trip bit-exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const ImageGrid grid = test_helpers::random_grid(17, 9, rng, 100.0);
        const auto path = temp_file("random.tpr");
        save_raster(grid, path);
        CHECK(load_raster(path) == grid);
        fs::remove(path);
    }
}

TEST_CASE("zero grid serializes to an all-zero payload") {
    const ImageGrid grid = ImageGrid::zeros(8, 8);
    const auto path = temp_file("zeros.tpr");
    save_raster(grid, path);
    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header == "TPRASTER 1 8 8");
    std::vector<char> payload(256 + 1);
    in.read(payload.data(), 257);
    CHECK(in.gcount() == 256);
    for (int i = 0; i < 256; ++i) CHECK(payload[i] == 0);
    fs::remove(path);
}

TEST_CASE("header/payload mismatches are rejected") {
    const auto path = temp_file("bad.tpr");

    SUBCASE("declared 4x4 but 8 values") {
        std::ofstream out(path, std::ios::binary);
        out << "TPRASTER 1 4 4\n";
        const float values[8] = {};
        out.write(reinterpret_cast<const char*>(values), sizeof values);
        out.close();
        CHECK_THROWS_AS(load_raster(path), LengthError);
    }
    SUBCASE("malformed header") {
        std::ofstream out(path, std::ios::binary);
        out << "TPRASTER one 4 4\n";
        out.close();
        CHECK_THROWS_AS(load_raster(path), FormatError);
    }
    SUBCASE("wrong magic") {
        std::ofstream out(path, std::ios::binary);
        out << "RASTER 1 1 1\n";
        const float v = 0.0f;
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
        out.close();
        CHECK_THROWS_AS(load_raster(path), FormatError);
    }
    SUBCASE("NaN payload") {
        std::ofstream out(path, std::ios::binary);
        out << "TPRASTER 1 2 1\n";
        const float values[2] = {1.0f, std::numeric_limits<float>::quiet_NaN()};
        out.write(reinterpret_cast<const char*>(values), sizeof values);
        out.close();
        CHECK_THROWS_AS(load_raster(path), ValidationError);
    }
    SUBCASE("trailing bytes") {
        std::ofstream out(path, std::ios::binary);
        out << "TPRASTER 1 1 1\n";
        const float values[2] = {1.0f, 2.0f};
        out.write(reinterpret_cast<const char*>(values), sizeof values);
        out.close();
        CHECK_THROWS_AS(load_raster(path), LengthError);
    }
    fs::remove(path);
}

TEST_CASE("save to an unwritable path raises an I/O error") {
    CHECK_THROWS_AS(save_raster(ImageGrid::zeros(2, 2), "/nonexistent-dir/out.tpr"),
                    IoError);
}

TEST_CASE("grid constructor enforces invariants") {
    CHECK_THROWS_AS(ImageGrid(2, 2, {1, 2, 3}), LengthError);
    CHECK_THROWS_AS(ImageGrid(2, 1, {1.0, std::nan("")}), ValidationError);
    CHECK_THROWS_AS(ImageGrid(0, 4, {}), ValidationError);
}

TEST_CASE("extract_roi") {
    const ImageGrid grid(2, 2, {7, 8, 9, 1});

    SUBCASE("full-image ROI is the identity") {
        CHECK(extract_roi(grid, {0, 0, 2, 2}) == grid);
    }
    SUBCASE("1x1 ROI picks the top-left value") {
        const ImageGrid cell = extract_roi(grid, {0, 0, 1, 1});
        CHECK(cell.width() == 1);
        CHECK(cell.at(0, 0) == 7.0);
    }
    SUBCASE("out-of-bounds ROI is rejected") {
        CHECK_THROWS_AS(extract_roi(grid, {1, 0, 2, 1}), BoundsError);
        CHECK_THROWS_AS(extract_roi(grid, {0, 0, 0, 1}), BoundsError);
    }
    SUBCASE("extraction is a projection") {
        std::mt19937 rng(3);
        const ImageGrid big = test_helpers::random_grid(12, 10, rng);
        const RegionOfInterest roi{2, 3, 5, 4};
        const ImageGrid once = extract_roi(big, roi);
        const ImageGrid twice = extract_roi(once, {0, 0, roi.width, roi.height});
        CHECK(once == twice);
    }
}

TEST_CASE("grid arithmetic checks shapes") {
    const ImageGrid a(2, 1, {1, 2});
    const ImageGrid b(1, 2, {1, 2});
    CHECK_THROWS_AS(a + b, ValidationError);
    const ImageGrid sum = a + a;
    CHECK(sum.at(1, 0) == 4.0);
}
