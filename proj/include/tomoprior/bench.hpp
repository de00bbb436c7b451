#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tomoprior/config.hpp"
#include "tomoprior/phantom.hpp"

namespace tomoprior {

struct BenchRow {
    std::string dataset;
    std::string method;
    double ssim_global = 0.0;
    double ssim_roi = 0.0;
    double rmse_global = 0.0;
    double seconds = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<RegionOfInterest> new_regions;
};

/// Runs {fdk, cs, prior, weighted-prior} on the phantom spec with a sparse
/// uniform geometry of experiment.views angles: generates the dataset,
/// projects the test, reconstructs with each method, and scores global and
/// new-region metrics against the ground-truth test image. Writes one
/// raster per method, the weight map, the phantom volumes, a diagnostics
/// table and report.tsv into out_dir.
BenchResult run_bench(const LongitudinalSpec& spec, const std::string& dataset_name,
                      const ReconConfig& recon, const ExperimentConfig& experiment,
                      const std::filesystem::path& out_dir);

/// The report body: a header line, then one tab-separated row per method
/// (dataset, method, ssim_global, ssim_roi, rmse_global, seconds).
std::string format_report(const BenchResult& result);

} // namespace tomoprior
