#include "tomoprior/bench.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tomoprior/errors.hpp"
#include "tomoprior/metrics.hpp"
#include "tomoprior/pipeline.hpp"
#include "tomoprior/projector.hpp"

namespace tomoprior {

namespace {

double mean_roi_ssim(const ImageGrid& recon, const ImageGrid& truth,
                     const std::vector<RegionOfInterest>& rois) {
    if (rois.empty()) {
        return ssim(recon, truth);
    }
    double total = 0.0;
    for (const auto& roi : rois) {
        total += ssim(recon, truth, roi);
    }
    return total / static_cast<double>(rois.size());
}

} // namespace

BenchResult run_bench(const LongitudinalSpec& spec, const std::string& dataset_name,
                      const ReconConfig& recon_cfg, const ExperimentConfig& experiment,
                      const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }

    LongitudinalDataset dataset = generate_longitudinal_dataset(spec);
    write_dataset(dataset, spec, out_dir / "phantom");

    const ScanGeometry geom =
        ScanGeometry::uniform(spec.size, spec.size, experiment.views);
    const Sinogram test_sino = forward_project(dataset.test, geom);
    save_sinogram(test_sino, out_dir / "test_sino.tpr", out_dir / "test_sino.geom");

    BenchResult result;
    result.new_regions = dataset.new_regions;

    const std::vector<std::string> methods = {"fdk", "cs", "prior", "weighted-prior"};
    for (const auto& method : methods) {
        const auto start = std::chrono::steady_clock::now();
        ImageGrid image = ImageGrid::zeros(spec.size, spec.size);
        if (method == "weighted-prior") {
            PipelineResult full =
                weighted_prior_reconstruct(test_sino, dataset.templates, recon_cfg);
            image = std::move(full.image);
            save_raster(full.weights.values, out_dir / "weights.tpr");
            std::ofstream diag(out_dir / "diagnostics.txt", std::ios::trunc);
            diag << full.diagnostics.format_table();
        } else {
            image = reconstruct(method, test_sino, &dataset.templates, recon_cfg);
        }
        const auto stop = std::chrono::steady_clock::now();

        BenchRow row;
        row.dataset = dataset_name;
        row.method = method;
        row.ssim_global = ssim(image, dataset.test);
        row.ssim_roi = mean_roi_ssim(image, dataset.test, dataset.new_regions);
        row.rmse_global = rmse(image, dataset.test);
        row.seconds = std::chrono::duration<double>(stop - start).count();
        result.rows.push_back(row);

        save_raster(image, out_dir / (dataset_name + "_" + method + ".tpr"));
    }

    std::ofstream report(out_dir / "report.tsv", std::ios::trunc);
    if (!report) {
        throw IoError("cannot write report in " + out_dir.string());
    }
    report << format_report(result);
    return result;
}

std::string format_report(const BenchResult& result) {
    std::ostringstream out;
    out << "dataset\tmethod\tssim_global\tssim_roi\trmse_global\tseconds\n";
    char buf[256];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof buf, "%s\t%s\t%.6f\t%.6f\t%.6f\t%.3f\n",
                      row.dataset.c_str(), row.method.c_str(), row.ssim_global, row.ssim_roi,
                      row.rmse_global, row.seconds);
        out << buf;
    }
    return out.str();
}

} // namespace tomoprior
