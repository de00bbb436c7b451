#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tomoprior/bench.hpp"
#include "tomoprior/config.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/metrics.hpp"
#include "tomoprior/phantom.hpp"
#include "tomoprior/pipeline.hpp"
#include "tomoprior/projector.hpp"
#include "tomoprior/weights.hpp"

namespace {

using namespace tomoprior;

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string method;
    int views = 0;     // 0 = keep config value
    long long seed = -1; // -1 = keep config value
};

ParsedConfig load_config(const CommonFlags& flags) {
    ParsedConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = parse_config(flags.config_path);
    }
    if (flags.views > 0) cfg.experiment.views = flags.views;
    if (flags.seed >= 0) cfg.recon.seed = static_cast<std::uint64_t>(flags.seed);
    return cfg;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

TemplateSet load_templates(const std::vector<std::string>& paths) {
    TemplateSet set;
    for (const auto& p : paths) {
        set.templates.push_back(load_raster(p));
    }
    set.validate();
    return set;
}

LongitudinalSpec resolve_spec(const std::string& name, const std::string& file,
                              std::uint64_t seed) {
    if (!file.empty()) {
        LongitudinalSpec spec = load_phantom_spec(file);
        if (seed != 0) spec.seed = seed;
        return spec;
    }
    if (name == "potato") return potato_spec(seed);
    if (name == "okra") return okra_spec(seed);
    throw UsageError("unknown phantom spec '" + name + "' (built-ins: potato, okra)");
}

std::optional<RegionOfInterest> parse_roi_flag(const std::string& text) {
    if (text.empty()) return std::nullopt;
    RegionOfInterest roi;
    char extra = '\0';
    if (std::sscanf(text.c_str(), "%d,%d,%d,%d%c", &roi.x0, &roi.y0, &roi.width,
                    &roi.height, &extra) != 4) {
        throw UsageError("--roi expects x0,y0,w,h");
    }
    return roi;
}

struct MetricArgs {
    std::string a;
    std::string b;
    std::string roi;
    std::string name = "ssim";
};

int dispatch(CLI::App& app, const CommonFlags& flags, const std::string& spec_name,
             const std::string& spec_file, const std::string& image_path,
             const std::string& sino_path, const std::string& geom_path,
             const std::string& templates_csv, int rank, const MetricArgs& metric_args,
             const std::string& dump_diffs) {
    const ParsedConfig cfg = load_config(flags);

    if (app.got_subcommand("phantom")) {
        const auto spec = resolve_spec(spec_name, spec_file, cfg.recon.seed);
        const auto dataset = generate_longitudinal_dataset(spec);
        write_dataset(dataset, spec, flags.out);
        std::cout << "wrote " << dataset.templates.count() << " templates + test to "
                  << flags.out << "\n";
        return 0;
    }

    if (app.got_subcommand("project")) {
        const ImageGrid image = load_raster(image_path);
        const ScanGeometry geom =
            ScanGeometry::uniform(image.width(), image.height(), cfg.experiment.views);
        const Sinogram sino = forward_project(image, geom);
        const std::filesystem::path out = flags.out.empty() ? "sinogram.tpr" : flags.out;
        std::filesystem::path geom_out = geom_path;
        if (geom_out.empty()) {
            geom_out = out;
            geom_out.replace_extension(".geom");
        }
        save_sinogram(sino, out, geom_out);
        std::cout << "wrote " << out.string() << " (" << geom.n_angles() << " angles x "
                  << geom.n_detectors << " bins) and " << geom_out.string() << "\n";
        return 0;
    }

    if (app.got_subcommand("recon")) {
        const Sinogram sino = load_sinogram(sino_path, geom_path);
        std::optional<TemplateSet> templates;
        if (!templates_csv.empty()) {
            templates = load_templates(split_list(templates_csv));
        }
        const std::string method = flags.method.empty() ? "fdk" : flags.method;
        const ImageGrid image =
            reconstruct(method, sino, templates ? &*templates : nullptr, cfg.recon);
        const std::string out = flags.out.empty() ? method + ".tpr" : flags.out;
        save_raster(image, out);
        std::cout << "wrote " << out << "\n";
        return 0;
    }

    if (app.got_subcommand("eigen")) {
        const TemplateSet set = load_templates(split_list(templates_csv));
        const int effective = rank == 0 ? set.count() - 1 : rank;
        const Eigenspace space = build_eigenspace(set, effective);
        std::vector<std::uint64_t> checksums;
        for (const auto& t : set.templates) checksums.push_back(raster_checksum(t));
        save_eigenspace(space, flags.out, checksums);
        std::cout << "wrote eigenspace of rank " << space.rank() << " to " << flags.out
                  << "\n";
        return 0;
    }

    if (app.got_subcommand("weights")) {
        const Sinogram sino = load_sinogram(sino_path, geom_path);
        const TemplateSet set = load_templates(split_list(templates_csv));
        const auto template_sinos = simulate_template_sinograms(set, sino.geometry);
        const int rank_low =
            cfg.recon.eigen_rank_low == 0 ? set.count() - 1 : cfg.recon.eigen_rank_low;
        const PilotSet pilots = build_pilot_set(
            sino, template_sinos, cfg.recon.effective_pilot_methods(), rank_low);
        const WeightMap map =
            compute_weight_map(pilots, cfg.recon.k, cfg.recon.smoothing_sigma);
        const std::string out = flags.out.empty() ? "weights.tpr" : flags.out;
        save_raster(map.values, out);
        if (!dump_diffs.empty()) {
            std::filesystem::create_directories(dump_diffs);
            const auto maps = per_method_difference_maps(pilots);
            for (std::size_t j = 0; j < maps.size(); ++j) {
                save_raster(maps[j], std::filesystem::path(dump_diffs) /
                                         ("diff_" + pilot_kind_name(pilots.methods[j].kind) +
                                          ".tpr"));
            }
        }
        std::cout << "wrote " << out << "\n";
        return 0;
    }

    if (app.got_subcommand("metric")) {
        const ImageGrid a = load_raster(metric_args.a);
        const ImageGrid b = load_raster(metric_args.b);
        const auto roi = parse_roi_flag(metric_args.roi);
        double value = 0.0;
        if (metric_args.name == "ssim") {
            value = ssim(a, b, roi);
        } else if (metric_args.name == "rmse") {
            value = rmse(a, b, roi);
        } else {
            throw UsageError("metric must be 'ssim' or 'rmse'");
        }
        std::printf("%.6f\n", value);
        return 0;
    }

    if (app.got_subcommand("bench")) {
        const auto spec = resolve_spec(spec_name, spec_file, cfg.recon.seed);
        const std::string name = spec_file.empty() ? spec_name : "custom";
        const BenchResult result =
            run_bench(spec, name, cfg.recon, cfg.experiment, flags.out);
        std::cout << format_report(result);
        return 0;
    }

    throw UsageError("no subcommand given (see --help)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tomoprior: weighted-prior sparse-view tomographic reconstruction"};
    app.require_subcommand(0, 1);

    CommonFlags flags;
    app.add_option("--config", flags.config_path, "key=value config file")
        ->expected(1);
    app.add_option("--out", flags.out, "output file or directory");
    app.add_option("--method", flags.method,
                   "reconstruction method (fdk|art|sart|sirt|cs|prior|weighted-prior)");
    app.add_option("--views", flags.views, "sparse view count (overrides config)");
    app.add_option("--seed", flags.seed, "RNG seed (overrides config)");

    std::string spec_name = "potato", spec_file, image_path, sino_path, geom_path;
    std::string templates_csv, dump_diffs;
    MetricArgs metric_args;
    int rank = 0;

    auto* phantom = app.add_subcommand("phantom", "generate a longitudinal dataset");
    phantom->add_option("--spec", spec_name, "built-in spec name (potato|okra)");
    phantom->add_option("--spec-file", spec_file, "phantom spec file");

    auto* project = app.add_subcommand("project", "forward-project an image");
    project->add_option("--image", image_path, "input raster")->required();
    project->add_option("--geometry", geom_path, "geometry sidecar output path");

    auto* recon = app.add_subcommand("recon", "reconstruct from a sinogram");
    recon->add_option("--sino", sino_path, "sinogram raster")->required();
    recon->add_option("--geometry", geom_path, "geometry sidecar")->required();
    recon->add_option("--templates", templates_csv, "comma-separated template rasters");

    auto* eigen = app.add_subcommand("eigen", "build an eigenspace from templates");
    eigen->add_option("--templates", templates_csv, "comma-separated template rasters")
        ->required();
    eigen->add_option("--rank", rank, "component count (default L-1)");

    auto* weights = app.add_subcommand("weights", "compute a prior weight map");
    weights->add_option("--sino", sino_path, "test sinogram raster")->required();
    weights->add_option("--geometry", geom_path, "geometry sidecar")->required();
    weights->add_option("--templates", templates_csv, "comma-separated template rasters")
        ->required();
    weights->add_option("--dump-diffs", dump_diffs, "directory for per-method |X-P| maps");

    auto* metric = app.add_subcommand("metric", "compare two rasters");
    metric->add_option("--a", metric_args.a, "first raster")->required();
    metric->add_option("--b", metric_args.b, "second raster")->required();
    metric->add_option("--roi", metric_args.roi, "x0,y0,w,h");
    metric->add_option("--metric", metric_args.name, "ssim|rmse");

    auto* bench = app.add_subcommand("bench", "run the method comparison benchmark");
    bench->add_option("--spec", spec_name, "built-in spec name (potato|okra)");
    bench->add_option("--spec-file", spec_file, "phantom spec file");

    (void)phantom;
    (void)project;
    (void)recon;
    (void)eigen;
    (void)weights;
    (void)metric;
    (void)bench;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return dispatch(app, flags, spec_name, spec_file, image_path, sino_path, geom_path,
                        templates_csv, rank, metric_args, dump_diffs);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
