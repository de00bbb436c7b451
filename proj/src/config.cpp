#include "tomoprior/config.hpp"

#include <fstream>
#include <sstream>

#include "tomoprior/errors.hpp"
#include "tomoprior/keyvalue.hpp"

namespace tomoprior {

namespace {

std::vector<PilotMethod> parse_pilot_methods(const KeyValue& kv, const ReconConfig& cfg) {
    std::vector<PilotMethod> methods;
    std::istringstream in(kv.value);
    std::string name;
    while (std::getline(in, name, ',')) {
        const auto begin = name.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = name.find_last_not_of(" \t");
        PilotMethod method = PilotMethod::make(
            pilot_kind_from_name(name.substr(begin, end - begin + 1)));
        if (method.kind == PilotKind::Cs) {
            method.cs = cfg.cs;
            method.cs.lambda1 = cfg.lambda1;
        }
        methods.push_back(method);
    }
    if (methods.empty()) {
        throw ConfigError("line " + std::to_string(kv.line) + ": empty pilot_methods list");
    }
    return methods;
}

ParsedConfig parse_entries(const std::vector<KeyValue>& entries, const std::string& origin) {
    ParsedConfig parsed;
    ReconConfig& recon = parsed.recon;
    ExperimentConfig& exp = parsed.experiment;
    bool have_pilots = false;
    KeyValue pilot_kv;

    for (const auto& kv : entries) {
        if (kv.key == "lambda1") {
            recon.lambda1 = parse_real(kv);
        } else if (kv.key == "lambda2") {
            recon.lambda2 = parse_real(kv);
        } else if (kv.key == "k") {
            recon.k = parse_real(kv);
        } else if (kv.key == "smoothing_sigma") {
            recon.smoothing_sigma = parse_real(kv);
        } else if (kv.key == "eigen_rank_high") {
            recon.eigen_rank_high = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "eigen_rank_low") {
            recon.eigen_rank_low = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "outer_iterations") {
            recon.outer_iterations = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "seed") {
            recon.seed = parse_unsigned(kv);
        } else if (kv.key == "cs_max_iterations") {
            recon.cs.max_iterations = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "cs_tolerance") {
            recon.cs.tolerance = parse_real(kv);
        } else if (kv.key == "cs_power_iterations") {
            recon.cs.lipschitz_power_iters = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "pilot_methods") {
            have_pilots = true;
            pilot_kv = kv; // resolved after cs options are known
        } else if (kv.key == "views") {
            exp.views = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "dense_views") {
            exp.dense_views = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "filter") {
            if (kv.value == "ram-lak") {
                exp.filter = FbpFilter::RamLak;
            } else if (kv.value == "hann") {
                exp.filter = FbpFilter::Hann;
            } else {
                throw ConfigError("line " + std::to_string(kv.line) +
                                  ": filter must be 'ram-lak' or 'hann', got '" + kv.value +
                                  "'");
            }
        } else {
            throw ConfigError(origin + ":" + std::to_string(kv.line) + ": unknown key '" +
                              kv.key + "'");
        }
    }
    if (have_pilots) {
        recon.pilot_methods = parse_pilot_methods(pilot_kv, recon);
    }

    try {
        recon.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (exp.views < 1 || exp.dense_views < 1) {
        throw ConfigError(origin + ": views and dense_views must be positive");
    }
    if (exp.views > exp.dense_views) {
        throw ConfigError(origin + ": views cannot exceed dense_views");
    }
    return parsed;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    return parse_entries(parse_key_value_text(text, origin), origin);
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    return parse_entries(parse_key_value_file(path), path.string());
}

} // namespace tomoprior
