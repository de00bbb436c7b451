#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tomoprior/bench.hpp"
#include "tomoprior/config.hpp"
#include "tomoprior/errors.hpp"
#include "tomoprior/metrics.hpp"
#include "tomoprior/phantom.hpp"
#include "tomoprior/pipeline.hpp"
#include "tomoprior/projector.hpp"

namespace py = pybind11;
using namespace tomoprior;

namespace {

ImageGrid grid_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) {
        throw ValidationError("expected a 2D array");
    }
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    std::vector<double> data(arr.data(), arr.data() + arr.size());
    return ImageGrid(w, h, std::move(data));
}

py::array_t<double> grid_to_array(const ImageGrid& g) {
    py::array_t<double> out({g.height(), g.width()});
    std::copy(g.data().begin(), g.data().end(), out.mutable_data());
    return out;
}

py::array_t<double> sino_to_array(const Sinogram& s) {
    py::array_t<double> out({s.geometry.n_angles(), s.geometry.n_detectors});
    std::copy(s.data.begin(), s.data.end(), out.mutable_data());
    return out;
}

RegionOfInterest roi_from_tuple(const std::tuple<int, int, int, int>& t) {
    return RegionOfInterest{std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
}

std::optional<RegionOfInterest> optional_roi(const py::object& roi) {
    if (roi.is_none()) return std::nullopt;
    return roi_from_tuple(roi.cast<std::tuple<int, int, int, int>>());
}

TemplateSet templates_from_list(const py::sequence& seq) {
    TemplateSet set;
    for (const auto& item : seq) {
        set.templates.push_back(grid_from_array(
            item.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>()));
    }
    set.validate();
    return set;
}

} // namespace

PYBIND11_MODULE(_tomoprior, m) {
    m.doc() = "Weighted-prior sparse-view tomographic reconstruction";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<ScanGeometry>(m, "ScanGeometry")
        .def_static(
            "uniform",
            [](int width, int height, int n_views, int n_detectors, double spacing) {
                return ScanGeometry::uniform(width, height, n_views, n_detectors, spacing);
            },
            py::arg("image_width"), py::arg("image_height"), py::arg("n_views"),
            py::arg("n_detectors") = 0, py::arg("detector_spacing") = 1.0)
        .def_readonly("angles", &ScanGeometry::angles)
        .def_readonly("n_detectors", &ScanGeometry::n_detectors)
        .def_readonly("detector_spacing", &ScanGeometry::detector_spacing)
        .def_readonly("image_width", &ScanGeometry::image_width)
        .def_readonly("image_height", &ScanGeometry::image_height)
        .def("__repr__", [](const ScanGeometry& g) {
            return "<ScanGeometry " + std::to_string(g.n_angles()) + " angles x " +
                   std::to_string(g.n_detectors) + " bins for " +
                   std::to_string(g.image_width) + "x" + std::to_string(g.image_height) + ">";
        });

    py::class_<Sinogram>(m, "Sinogram")
        .def_readonly("geometry", &Sinogram::geometry)
        .def_property_readonly("data", &sino_to_array);

    py::class_<ReconConfig>(m, "ReconConfig")
        .def(py::init<>())
        .def_readwrite("lambda1", &ReconConfig::lambda1)
        .def_readwrite("lambda2", &ReconConfig::lambda2)
        .def_readwrite("k", &ReconConfig::k)
        .def_readwrite("smoothing_sigma", &ReconConfig::smoothing_sigma)
        .def_readwrite("eigen_rank_high", &ReconConfig::eigen_rank_high)
        .def_readwrite("eigen_rank_low", &ReconConfig::eigen_rank_low)
        .def_readwrite("outer_iterations", &ReconConfig::outer_iterations)
        .def_readwrite("seed", &ReconConfig::seed)
        .def_property(
            "cs_max_iterations", [](const ReconConfig& c) { return c.cs.max_iterations; },
            [](ReconConfig& c, int v) { c.cs.max_iterations = v; })
        .def_property(
            "cs_tolerance", [](const ReconConfig& c) { return c.cs.tolerance; },
            [](ReconConfig& c, double v) { c.cs.tolerance = v; })
        .def(
            "set_pilot_methods",
            [](ReconConfig& c, const std::vector<std::string>& names) {
                c.pilot_methods.clear();
                for (const auto& n : names) {
                    PilotMethod method = PilotMethod::make(pilot_kind_from_name(n));
                    if (method.kind == PilotKind::Cs) {
                        method.cs = c.cs;
                        method.cs.lambda1 = c.lambda1;
                    }
                    c.pilot_methods.push_back(method);
                }
            },
            py::arg("names"));

    m.def(
        "forward_project",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
           const ScanGeometry& geom) { return forward_project(grid_from_array(image), geom); },
        py::arg("image"), py::arg("geometry"));

    m.def(
        "back_project", [](const Sinogram& sino) { return grid_to_array(back_project(sino)); },
        py::arg("sinogram"));

    m.def(
        "fbp_reconstruct",
        [](const Sinogram& sino, const std::string& filter) {
            const FbpFilter f = filter == "hann" ? FbpFilter::Hann : FbpFilter::RamLak;
            return grid_to_array(fbp_reconstruct(sino, f));
        },
        py::arg("sinogram"), py::arg("filter") = "ram-lak");

    m.def(
        "reconstruct",
        [](const std::string& method, const Sinogram& sino, const py::object& templates,
           const ReconConfig& cfg) {
            if (templates.is_none()) {
                return grid_to_array(reconstruct(method, sino, nullptr, cfg));
            }
            const TemplateSet set = templates_from_list(templates.cast<py::sequence>());
            return grid_to_array(reconstruct(method, sino, &set, cfg));
        },
        py::arg("method"), py::arg("sinogram"), py::arg("templates") = py::none(),
        py::arg("config") = ReconConfig{});

    m.def(
        "weighted_prior_reconstruct",
        [](const Sinogram& sino, const py::sequence& templates, const ReconConfig& cfg) {
            const TemplateSet set = templates_from_list(templates);
            PipelineResult result = weighted_prior_reconstruct(sino, set, cfg);
            return py::make_tuple(grid_to_array(result.image),
                                  grid_to_array(result.weights.values),
                                  result.diagnostics.format_table());
        },
        py::arg("sinogram"), py::arg("templates"), py::arg("config") = ReconConfig{});

    m.def(
        "plain_prior_reconstruct",
        [](const Sinogram& sino, const py::sequence& templates, const ReconConfig& cfg) {
            const TemplateSet set = templates_from_list(templates);
            return grid_to_array(plain_prior_reconstruct(sino, set, cfg));
        },
        py::arg("sinogram"), py::arg("templates"), py::arg("config") = ReconConfig{});

    m.def(
        "compute_weight_map",
        [](const Sinogram& sino, const py::sequence& templates, const ReconConfig& cfg) {
            const TemplateSet set = templates_from_list(templates);
            const auto template_sinos = simulate_template_sinograms(set, sino.geometry);
            const int rank =
                cfg.eigen_rank_low == 0 ? set.count() - 1 : cfg.eigen_rank_low;
            const PilotSet pilots =
                build_pilot_set(sino, template_sinos, cfg.effective_pilot_methods(), rank);
            return grid_to_array(compute_weight_map(pilots, cfg.k, cfg.smoothing_sigma).values);
        },
        py::arg("sinogram"), py::arg("templates"), py::arg("config") = ReconConfig{});

    m.def(
        "build_eigenspace",
        [](const py::sequence& templates, int rank) {
            TemplateSet set = templates_from_list(templates);
            const int effective = rank == 0 ? set.count() - 1 : rank;
            const Eigenspace space = build_eigenspace(set, effective);
            std::vector<py::array_t<double>> components;
            for (int i = 0; i < space.rank(); ++i) {
                components.push_back(grid_to_array(space.component(i)));
            }
            return py::make_tuple(grid_to_array(space.mean()), components);
        },
        py::arg("templates"), py::arg("rank") = 0);

    m.def(
        "ssim",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b,
           const py::object& roi) {
            return ssim(grid_from_array(a), grid_from_array(b), optional_roi(roi));
        },
        py::arg("a"), py::arg("b"), py::arg("roi") = py::none());

    m.def(
        "rmse",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b,
           const py::object& roi) {
            return rmse(grid_from_array(a), grid_from_array(b), optional_roi(roi));
        },
        py::arg("a"), py::arg("b"), py::arg("roi") = py::none());

    m.def(
        "generate_phantom",
        [](const std::string& name, std::uint64_t seed) {
            const LongitudinalSpec spec =
                name == "okra" ? okra_spec(seed) : potato_spec(seed);
            const LongitudinalDataset data = generate_longitudinal_dataset(spec);
            std::vector<py::array_t<double>> templates;
            for (const auto& t : data.templates.templates) {
                templates.push_back(grid_to_array(t));
            }
            std::vector<std::tuple<int, int, int, int>> regions;
            for (const auto& r : data.new_regions) {
                regions.emplace_back(r.x0, r.y0, r.width, r.height);
            }
            return py::make_tuple(templates, grid_to_array(data.test), regions);
        },
        py::arg("name") = "potato", py::arg("seed") = 0);

    m.def(
        "load_raster",
        [](const std::string& path) { return grid_to_array(load_raster(path)); },
        py::arg("path"));
    m.def(
        "save_raster",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
           const std::string& path) { save_raster(grid_from_array(image), path); },
        py::arg("image"), py::arg("path"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
