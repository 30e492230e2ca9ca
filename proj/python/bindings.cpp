// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fdcache/analytics.hpp"
#include "fdcache/errors.hpp"
#include "fdcache/experiment.hpp"
#include "fdcache/simulator.hpp"

namespace py = pybind11;
using namespace fdcache;

namespace {

py::dict row_to_dict(const ResultRow& r) {
    py::dict d;
    d["sweep_value"] = r.sweep_value;
    d["analytic"] = r.analytic;
    d["sim_mean"] = r.sim_mean;
    d["ci95"] = r.ci95;
    d["trials"] = r.trials;
    d["wall_s"] = r.wall_seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cache-aided full-duplex small-cell network model and simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<WindowTooSmall>(m, "WindowTooSmall", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::enum_<LinkKind>(m, "LinkKind")
        .value("SC_TO_SC", LinkKind::ScToSc)
        .value("SC_TO_DL", LinkKind::ScToDl)
        .value("UL_TO_SC", LinkKind::UlToSc)
        .value("UL_TO_DL", LinkKind::UlToDl)
        .value("SELF", LinkKind::Self);
    py::enum_<Correlation>(m, "Correlation")
        .value("correlated", Correlation::correlated)
        .value("uncorrelated", Correlation::uncorrelated);
    py::enum_<CacheMode>(m, "CacheMode")
        .value("thinned", CacheMode::thinned)
        .value("geographic", CacheMode::geographic);
    py::enum_<RegionSampling>(m, "RegionSampling")
        .value("independent", RegionSampling::independent)
        .value("shared", RegionSampling::shared);
    py::enum_<FarField>(m, "FarField")
        .value("compensate", FarField::compensate)
        .value("truncate", FarField::truncate);

    m.def("zipf_popularity", &zipf_popularity, py::arg("file_count"), py::arg("shape"));

    py::class_<FileCatalog>(m, "FileCatalog")
        .def(py::init<std::size_t, double, double>(), py::arg("file_count"),
             py::arg("zipf_shape"), py::arg("file_density"))
        .def_property_readonly("file_count", &FileCatalog::file_count)
        .def_property_readonly("zipf_shape", &FileCatalog::zipf_shape)
        .def_property_readonly("file_density", &FileCatalog::file_density)
        .def_property_readonly("popularity", [](const FileCatalog& c) {
            auto p = c.popularity();
            return std::vector<double>(p.begin(), p.end());
        });
    m.def("file_intensity", &file_intensity, py::arg("catalog"), py::arg("index"));

    py::class_<CacheModel>(m, "CacheModel")
        .def(py::init([](std::size_t storage, double rr, double rc) {
                 return CacheModel{storage, rr, rc};
             }),
             py::arg("storage"), py::arg("request_radius") = 8.0, py::arg("cache_radius") = 40.0)
        .def_static("from_ratio", &CacheModel::from_ratio, py::arg("kappa"),
                    py::arg("file_count"), py::arg("request_radius") = 8.0,
                    py::arg("cache_radius") = 40.0)
        .def_readwrite("storage", &CacheModel::storage)
        .def_readwrite("request_radius", &CacheModel::request_radius)
        .def_readwrite("cache_radius", &CacheModel::cache_radius);

    py::class_<NetworkParams>(m, "NetworkParams")
        .def(py::init<>())
        .def_readwrite("sc_density", &NetworkParams::sc_density)
        .def_readwrite("ul_distance", &NetworkParams::ul_distance)
        .def_readwrite("dl_distance", &NetworkParams::dl_distance)
        .def_readwrite("ul_power", &NetworkParams::ul_power)
        .def_readwrite("dl_power", &NetworkParams::dl_power)
        .def_readwrite("alpha1", &NetworkParams::alpha1)
        .def_readwrite("alpha2", &NetworkParams::alpha2)
        .def_readwrite("rician_k", &NetworkParams::rician_k)
        .def_readwrite("si_attenuation_db", &NetworkParams::si_attenuation_db)
        .def("validate", &NetworkParams::validate)
        .def("si_gamma", [](const NetworkParams& p) {
            const auto g = p.si_gamma();
            return py::make_tuple(g.shape, g.scale);
        });

    m.def("pathloss", &pathloss, py::arg("kind"), py::arg("distance"), py::arg("params"));
    m.def(
        "rician_gamma_params",
        [](double k, double db) {
            const auto g = rician_gamma_params(k, db);
            return py::make_tuple(g.shape, g.scale);
        },
        py::arg("k_factor"), py::arg("si_attenuation_db"));

    m.def("cache_hit_probability", &cache_hit_probability, py::arg("catalog"), py::arg("cache"));
    m.def("upsilon_hat", &upsilon_hat, py::arg("s"), py::arg("params"));
    m.def(
        "omega",
        [](double s, double r, const NetworkParams& p, LinkKind kind) {
            return omega(s, r, p, {}, kind);
        },
        py::arg("s"), py::arg("r"), py::arg("params"), py::arg("uplink") = LinkKind::UlToDl);
    m.def(
        "upsilon_tilde",
        [](double s, const NetworkParams& p, LinkKind kind) {
            return upsilon_tilde(s, p, {}, kind);
        },
        py::arg("s"), py::arg("params"), py::arg("uplink") = LinkKind::UlToDl);
    m.def(
        "laplace_hit",
        [](double s, double q, const NetworkParams& p, LinkKind kind) {
            return laplace_hit(s, q, p, {}, kind);
        },
        py::arg("s"), py::arg("p_hit"), py::arg("params"), py::arg("uplink") = LinkKind::UlToDl);
    m.def(
        "laplace_miss_sc",
        [](double s, double q, const NetworkParams& p) { return laplace_miss_sc(s, q, p); },
        py::arg("s"), py::arg("p_hit"), py::arg("params"));
    m.def(
        "laplace_miss_dl",
        [](double s, double q, const NetworkParams& p) { return laplace_miss_dl(s, q, p); },
        py::arg("s"), py::arg("p_hit"), py::arg("params"));
    m.def(
        "success_probability_lb",
        [](double theta, double q, const NetworkParams& p) {
            return success_probability_lb(theta, q, p);
        },
        py::arg("theta"), py::arg("p_hit"), py::arg("params"));
    m.def("throughput_gain", &throughput_gain, py::arg("theta"), py::arg("p_suc"),
          py::arg("params"));
    m.def("area_spectral_efficiency", &area_spectral_efficiency, py::arg("theta"),
          py::arg("p_suc"), py::arg("sc_density"));
    m.def(
        "hop_arguments",
        [](double theta, const NetworkParams& p) {
            const auto h = hop_arguments(theta, p);
            return py::make_tuple(h.sc, h.dl);
        },
        py::arg("theta"), py::arg("params"));
    m.def("db_to_linear", &db_to_linear, py::arg("db"));

    py::class_<EstimateWithCI>(m, "EstimateWithCI")
        .def_readonly("mean", &EstimateWithCI::mean)
        .def_readonly("half_width_95", &EstimateWithCI::half_width_95)
        .def_readonly("trials", &EstimateWithCI::trials)
        .def("__repr__", [](const EstimateWithCI& e) {
            return "EstimateWithCI(mean=" + std::to_string(e.mean) +
                   ", half_width_95=" + std::to_string(e.half_width_95) +
                   ", trials=" + std::to_string(e.trials) + ")";
        });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("params", &SimConfig::params)
        .def_readwrite("catalog", &SimConfig::catalog)
        .def_readwrite("cache", &SimConfig::cache)
        .def_readwrite("theta", &SimConfig::theta)
        .def_readwrite("trials", &SimConfig::trials)
        .def_readwrite("window_radius", &SimConfig::window_radius)
        .def_readwrite("mode", &SimConfig::mode)
        .def_readwrite("cache_mode", &SimConfig::cache_mode)
        .def_readwrite("regions", &SimConfig::regions)
        .def_readwrite("far_field", &SimConfig::far_field)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("workers", &SimConfig::workers)
        .def("validate", &SimConfig::validate);

    m.def("estimate_cache_hit", py::overload_cast<const SimConfig&>(&estimate_cache_hit),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("estimate_success", py::overload_cast<const SimConfig&>(&estimate_success),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("estimate_throughput_gain",
          py::overload_cast<const SimConfig&>(&estimate_throughput_gain), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScenarioSettings>(m, "ScenarioSettings")
        .def(py::init<>())
        .def_readwrite("file_count", &ScenarioSettings::file_count)
        .def_readwrite("zipf_gamma", &ScenarioSettings::zipf_gamma)
        .def_readwrite("file_density", &ScenarioSettings::file_density)
        .def_readwrite("kappa", &ScenarioSettings::kappa)
        .def_readwrite("request_radius", &ScenarioSettings::request_radius)
        .def_readwrite("cache_radius", &ScenarioSettings::cache_radius)
        .def_readwrite("network", &ScenarioSettings::network)
        .def_readwrite("theta_db", &ScenarioSettings::theta_db)
        .def_readwrite("trials", &ScenarioSettings::trials)
        .def_readwrite("window_radius", &ScenarioSettings::window_radius)
        .def_readwrite("mode", &ScenarioSettings::mode)
        .def_readwrite("cache_mode", &ScenarioSettings::cache_mode)
        .def_readwrite("regions", &ScenarioSettings::regions)
        .def_readwrite("far_field", &ScenarioSettings::far_field)
        .def_readwrite("seed", &ScenarioSettings::seed)
        .def_readwrite("workers", &ScenarioSettings::workers)
        .def("to_sim_config", &ScenarioSettings::to_sim_config);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init<>())
        .def_readwrite("base", &ExperimentSpec::base)
        .def_readwrite("name", &ExperimentSpec::name)
        .def_readwrite("values", &ExperimentSpec::values)
        .def_readwrite("kappa_series", &ExperimentSpec::kappa_series)
        .def_property_readonly("sweep", [](const ExperimentSpec& s) { return std::string(to_string(s.sweep)); })
        .def_property_readonly("metric", [](const ExperimentSpec& s) { return std::string(to_string(s.metric)); })
        .def("validate", &ExperimentSpec::validate)
        .def("__str__", &format_config);

    m.def("parse_config", [](const std::string& text) { return parse_config(text); },
          py::arg("text"));
    m.def("format_config", &format_config, py::arg("spec"));
    m.def(
        "load_config",
        [](const std::filesystem::path& path, std::optional<std::string> preset) {
            return preset ? load_config(path, std::string_view(*preset)) : load_config(path);
        },
        py::arg("path"), py::arg("preset") = py::none());
    m.def("load_preset", &load_preset, py::arg("name"));
    m.def("expand_series", &expand_series, py::arg("spec"));
    m.def(
        "run_experiment",
        [](const ExperimentSpec& spec) {
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_experiment(spec);
            }
            py::list out;
            for (const auto& r : rows) {
                out.append(row_to_dict(r));
            }
            return out;
        },
        py::arg("spec"));
}
