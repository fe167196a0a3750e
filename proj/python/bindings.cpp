#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mss/canonical.hpp"
#include "mss/config.hpp"
#include "mss/error.hpp"
#include "mss/pipeline.hpp"
#include "mss/report.hpp"

namespace py = pybind11;

namespace {

mss::AnalysisOptions with_overrides(mss::AnalysisOptions o, int max_period, int grid, double budget) {
    if (max_period > 0) o.max_period = max_period;
    if (grid > 0) o.grid_density = grid;
    if (budget > 0) o.arclength_budget = budget;
    return o;
}

mss::AnalysisReport analyze_name(const std::string& name, int max_period, int grid, double budget) {
    const mss::CatalogEntry& e = mss::find_catalog_entry(name);
    mss::MapSpec m = e.build();
    auto o = with_overrides(e.defaults, max_period, grid, budget);
    py::gil_scoped_release release;
    return mss::run_analyze(m, o);
}

mss::AnalysisReport analyze_config(const std::string& path, int max_period, int grid, double budget) {
    mss::MapConfig c = mss::load_config_file(path);
    auto o = with_overrides(c.options, max_period, grid, budget);
    py::gil_scoped_release release;
    return mss::run_analyze(c.map, o);
}

}  // namespace

PYBIND11_MODULE(_mss, m) {
    m.doc() = "Morse-Smale surface diffeomorphism analysis";

    static py::exception<mss::Error> error(m, "MssError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const mss::Error& e) {
            error(e.what());
        }
    });

    py::class_<mss::AnalysisReport>(m, "Report")
        .def_property_readonly("map_name", [](const mss::AnalysisReport& r) { return r.map_name; })
        .def_property_readonly("orientability",
                               [](const mss::AnalysisReport& r) { return mss::orientability_name(r.orientability); })
        .def_property_readonly("beh", [](const mss::AnalysisReport& r) { return r.graph.beh; })
        .def_property_readonly("theorem_pass", [](const mss::AnalysisReport& r) { return r.theorem.pass; })
        .def_property_readonly("diagnostic", [](const mss::AnalysisReport& r) { return r.theorem.diagnostic; })
        .def_property_readonly("crossing_count", [](const mss::AnalysisReport& r) { return r.crossings.size(); })
        .def("to_json", &mss::report_json)
        .def("separatrices_csv", &mss::separatrices_csv)
        .def("graph_dot", &mss::graph_dot)
        .def("phase_svg", &mss::phase_svg)
        .def("emit", &mss::emit_outputs, py::arg("dir"),
             py::arg("formats") = std::vector<std::string>{"json", "csv", "dot", "svg"})
        .def("inject_flipped_sign", &mss::inject_flipped_sign, py::arg("index"))
        .def("inject_uniform_sign", &mss::inject_uniform_sign, py::arg("sign"));

    m.def("catalog_names", [] {
        std::vector<std::string> out;
        for (const auto& e : mss::catalog()) out.push_back(e.name);
        return out;
    });
    m.def("analyze", &analyze_name, py::arg("name"), py::arg("max_period") = 0, py::arg("grid") = 0,
          py::arg("budget") = 0.0);
    m.def("analyze_config", &analyze_config, py::arg("path"), py::arg("max_period") = 0, py::arg("grid") = 0,
          py::arg("budget") = 0.0);
    m.def("verify_theorem", [](const std::vector<std::string>& names) {
        py::list out;
        for (const auto& c : mss::run_verify_theorem(names)) {
            py::dict d;
            d["name"] = c.name;
            d["pass"] = c.pass;
            d["error"] = c.error;
            d["orientability"] = c.orientability;
            d["beh"] = c.beh;
            d["diagnostic"] = c.diagnostic;
            out.append(d);
        }
        return out;
    });
    m.def("canonical_apply", [](int nu, double x1, double x2) {
        mss::Vec2 v = mss::canonical_apply(mss::CanonicalSaddle{nu}, {x1, x2});
        return std::make_pair(v.x, v.y);
    });
}
