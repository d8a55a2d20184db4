#include "coverbound/curvature.hpp"
#include "coverbound/errors.hpp"
#include "coverbound/experiment.hpp"
#include "coverbound/scenario.hpp"
#include "coverbound/svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace coverbound;

namespace {

py::dict report_dict(const SolveResult& r)
{
    py::dict out;
    out["ground_size"] = r.ground_size;
    out["grid_size"] = r.grid_size;
    out["h_greedy"] = r.trace.solution_value();
    std::vector<std::size_t> selection;
    for (const GreedyStep& s : r.trace.steps) {
        selection.push_back(s.index);
    }
    out["selection"] = selection;
    std::vector<std::pair<double, double>> positions;
    for (const Point& p : r.agent_positions) {
        positions.emplace_back(p.x, p.y);
    }
    out["agents"] = positions;
    const CurvatureReport& rep = r.report;
    out["beta_f"] = rep.beta_f;
    out["beta_t"] = rep.total ? py::cast(rep.total->beta) : py::none();
    out["beta_g"] = rep.greedy.beta;
    out["beta_e"] = rep.elemental.beta;
    out["beta_p"] = rep.partial ? py::cast(rep.partial->beta) : py::none();
    out["beta_u"] = rep.extended ? py::cast(rep.extended->beta) : py::none();
    out["best_bound"] = rep.best_bound();
    out["best_name"] = rep.best_name();
    out["notes"] = rep.notes;
    return out;
}

Scenario scenario_from(const std::string& builtin, const std::string& text)
{
    return text.empty() ? builtin_scenario(builtin) : parse_scenario(text);
}

Scenario with_overrides(Scenario s, const py::kwargs& kw)
{
    for (const auto& item : kw) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "agents") {
            s.solver.agents = py::cast<std::size_t>(item.second);
        } else if (key == "resolution") {
            s.resolution = py::cast<std::size_t>(item.second);
        } else if (key == "pitch") {
            s.ground.pitch = py::cast<double>(item.second);
        } else if (key == "lazy") {
            s.solver.lazy = py::cast<bool>(item.second);
        } else {
            apply_parameter(s, key == "N" ? "N" : key, py::cast<double>(item.second));
        }
    }
    validate_scenario(s);
    return s;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Greedy coverage placement with curvature-based performance bounds";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    m.def("beta_fundamental", &beta_fundamental, py::arg("n"));
    m.def("beta_total", &beta_total, py::arg("alpha"), py::arg("n"));
    m.def("beta_greedy", &beta_greedy, py::arg("alpha"), py::arg("n"));
    m.def("beta_elemental", &beta_elemental, py::arg("alpha"), py::arg("n"));
    m.def("builtin_names", []() {
        std::vector<std::string> names;
        for (const Scenario& s : builtin_scenarios()) {
            names.push_back(s.name);
        }
        return names;
    });
    m.def("builtin_text", [](const std::string& name) { return format_scenario(builtin_scenario(name)); });
    m.def("normalize_scenario", [](const std::string& text) { return format_scenario(parse_scenario(text)); },
          "Parse, validate and re-emit a scenario file");
    m.def(
        "solve",
        [](const std::string& builtin, const std::string& text, const py::kwargs& kw) {
            return report_dict(run_solve(with_overrides(scenario_from(builtin, text), kw)));
        },
        py::arg("builtin") = "blank600", py::arg("text") = "");
    m.def(
        "sweep",
        [](const std::string& parameter, const std::vector<double>& values, const std::string& builtin,
           const std::string& text, const py::kwargs& kw) {
            return emit_csv(run_sweep(with_overrides(scenario_from(builtin, text), kw), parameter, values));
        },
        py::arg("parameter"), py::arg("values"), py::arg("builtin") = "blank600", py::arg("text") = "");
    m.def(
        "render",
        [](const std::vector<std::size_t>& indices, const std::string& builtin, const std::string& text,
           const py::kwargs& kw) {
            const Instance inst = build_instance(with_overrides(scenario_from(builtin, text), kw));
            return render_svg(inst.mission, inst.ctx, AgentSet(indices), indices);
        },
        py::arg("indices"), py::arg("builtin") = "blank600", py::arg("text") = "");
}
