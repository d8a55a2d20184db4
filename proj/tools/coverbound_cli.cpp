#include "coverbound/errors.hpp"
#include "coverbound/experiment.hpp"
#include "coverbound/scenario.hpp"
#include "coverbound/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace coverbound;

namespace {

struct Source
{
    std::string file;
    std::string builtin;
};

struct Overrides
{
    std::optional<double> delta;
    std::optional<double> lambda;
    std::optional<double> theta;
    std::optional<std::size_t> agents;
    std::optional<std::string> horizon;
    std::optional<std::string> q;
    std::optional<double> pitch;
    std::optional<double> offset;
    std::optional<std::size_t> resolution;
    std::optional<std::string> inflation;
    std::optional<std::size_t> cap;
    bool lazy = false;
};

void add_source(CLI::App* cmd, Source& src)
{
    auto* file = cmd->add_option("-s,--scenario", src.file, "Scenario file");
    auto* builtin = cmd->add_option("-b,--builtin", src.builtin, "Built-in scenario name (see `scenarios`)");
    file->excludes(builtin);
}

void add_overrides(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--delta", o.delta, "Sensing range");
    cmd->add_option("--lambda", o.lambda, "Sensing decay rate");
    cmd->add_option("--theta", o.theta, "Blend weight of joint detection");
    cmd->add_option("-N,--agents", o.agents, "Number of agents");
    cmd->add_option("--horizon", o.horizon, "Greedy iterations (integer or 'full')");
    cmd->add_option("--q", o.q, "Extended greedy index set ('all' or comma-separated)");
    cmd->add_option("--pitch", o.pitch, "Ground-set lattice pitch");
    cmd->add_option("--offset", o.offset, "Ground-set lattice offset");
    cmd->add_option("--resolution", o.resolution, "Integration grid cells per side");
    cmd->add_option("--inflation", o.inflation, "Block inflation factor: beta_f or beta_e");
    cmd->add_option("--cap", o.cap, "Brute-force subset cap");
    cmd->add_flag("--lazy", o.lazy, "Lazy greedy evaluation");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    out << text;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(item);
    }
    return out;
}

std::size_t parse_count(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw ValidationError(what + " expects non-negative integers, got '" + text + "'");
    }
    return v;
}

Scenario load(const Source& src, const Overrides& o)
{
    Scenario s;
    if (!src.file.empty()) {
        s = parse_scenario(read_file(src.file));
        s.name = src.file;
    } else {
        s = builtin_scenario(src.builtin.empty() ? "blank600" : src.builtin);
    }
    if (o.delta) s.sensing.delta = *o.delta;
    if (o.lambda) s.sensing.lambda = *o.lambda;
    if (o.theta) s.theta = *o.theta;
    if (o.agents) s.solver.agents = *o.agents;
    if (o.pitch) {
        s.ground.pitch = *o.pitch;
        s.ground.points.clear();
    }
    if (o.offset) s.ground.offset = *o.offset;
    if (o.resolution) s.resolution = *o.resolution;
    if (o.cap) s.solver.brute_force_cap = *o.cap;
    if (o.lazy) s.solver.lazy = true;
    if (o.inflation) {
        if (*o.inflation == "beta_f") {
            s.solver.inflation = Inflation::Fundamental;
        } else if (*o.inflation == "beta_e") {
            s.solver.inflation = Inflation::Elemental;
        } else {
            throw ValidationError("--inflation expects beta_f or beta_e");
        }
    }
    if (o.horizon) {
        if (*o.horizon == "full") {
            s.solver.horizon.reset();
        } else {
            s.solver.horizon = parse_count(*o.horizon, "--horizon");
        }
    }
    if (o.q) {
        s.solver.q.clear();
        if (*o.q != "all") {
            for (const std::string& item : split_list(*o.q)) {
                s.solver.q.push_back(parse_count(item, "--q"));
            }
        }
    }
    validate_scenario(s);
    return s;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("bad sweep value '" + item + "'");
        }
        if (used != item.size()) {
            throw ValidationError("bad sweep value '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<std::size_t> parse_indices(const std::string& text)
{
    std::vector<std::size_t> out;
    for (const std::string& item : split_list(text)) {
        out.push_back(parse_count(item, "--set"));
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Greedy multi-agent coverage placement with curvature-based performance bounds"};
    app.require_subcommand(1);

    Source src;
    Overrides o;
    bool timing = false;
    bool show_trace = false;
    std::string out_path;
    std::string param;
    std::string values;
    std::string agent_list;
    std::string show;

    auto* solve = app.add_subcommand("solve", "Place agents greedily and report every bound");
    add_source(solve, src);
    add_overrides(solve, o);
    solve->add_flag("--timing", timing, "Include the runtime");
    solve->add_flag("--trace", show_trace, "Print every greedy iteration");
    solve->add_option("--csv", out_path, "Also write the result row as CSV to this path");

    auto* sweep = app.add_subcommand("sweep", "Vary one parameter and tabulate the bounds as CSV");
    add_source(sweep, src);
    add_overrides(sweep, o);
    sweep->add_option("-p,--param", param, "delta, lambda, theta or N")->required();
    sweep->add_option("-v,--values", values, "Comma-separated values")->required();
    sweep->add_option("-o,--out", out_path, "Write CSV here instead of standard output");

    auto* oracle = app.add_subcommand("oracle", "Certify the bounds against brute-force optima");
    add_source(oracle, src);
    add_overrides(oracle, o);

    auto* render = app.add_subcommand("render", "Draw the coverage map as SVG");
    add_source(render, src);
    add_overrides(render, o);
    render->add_option("-o,--out", out_path, "Write SVG here instead of standard output");
    render->add_option("--set", agent_list, "Comma-separated ground indices (default: greedy solution)");

    auto* scenarios = app.add_subcommand("scenarios", "List built-in scenarios");
    scenarios->add_option("--show", show, "Print one built-in scenario in file format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*scenarios) {
            if (!show.empty()) {
                std::cout << format_scenario(builtin_scenario(show));
            } else {
                for (const Scenario& s : builtin_scenarios()) {
                    std::cout << s.name << "  obstacles " << s.obstacles.size() << "\n";
                }
            }
            return 0;
        }
        const Scenario scenario = load(src, o);
        if (*solve) {
            const SolveResult result = run_solve(scenario);
            std::cout << format_solve(result, timing, show_trace);
            if (!out_path.empty()) {
                ResultTable table;
                table.rows.push_back(result.row);
                write_file(out_path, emit_csv(table));
            }
        } else if (*sweep) {
            const std::string csv = emit_csv(run_sweep(scenario, param, parse_values(values)));
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                write_file(out_path, csv);
            }
        } else if (*oracle) {
            const OracleResult result = run_oracle(scenario);
            std::cout << format_oracle(result);
            return result.violations.empty() ? 0 : 1;
        } else if (*render) {
            const Instance inst = build_instance(scenario);
            std::vector<std::size_t> order;
            if (agent_list.empty()) {
                const GreedyTrace trace = greedy_solve(inst.ctx, scenario.solver.agents, scenario.solver.agents);
                for (const GreedyStep& step : trace.steps) {
                    order.push_back(step.index);
                }
            } else {
                order = parse_indices(agent_list);
            }
            const std::string svg = render_svg(inst.mission, inst.ctx, AgentSet(order), order);
            if (out_path.empty()) {
                std::cout << svg;
            } else {
                write_file(out_path, svg);
            }
        }
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
