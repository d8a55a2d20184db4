#include "coverbound/experiment.hpp"

#include "coverbound/errors.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace coverbound {

namespace {

std::string shortest(double v)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string fixed3(double v)
{
    std::array<char, 48> buf{};
    std::snprintf(buf.data(), buf.size(), "%.3f", v);
    return buf.data();
}

std::string optional3(const std::optional<double>& v)
{
    return v ? fixed3(*v) : std::string("NA");
}

double csv_number(std::string_view field, std::size_t line)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, "bad CSV number '" + std::string(field) + "'");
    }
    return value;
}

std::optional<double> csv_optional(std::string_view field, std::size_t line)
{
    if (field == "NA") {
        return std::nullopt;
    }
    return csv_number(field, line);
}

} // namespace

double round3(double v)
{
    return std::nearbyint(v * 1000.0) / 1000.0;
}

std::string emit_csv(const ResultTable& table)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const ResultRow& r : table.rows) {
        out += shortest(r.param) + ',' + fixed3(r.beta_f) + ',' + optional3(r.beta_t) + ',' + fixed3(r.beta_g) + ',' +
               fixed3(r.beta_e) + ',' + optional3(r.beta_p) + ',' + fixed3(r.beta_u) + ',' + shortest(r.h_greedy) +
               ',' + fixed3(r.runtime_ms) + '\n';
    }
    return out;
}

ResultTable parse_csv(std::string_view text)
{
    ResultTable table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool header = false;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        const std::string_view line =
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (!header) {
            if (line != kCsvHeader) {
                throw ParseError(line_no, "unexpected CSV header");
            }
            header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t s = 0;
        for (;;) {
            const auto comma = line.find(',', s);
            f.push_back(line.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
            if (comma == std::string_view::npos) {
                break;
            }
            s = comma + 1;
        }
        if (f.size() != 9) {
            throw ParseError(line_no, "expected 9 CSV fields, got " + std::to_string(f.size()));
        }
        ResultRow r;
        r.param = csv_number(f[0], line_no);
        r.beta_f = csv_number(f[1], line_no);
        r.beta_t = csv_optional(f[2], line_no);
        r.beta_g = csv_number(f[3], line_no);
        r.beta_e = csv_number(f[4], line_no);
        r.beta_p = csv_optional(f[5], line_no);
        r.beta_u = csv_number(f[6], line_no);
        r.h_greedy = csv_number(f[7], line_no);
        r.runtime_ms = csv_number(f[8], line_no);
        table.rows.push_back(r);
    }
    if (!header) {
        throw ParseError(1, "empty CSV");
    }
    return table;
}

ResultRow make_row(double param, const CurvatureReport& report, double h_greedy, double runtime_ms)
{
    ResultRow r;
    r.param = param;
    r.beta_f = round3(report.beta_f);
    if (report.total) {
        r.beta_t = round3(report.total->beta);
    }
    r.beta_g = round3(report.greedy.beta);
    r.beta_e = round3(report.elemental.beta);
    if (report.partial) {
        r.beta_p = round3(report.partial->beta);
    }
    r.beta_u = round3(report.extended ? report.extended->beta : report.beta_f);
    r.h_greedy = h_greedy;
    r.runtime_ms = round3(runtime_ms);
    return r;
}

SolveResult run_solve(const Scenario& scenario, const SolveOptions& options)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Instance inst = build_instance(scenario, options.matrix_cap_bytes);
    const CoverageContext& ctx = inst.ctx;
    SolveResult out;
    out.scenario = scenario;
    out.ground_size = ctx.ground_size();
    out.grid_size = ctx.grid_size();
    GreedyOptions greedy;
    greedy.lazy = scenario.solver.lazy;
    out.trace = greedy_solve(ctx, scenario.solver.agents, scenario.solver.horizon.value_or(ctx.ground_size()), greedy);
    AnalysisOptions analysis;
    analysis.q = scenario.solver.q;
    analysis.inflation = scenario.solver.inflation;
    out.report = analyze(ctx, out.trace, analysis);
    const auto t1 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < out.trace.agents; ++i) {
        out.agent_positions.push_back(ctx.ground().points[out.trace.steps[i].index]);
    }
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.row = make_row(0.0, out.report, out.trace.solution_value(), ms);
    return out;
}

std::string format_solve(const SolveResult& result, bool timing, bool trace)
{
    std::ostringstream out;
    const CurvatureReport& r = result.report;
    if (!result.scenario.name.empty()) {
        out << "scenario " << result.scenario.name << "\n";
    }
    out << "ground points " << result.ground_size << ", grid points " << result.grid_size << ", agents "
        << result.trace.agents << ", horizon " << result.trace.horizon() << "\n";
    out << "H_greedy " << shortest(result.trace.solution_value()) << "\n";
    out << "agents";
    for (std::size_t i = 0; i < result.agent_positions.size(); ++i) {
        out << (i == 0 ? " " : "; ") << result.trace.steps[i].index << " (" << shortest(result.agent_positions[i].x)
            << "," << shortest(result.agent_positions[i].y) << ")";
    }
    out << "\n";
    out << "beta_f " << fixed3(r.beta_f) << "\n";
    if (r.total) {
        out << "beta_t " << fixed3(r.total->beta) << "  alpha_t " << shortest(r.total->alpha) << "  gamma_t "
            << shortest(*r.gamma_t()) << "\n";
    } else {
        out << "beta_t NA\n";
    }
    out << "beta_g " << fixed3(r.greedy.beta) << "  alpha_g " << shortest(r.greedy.alpha) << "  gamma_g "
        << shortest(r.gamma_g());
    if (r.greedy.skipped > 0) {
        out << "  skipped " << r.greedy.skipped;
    }
    out << "\n";
    out << "beta_e " << fixed3(r.elemental.beta) << "  alpha_e_upper " << shortest(r.elemental.alpha) << "\n";
    if (r.partial) {
        out << "beta_p " << fixed3(r.partial->beta) << "  alpha_p_upper " << shortest(r.partial->alpha)
            << (r.partial->clamped ? "  clamped" : "") << "\n";
    } else {
        out << "beta_p NA\n";
    }
    if (r.extended) {
        out << "beta_u " << fixed3(r.extended->beta) << "  alpha_u " << shortest(r.extended->alpha)
            << (r.extended->clamped ? "  clamped" : "") << "\n";
    }
    out << "best " << r.best_name() << " " << fixed3(r.best_bound()) << "\n";
    for (const std::string& note : r.notes) {
        out << "note: " << note << "\n";
    }
    if (trace) {
        out << "trace\n";
        for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
            const GreedyStep& s = result.trace.steps[i];
            out << "  " << (i + 1) << " " << s.index << " gain " << shortest(s.gain) << " H " << shortest(s.value)
                << "\n";
        }
        if (r.extended) {
            out << "alpha_u terms\n";
            for (const ExtendedTerm& t : r.extended->terms) {
                out << "  " << t.index << " " << shortest(t.value) << "\n";
            }
        }
    }
    if (timing) {
        out << "runtime_ms " << fixed3(result.row.runtime_ms) << "\n";
    }
    return out.str();
}

void apply_parameter(Scenario& s, std::string_view parameter, double value)
{
    if (parameter == "delta") {
        s.sensing.delta = value;
    } else if (parameter == "lambda") {
        s.sensing.lambda = value;
    } else if (parameter == "theta") {
        s.theta = value;
    } else if (parameter == "N") {
        if (!(value >= 1.0) || value != std::floor(value) || value > 1e9) {
            throw ValidationError("N sweep values must be positive integers");
        }
        s.solver.agents = static_cast<std::size_t>(value);
    } else {
        throw ValidationError("unknown sweep parameter '" + std::string(parameter) + "' (delta, lambda, theta, N)");
    }
}

ResultTable run_sweep(const Scenario& base, std::string_view parameter, const std::vector<double>& values,
                      const SolveOptions& options)
{
    if (values.empty()) {
        throw ValidationError("sweep needs at least one value");
    }
    ResultTable table;
    for (double v : values) {
        Scenario s = base;
        apply_parameter(s, parameter, v);
        SolveResult res = run_solve(s, options);
        res.row.param = v;
        table.rows.push_back(res.row);
    }
    return table;
}

OracleResult run_oracle(const Scenario& scenario, const SolveOptions& options)
{
    const Instance inst = build_instance(scenario, options.matrix_cap_bytes);
    const CoverageContext& ctx = inst.ctx;
    const std::size_t m = ctx.ground_size();
    const std::size_t n = scenario.solver.agents;
    OracleResult out;
    out.optimum = brute_force_optimum(ctx, n, scenario.solver.brute_force_cap);
    GreedyOptions greedy;
    greedy.lazy = scenario.solver.lazy;
    const GreedyTrace trace = greedy_solve(ctx, n, scenario.solver.horizon.value_or(m), greedy);
    AnalysisOptions analysis;
    analysis.q = scenario.solver.q;
    analysis.inflation = scenario.solver.inflation;
    out.report = analyze(ctx, trace, analysis);
    out.h_greedy = trace.solution_value();
    out.ratio = out.optimum.value > 0.0 ? out.h_greedy / out.optimum.value : 1.0;

    const double limit = out.ratio + 1e-9;
    auto check = [&](const char* name, double beta) {
        if (beta > limit) {
            out.violations.push_back(std::string(name) + " " + shortest(beta) + " exceeds the greedy ratio " +
                                     shortest(out.ratio));
        }
    };
    const CurvatureReport& r = out.report;
    check("beta_f", r.beta_f);
    if (r.total) {
        check("beta_t", r.total->beta);
    }
    check("beta_g", r.greedy.beta);
    check("beta_e", r.elemental.beta);
    if (r.partial) {
        check("beta_p", r.partial->beta);
    }
    if (r.extended) {
        check("beta_u", r.extended->beta);
    }
    if (m <= 10) {
        out.elemental = brute_force_elemental(ctx);
        if (r.elemental.alpha < out.elemental->alpha - 1e-12) {
            out.violations.push_back("alpha_e upper bound below the exact value");
        }
    }
    if (binomial(m - 1, n - 1) <= scenario.solver.brute_force_cap / m) {
        out.partial = brute_force_partial(ctx, n, scenario.solver.brute_force_cap);
        if (r.partial && r.partial->alpha < out.partial->alpha - 1e-12) {
            out.violations.push_back("alpha_p upper bound below the exact value");
        }
    }
    return out;
}

std::string format_oracle(const OracleResult& result)
{
    std::ostringstream out;
    out << "H_greedy " << shortest(result.h_greedy) << "\n";
    out << "H_optimal " << shortest(result.optimum.value) << " (" << result.optimum.evaluated << " subsets)\n";
    out << "optimal set";
    for (std::size_t i : result.optimum.set) {
        out << " " << i;
    }
    out << "\n";
    out << "ratio " << shortest(result.ratio) << "\n";
    const CurvatureReport& r = result.report;
    out << "beta_f " << fixed3(r.beta_f) << "\n";
    out << "beta_t " << (r.total ? fixed3(r.total->beta) : "NA") << "\n";
    out << "beta_g " << fixed3(r.greedy.beta) << "\n";
    out << "beta_e " << fixed3(r.elemental.beta) << "\n";
    out << "beta_p " << (r.partial ? fixed3(r.partial->beta) : "NA") << "\n";
    if (r.extended) {
        out << "beta_u " << fixed3(r.extended->beta) << "\n";
    }
    if (result.elemental) {
        out << "alpha_e exact " << shortest(result.elemental->alpha) << " upper " << shortest(r.elemental.alpha)
            << "\n";
    }
    if (result.partial) {
        out << "alpha_p exact " << shortest(result.partial->alpha) << " upper "
            << (r.partial ? shortest(r.partial->alpha) : "NA") << "\n";
    }
    if (result.violations.empty()) {
        out << "all bounds certified\n";
    }
    for (const std::string& v : result.violations) {
        out << "VIOLATION " << v << "\n";
    }
    return out.str();
}

} // namespace coverbound
