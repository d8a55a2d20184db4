#pragma once

#include "coverbound/curvature.hpp"
#include "coverbound/greedy.hpp"
#include "coverbound/scenario.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coverbound {

// One line of a results table. Bounds are stored already rounded to three
// decimals (half to even), so a table survives a CSV round trip unchanged.
struct ResultRow
{
    double param = 0.0;
    double beta_f = 0.0;
    std::optional<double> beta_t; // unset when undefined on the instance
    double beta_g = 0.0;
    double beta_e = 0.0;
    std::optional<double> beta_p;
    double beta_u = 0.0;
    double h_greedy = 0.0;
    double runtime_ms = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable
{
    std::vector<ResultRow> rows;

    friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

inline constexpr std::string_view kCsvHeader = "param,beta_f,beta_t,beta_g,beta_e,beta_p,beta_u,H_greedy,runtime_ms";

// Half-to-even rounding to three decimals.
[[nodiscard]] double round3(double v);

[[nodiscard]] std::string emit_csv(const ResultTable& table);
// Throws ParseError on malformed input.
[[nodiscard]] ResultTable parse_csv(std::string_view text);

struct SolveOptions
{
    std::size_t matrix_cap_bytes = kDefaultMatrixCapBytes;
};

struct SolveResult
{
    Scenario scenario;
    std::size_t ground_size = 0;
    std::size_t grid_size = 0;
    GreedyTrace trace;
    CurvatureReport report;
    std::vector<Point> agent_positions; // in selection order
    ResultRow row;
};

[[nodiscard]] ResultRow make_row(double param, const CurvatureReport& report, double h_greedy, double runtime_ms);

[[nodiscard]] SolveResult run_solve(const Scenario& scenario, const SolveOptions& options = {});

// Human-readable summary. Runtime is included only with `timing`, so the
// default output is identical across runs.
[[nodiscard]] std::string format_solve(const SolveResult& result, bool timing = false, bool trace = false);

// parameter is one of delta, lambda, theta, N.
[[nodiscard]] ResultTable run_sweep(const Scenario& base, std::string_view parameter,
                                    const std::vector<double>& values, const SolveOptions& options = {});

// Applies one sweep value to a scenario (validated later).
void apply_parameter(Scenario& s, std::string_view parameter, double value);

struct OracleResult
{
    double h_greedy = 0.0;
    OptimumResult optimum;
    double ratio = 1.0; // H(S^G) / H(S*)
    CurvatureReport report;
    std::optional<ExactCurvature> elemental; // when M is small enough
    std::optional<ExactCurvature> partial;
    std::vector<std::string> violations;
};

[[nodiscard]] OracleResult run_oracle(const Scenario& scenario, const SolveOptions& options = {});
[[nodiscard]] std::string format_oracle(const OracleResult& result);

} // namespace coverbound
