#pragma once

#include "coverbound/coverage.hpp"
#include "coverbound/curvature.hpp"
#include "coverbound/geometry.hpp"
#include "coverbound/sensing.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coverbound {

struct SolverSpec
{
    std::size_t agents = 10;
    std::optional<std::size_t> horizon; // unset = M
    std::vector<std::size_t> q;         // empty = full index set
    bool lazy = false;
    Inflation inflation = Inflation::Fundamental;
    std::size_t brute_force_cap = kDefaultBruteForceCap;
};

struct GroundSpec
{
    double pitch = 60.0;
    std::optional<double> offset;
    // Explicit candidate points; when non-empty the lattice is ignored.
    std::vector<Point> points;
};

struct Scenario
{
    std::string name; // not part of the file format
    std::vector<Point> outer;
    std::vector<std::vector<Point>> obstacles;
    SensingModel sensing{200.0, 0.012};
    double theta = 0.5;
    SolverSpec solver;
    GroundSpec ground;
    std::size_t resolution = 60;
    DensitySpec density;
};

// Parses and fully validates a scenario file. Throws ParseError for syntax
// problems and ValidationError for rejected content.
[[nodiscard]] Scenario parse_scenario(std::string_view text);
[[nodiscard]] std::string format_scenario(const Scenario& s);

// The geometry, candidates and quadrature grid described by a scenario.
struct PreparedScenario
{
    MissionSpace mission;
    GroundSet ground;
    IntegrationGrid grid;
};

// Runs every check the solver relies on; throws ValidationError.
[[nodiscard]] PreparedScenario prepare_scenario(const Scenario& s);
void validate_scenario(const Scenario& s);

struct Instance
{
    MissionSpace mission;
    CoverageContext ctx;
};

[[nodiscard]] Instance build_instance(const Scenario& s, std::size_t matrix_cap_bytes = kDefaultMatrixCapBytes);

[[nodiscard]] std::vector<Scenario> builtin_scenarios();
// Throws ValidationError for an unknown name.
[[nodiscard]] Scenario builtin_scenario(std::string_view name);

} // namespace coverbound
