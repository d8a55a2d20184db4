#include "coverbound/errors.hpp"
#include "coverbound/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

using namespace coverbound;

namespace {

const char* kExample = R"(# small test room
[mission]
outer = 0,0; 300,0; 300,300; 0,300

[obstacle]
vertices = 100,100; 200,100; 200,120; 100,120

[sensing]
delta = 150
lambda = 0.01

[blend]
theta = 0.25

[solver]
agents = 3
horizon = 6
q = 1,3,4,6
lazy = yes
inflation = beta_e
brute_force_cap = 5000

[groundset]
pitch = 100
offset = 50

[grid]
resolution = 15
)";

std::size_t error_line(const std::string& text)
{
    try {
        (void)parse_scenario(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("parse a complete scenario")
{
    const Scenario s = parse_scenario(kExample);
    REQUIRE(s.outer.size() == 4);
    CHECK(s.outer[2] == Point{300, 300});
    REQUIRE(s.obstacles.size() == 1);
    CHECK(s.obstacles[0].size() == 4);
    CHECK(s.sensing.delta == 150.0);
    CHECK(s.sensing.lambda == 0.01);
    CHECK(s.theta == 0.25);
    CHECK(s.solver.agents == 3);
    CHECK(s.solver.horizon == std::optional<std::size_t>(6));
    CHECK(s.solver.q == std::vector<std::size_t>{1, 3, 4, 6});
    CHECK(s.solver.lazy);
    CHECK(s.solver.inflation == Inflation::Elemental);
    CHECK(s.solver.brute_force_cap == 5000);
    CHECK(s.ground.pitch == 100.0);
    CHECK(s.ground.offset == std::optional<double>(50.0));
    CHECK(s.resolution == 15);
    CHECK(s.density.uniform == 1.0);

    const PreparedScenario p = prepare_scenario(s);
    // A 3x3 lattice at 50, 150, 250; the obstacle holds none of them.
    CHECK(p.ground.size() == 9);
    CHECK(p.grid.size() + 0 <= 225);
}

TEST_CASE("defaults apply to omitted sections")
{
    const Scenario s = parse_scenario("[mission]\nouter = 0,0; 600,0; 600,600; 0,600\n");
    CHECK(s.sensing.delta == 200.0);
    CHECK(s.sensing.lambda == 0.012);
    CHECK(s.theta == 0.5);
    CHECK(s.solver.agents == 10);
    CHECK_FALSE(s.solver.horizon.has_value());
    CHECK(s.solver.q.empty());
    CHECK_FALSE(s.solver.lazy);
    CHECK(s.ground.pitch == 60.0);
    CHECK(s.resolution == 60);
    CHECK(prepare_scenario(s).ground.size() == 100);
}

TEST_CASE("number syntax")
{
    const Scenario s = parse_scenario("[mission]\nouter = 0,0; 6e2,0; +600,600; 0, 600.0;\n[sensing]\ndelta = inf\n");
    CHECK(s.outer[1].x == 600.0);
    CHECK(s.outer[2].x == 600.0);
    CHECK(s.outer.size() == 4);
    CHECK(s.sensing.delta == INFINITY);
}

TEST_CASE("syntax errors carry line numbers")
{
    const std::string head = "[mission]\nouter = 0,0; 600,0; 600,600; 0,600\n";
    const std::vector<std::pair<std::string, std::size_t>> cases{
        {head + "[sensing\n", 3},
        {head + "[nonsense]\n", 3},
        {head + "[sensing]\ncolour = red\n", 4},
        {head + "[sensing]\ndelta = 1\ndelta = 2\n", 5},
        {head + "[sensing]\ndelta = abc\n", 4},
        {head + "[sensing]\ndelta =\n", 4},
        {head + "[sensing]\njust words\n", 4},
        {head + "[mission]\nouter = 0,0; 1,0; 1,1\n", 3},
        {"delta = 3\n" + head, 1},
        {head + "[solver]\nagents = -1\n", 4},
        {head + "[solver]\nagents = 2.5\n", 4},
        {head + "[solver]\nlazy = maybe\n", 4},
        {head + "[solver]\ninflation = beta_x\n", 4},
        {head + "[groundset]\npoints = 1,2,3\n", 4},
        {head + "\n\n[obstacle]\n[sensing]\n", 5},
        {"# only a comment\n", 1},
    };
    for (const auto& [text, line] : cases) {
        CAPTURE(text);
        CHECK(error_line(text) == line);
    }
}

TEST_CASE("content errors are rejected")
{
    const std::string head = "[mission]\nouter = 0,0; 600,0; 600,600; 0,600\n";
    const std::vector<std::string> bad{
        "[mission]\nouter = 0,0; 600,600; 600,0; 0,600\n",                 // self-intersecting
        head + "[obstacle]\nvertices = 500,500; 700,500; 700,700; 500,700\n", // leaves the boundary
        head + "[sensing]\ndelta = -5\n",
        head + "[sensing]\nlambda = -0.1\n",
        head + "[blend]\ntheta = 1.5\n",
        head + "[solver]\nagents = 0\n",
        head + "[solver]\nagents = 101\n",
        head + "[solver]\nagents = 5\nhorizon = 4\n",
        head + "[solver]\nagents = 5\nhorizon = 101\n",
        head + "[solver]\nagents = 5\nhorizon = 20\n",
        head + "[solver]\nagents = 5\nq = 2\n",
        head + "[solver]\nagents = 5\nhorizon = 20\nq = 1,5,25\n",
        head + "[solver]\nbrute_force_cap = 0\n",
        head + "[groundset]\npitch = 0\n",
        head + "[groundset]\npitch = 700\noffset = 650\n",
        head + "[groundset]\npoints = 1000,1000\n",
        head + "[grid]\nresolution = 0\n",
        head + "[density]\nuniform = -1\n",
        head + "[grid]\nresolution = 2\n[density]\ntable = 1,2,3\n",
        head + "[grid]\nresolution = 1\n[density]\ntable = nan\n",
    };
    for (const std::string& text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS((void)parse_scenario(text), ValidationError);
    }
    CHECK_NOTHROW((void)parse_scenario(head + "[solver]\nagents = 5\nhorizon = 20\nq = 1,5,6,10,11,15,16,20\n"));
    CHECK_NOTHROW((void)parse_scenario(head + "[grid]\nresolution = 2\n[density]\ntable = 1,2,3,0\n"));
}

TEST_CASE("builtin scenarios round trip")
{
    const std::vector<Scenario> all = builtin_scenarios();
    REQUIRE(all.size() == 3);
    CHECK(all[0].name == "blank600");
    CHECK(all[1].name == "maze600");
    CHECK(all[2].name == "general600");
    CHECK(all[0].obstacles.empty());
    CHECK(all[1].obstacles.size() == 4);
    CHECK(all[2].obstacles.size() == 5);
    for (const Scenario& s : all) {
        const std::string text = format_scenario(s);
        Scenario back = parse_scenario(text);
        CHECK(format_scenario(back) == text);
        back.name = s.name;
        CHECK(back.outer == s.outer);
        CHECK(back.obstacles == s.obstacles);
        CHECK(prepare_scenario(back).ground.size() == prepare_scenario(s).ground.size());
    }
    CHECK_THROWS_AS((void)builtin_scenario("nowhere"), ValidationError);
}

TEST_CASE("formatted numbers round trip exactly")
{
    Scenario s = builtin_scenario("blank600");
    s.sensing.lambda = 0.1 + 0.2;
    s.theta = 1.0 / 3.0;
    s.sensing.delta = INFINITY;
    s.ground.points = {{123.456789012345, 0.000001}, {599.9999999, 300}};
    s.solver.agents = 2;
    s.resolution = 3;
    s.density.table = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 1e-300};
    const Scenario back = parse_scenario(format_scenario(s));
    CHECK(back.sensing.lambda == s.sensing.lambda);
    CHECK(back.theta == s.theta);
    CHECK(back.sensing.delta == s.sensing.delta);
    CHECK(back.ground.points == s.ground.points);
    CHECK(back.density.table == s.density.table);
}

TEST_CASE("explicit points override the lattice")
{
    Scenario s = builtin_scenario("maze600");
    s.ground.points = {{50, 50}, {300, 180}, {500, 500}};
    s.solver.agents = 2;
    const PreparedScenario p = prepare_scenario(s);
    // (300,180) lies inside the first wall.
    CHECK(p.ground.size() == 2);
}

TEST_CASE("malformed inputs never crash the parser")
{
    const std::string base = format_scenario(builtin_scenario("general600"));
    // Truncations and single-byte corruptions either parse or throw ValidationError.
    for (std::size_t cut = 0; cut < base.size(); cut += 7) {
        try {
            (void)parse_scenario(base.substr(0, cut));
        } catch (const ValidationError&) {
        }
    }
    const std::string junk = "[]=,;#\n\t 0123456789.-+eEinfa";
    for (std::size_t pos = 0; pos < base.size(); pos += 5) {
        for (char c : junk) {
            std::string t = base;
            t[pos] = c;
            try {
                (void)parse_scenario(t);
            } catch (const ValidationError&) {
            }
        }
    }
    CHECK(true);
}
