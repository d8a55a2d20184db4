#include "coverbound/scenario.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace coverbound {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_number(std::string_view text, std::size_t line, std::string_view key)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::size_t parse_count(std::string_view text, std::size_t line, std::string_view key)
{
    text = trim(text);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(line, "'" + std::string(key) + "' expects a non-negative integer, got '" +
                                   std::string(text) + "'");
    }
    return value;
}

std::vector<Point> parse_points(std::string_view text, std::size_t line, std::string_view key)
{
    std::vector<Point> out;
    for (std::string_view pair : split(text, ';')) {
        if (pair.empty()) {
            continue; // tolerate a trailing separator
        }
        const auto xy = split(pair, ',');
        if (xy.size() != 2) {
            throw ParseError(line, "'" + std::string(key) + "' expects x,y pairs, got '" + std::string(pair) + "'");
        }
        out.push_back({parse_number(xy[0], line, key), parse_number(xy[1], line, key)});
    }
    if (out.empty()) {
        throw ParseError(line, "'" + std::string(key) + "' has no points");
    }
    return out;
}

bool parse_bool(std::string_view text, std::size_t line, std::string_view key)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ParseError(line, "'" + std::string(key) + "' expects true or false");
}

std::string number(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string points_text(const std::vector<Point>& pts)
{
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            out += "; ";
        }
        out += number(pts[i].x) + "," + number(pts[i].y);
    }
    return out;
}

const std::set<std::string_view>& keys_for(std::string_view section)
{
    static const std::set<std::string_view> mission{"outer"};
    static const std::set<std::string_view> obstacle{"vertices"};
    static const std::set<std::string_view> sensing{"delta", "lambda"};
    static const std::set<std::string_view> blend{"theta"};
    static const std::set<std::string_view> solver{"agents", "horizon", "q", "lazy", "inflation", "brute_force_cap"};
    static const std::set<std::string_view> groundset{"pitch", "offset", "points"};
    static const std::set<std::string_view> grid{"resolution"};
    static const std::set<std::string_view> density{"uniform", "table"};
    static const std::set<std::string_view> none;
    if (section == "mission") return mission;
    if (section == "obstacle") return obstacle;
    if (section == "sensing") return sensing;
    if (section == "blend") return blend;
    if (section == "solver") return solver;
    if (section == "groundset") return groundset;
    if (section == "grid") return grid;
    if (section == "density") return density;
    return none;
}

Scenario square_base(std::string name)
{
    Scenario s;
    s.name = std::move(name);
    s.outer = {{0, 0}, {600, 0}, {600, 600}, {0, 600}};
    return s;
}

std::vector<Point> rect(double x0, double y0, double x1, double y1)
{
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    Scenario s;
    std::string section;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;
    bool have_mission = false;
    std::size_t obstacle_line = 0;
    bool obstacle_open = false;

    auto close_obstacle = [&]() {
        if (obstacle_open && s.obstacles.back().empty()) {
            throw ParseError(obstacle_line, "obstacle section without vertices");
        }
        obstacle_open = false;
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(line_no, "malformed section header '" + std::string(line) + "'");
            }
            close_obstacle();
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (keys_for(section).empty()) {
                throw ParseError(line_no, "unknown section [" + section + "]");
            }
            if (section == "obstacle") {
                s.obstacles.emplace_back();
                obstacle_open = true;
                obstacle_line = line_no;
            } else if (!seen_sections.insert(section).second) {
                throw ParseError(line_no, "section [" + section + "] appears twice");
            }
            seen_keys.clear();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ParseError(line_no, "key '" + key + "' outside any section");
        }
        if (!keys_for(section).count(key)) {
            throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
        }
        if (!seen_keys.insert(key).second) {
            throw ParseError(line_no, "key '" + key + "' repeated in [" + section + "]");
        }
        if (value.empty()) {
            throw ParseError(line_no, "key '" + key + "' has no value");
        }

        if (section == "mission") {
            s.outer = parse_points(value, line_no, key);
            have_mission = true;
        } else if (section == "obstacle") {
            s.obstacles.back() = parse_points(value, line_no, key);
        } else if (section == "sensing") {
            (key == "delta" ? s.sensing.delta : s.sensing.lambda) = parse_number(value, line_no, key);
        } else if (section == "blend") {
            s.theta = parse_number(value, line_no, key);
        } else if (section == "solver") {
            if (key == "agents") {
                s.solver.agents = parse_count(value, line_no, key);
            } else if (key == "horizon") {
                if (value == "full") {
                    s.solver.horizon.reset();
                } else {
                    s.solver.horizon = parse_count(value, line_no, key);
                }
            } else if (key == "q") {
                s.solver.q.clear();
                if (value != "all") {
                    for (std::string_view item : split(value, ',')) {
                        s.solver.q.push_back(parse_count(item, line_no, key));
                    }
                }
            } else if (key == "lazy") {
                s.solver.lazy = parse_bool(value, line_no, key);
            } else if (key == "inflation") {
                if (value == "beta_f") {
                    s.solver.inflation = Inflation::Fundamental;
                } else if (value == "beta_e") {
                    s.solver.inflation = Inflation::Elemental;
                } else {
                    throw ParseError(line_no, "'inflation' expects beta_f or beta_e");
                }
            } else {
                s.solver.brute_force_cap = parse_count(value, line_no, key);
            }
        } else if (section == "groundset") {
            if (key == "pitch") {
                s.ground.pitch = parse_number(value, line_no, key);
            } else if (key == "offset") {
                s.ground.offset = parse_number(value, line_no, key);
            } else {
                s.ground.points = parse_points(value, line_no, key);
            }
        } else if (section == "grid") {
            s.resolution = parse_count(value, line_no, key);
        } else if (section == "density") {
            if (key == "uniform") {
                s.density.uniform = parse_number(value, line_no, key);
            } else {
                for (std::string_view item : split(value, ',')) {
                    s.density.table.push_back(parse_number(item, line_no, key));
                }
            }
        }
    }
    close_obstacle();
    if (!have_mission) {
        throw ParseError(std::max<std::size_t>(line_no, 1), "missing [mission] section");
    }
    validate_scenario(s);
    return s;
}

std::string format_scenario(const Scenario& s)
{
    std::ostringstream out;
    out << "[mission]\nouter = " << points_text(s.outer) << "\n";
    for (const auto& ob : s.obstacles) {
        out << "\n[obstacle]\nvertices = " << points_text(ob) << "\n";
    }
    out << "\n[sensing]\ndelta = " << number(s.sensing.delta) << "\nlambda = " << number(s.sensing.lambda) << "\n";
    out << "\n[blend]\ntheta = " << number(s.theta) << "\n";
    out << "\n[solver]\nagents = " << s.solver.agents << "\n";
    out << "horizon = " << (s.solver.horizon ? std::to_string(*s.solver.horizon) : std::string("full")) << "\n";
    out << "q = ";
    if (s.solver.q.empty()) {
        out << "all";
    }
    for (std::size_t i = 0; i < s.solver.q.size(); ++i) {
        out << (i > 0 ? "," : "") << s.solver.q[i];
    }
    out << "\nlazy = " << (s.solver.lazy ? "true" : "false") << "\n";
    out << "inflation = " << (s.solver.inflation == Inflation::Elemental ? "beta_e" : "beta_f") << "\n";
    out << "brute_force_cap = " << s.solver.brute_force_cap << "\n";
    out << "\n[groundset]\n";
    if (s.ground.points.empty()) {
        out << "pitch = " << number(s.ground.pitch) << "\n";
        if (s.ground.offset) {
            out << "offset = " << number(*s.ground.offset) << "\n";
        }
    } else {
        out << "points = " << points_text(s.ground.points) << "\n";
    }
    out << "\n[grid]\nresolution = " << s.resolution << "\n";
    out << "\n[density]\nuniform = " << number(s.density.uniform) << "\n";
    if (!s.density.table.empty()) {
        out << "table = ";
        for (std::size_t i = 0; i < s.density.table.size(); ++i) {
            out << (i > 0 ? "," : "") << number(s.density.table[i]);
        }
        out << "\n";
    }
    return out.str();
}

PreparedScenario prepare_scenario(const Scenario& s)
{
    std::vector<Polygon> obstacles;
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        try {
            obstacles.emplace_back(s.obstacles[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("obstacle " + std::to_string(i) + ": " + e.what());
        }
    }
    MissionSpace mission(Polygon(s.outer), std::move(obstacles));

    s.sensing.validate();
    (void)DetectionBlend(s.theta);

    if (s.resolution < 1) {
        throw ValidationError("grid resolution must be at least 1");
    }
    if (!(s.density.uniform >= 0.0) || !std::isfinite(s.density.uniform)) {
        throw ValidationError("density must be finite and non-negative");
    }
    if (!s.density.table.empty()) {
        if (s.density.table.size() != s.resolution * s.resolution) {
            throw ValidationError("density table has " + std::to_string(s.density.table.size()) +
                                  " entries, expected resolution^2 = " +
                                  std::to_string(s.resolution * s.resolution));
        }
        for (double v : s.density.table) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ValidationError("density table entries must be finite and non-negative");
            }
        }
    }

    GroundSet ground = s.ground.points.empty()
                           ? generate_ground_set(mission, GridSpec{s.ground.pitch, s.ground.offset})
                           : generate_ground_set(mission, s.ground.points);
    IntegrationGrid grid = generate_integration_grid(mission, s.resolution, s.density);

    const std::size_t m = ground.size();
    const std::size_t n = s.solver.agents;
    if (n < 1) {
        throw ValidationError("agents must be at least 1");
    }
    if (n > m) {
        throw ValidationError("agents = " + std::to_string(n) + " exceeds the ground set size " + std::to_string(m));
    }
    const std::size_t horizon = s.solver.horizon.value_or(m);
    if (horizon < n || horizon > m) {
        throw ValidationError("horizon must lie in [agents, M] = [" + std::to_string(n) + ", " + std::to_string(m) +
                              "], got " + std::to_string(horizon));
    }
    if (!s.solver.q.empty()) {
        const auto full = extended_index_set(m, n);
        for (std::size_t i : s.solver.q) {
            if (!std::binary_search(full.begin(), full.end(), i)) {
                throw ValidationError("q index " + std::to_string(i) + " is not in the extended greedy index set");
            }
            if (i > horizon) {
                throw ValidationError("q index " + std::to_string(i) + " exceeds the horizon " +
                                      std::to_string(horizon));
            }
        }
    } else if (horizon < m) {
        throw ValidationError("the full index set needs horizon = M; set q explicitly for a shorter horizon");
    }
    if (s.solver.brute_force_cap < 1) {
        throw ValidationError("brute_force_cap must be at least 1");
    }
    return {std::move(mission), std::move(ground), std::move(grid)};
}

void validate_scenario(const Scenario& s)
{
    (void)prepare_scenario(s);
}

Instance build_instance(const Scenario& s, std::size_t matrix_cap_bytes)
{
    PreparedScenario p = prepare_scenario(s);
    SensingMatrix matrix = build_sensing_matrix(p.grid, p.ground, s.sensing, p.mission, matrix_cap_bytes);
    CoverageContext ctx(std::move(matrix), std::move(p.grid), std::move(p.ground), DetectionBlend(s.theta));
    return {std::move(p.mission), std::move(ctx)};
}

std::vector<Scenario> builtin_scenarios()
{
    std::vector<Scenario> out;
    out.push_back(square_base("blank600"));

    Scenario maze = square_base("maze600");
    maze.obstacles = {
        rect(0, 170, 430, 190),
        rect(170, 410, 600, 430),
        rect(290, 260, 310, 410),
        rect(110, 280, 130, 410),
    };
    out.push_back(std::move(maze));

    Scenario general = square_base("general600");
    general.obstacles = {
        {{100, 300}, {200, 260}, {160, 380}},
        rect(350, 80, 450, 140),
        {{410, 330}, {500, 350}, {510, 430}, {450, 470}, {400, 420}},
        rect(120, 470, 190, 540),
        {{240, 130}, {280, 110}, {300, 160}, {260, 200}},
    };
    out.push_back(std::move(general));
    return out;
}

Scenario builtin_scenario(std::string_view name)
{
    for (Scenario& s : builtin_scenarios()) {
        if (s.name == name) {
            return s;
        }
    }
    throw ValidationError("unknown builtin scenario '" + std::string(name) + "'");
}

} // namespace coverbound
