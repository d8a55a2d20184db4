#include "coverbound/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace coverbound {

namespace {

std::string num(double v)
{
    if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite coordinate in SVG output");
    }
    // Round to 1e-6 so the document stays compact; -0 prints as 0.
    v = std::round(v * 1e6) / 1e6 + 0.0;
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string ramp(double t)
{
    t = std::clamp(t, 0.0, 1.0);
    constexpr std::array<double, 3> lo{247, 251, 255};
    constexpr std::array<double, 3> hi{8, 48, 107};
    std::array<char, 8> buf{};
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", static_cast<int>(std::lround(lo[0] + t * (hi[0] - lo[0]))),
                  static_cast<int>(std::lround(lo[1] + t * (hi[1] - lo[1]))),
                  static_cast<int>(std::lround(lo[2] + t * (hi[2] - lo[2]))));
    return buf.data();
}

} // namespace

std::string render_svg(const MissionSpace& mission, const CoverageContext& ctx, const AgentSet& agents,
                       std::span<const std::size_t> order)
{
    ctx.check(agents);
    const BoundingBox& box = mission.bounds();
    const double top = box.max.y;
    auto sx = [&](double x) { return num(x - box.min.x); };
    auto sy = [&](double y) { return num(top - y); };
    auto points_attr = [&](const Polygon& poly) {
        std::string s;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            s += (i > 0 ? " " : "") + sx(poly.vertex(i).x) + "," + sy(poly.vertex(i).y);
        }
        return s;
    };

    const DetectionState state(ctx, agents);
    const IntegrationGrid& grid = ctx.grid();
    const double theta = ctx.theta();

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(box.width()) << " " << num(box.height())
        << "\" width=\"" << num(box.width()) << "\" height=\"" << num(box.height()) << "\">\n";
    out << "<g id=\"coverage\" stroke=\"none\">\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point p = grid.points[k];
        const double prob = theta * (1.0 - state.miss()[k]) + (1.0 - theta) * state.best()[k];
        if (grid.cell_width > 0.0 && grid.cell_height > 0.0) {
            out << "<rect x=\"" << sx(p.x - 0.5 * grid.cell_width) << "\" y=\"" << sy(p.y + 0.5 * grid.cell_height)
                << "\" width=\"" << num(grid.cell_width) << "\" height=\"" << num(grid.cell_height) << "\" fill=\""
                << ramp(prob) << "\"/>\n";
        } else {
            out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << ramp(prob)
                << "\"/>\n";
        }
    }
    out << "</g>\n";
    out << "<polygon id=\"boundary\" points=\"" << points_attr(mission.outer())
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    out << "<g id=\"obstacles\" fill=\"#1b5e20\" stroke=\"#0d3311\">\n";
    for (const Polygon& ob : mission.obstacles()) {
        out << "<polygon points=\"" << points_attr(ob) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g id=\"ground\" fill=\"#000000\">\n";
    for (const Point& g : ctx.ground().points) {
        out << "<circle cx=\"" << sx(g.x) << "\" cy=\"" << sy(g.y) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n";

    std::vector<std::size_t> numbering(order.begin(), order.end());
    if (numbering.empty()) {
        numbering.assign(agents.begin(), agents.end());
    }
    if (AgentSet(numbering) != agents) {
        throw std::invalid_argument("agent numbering does not match the agent set");
    }
    out << "<g id=\"agents\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n";
    for (std::size_t i = 0; i < numbering.size(); ++i) {
        const Point a = ctx.ground().points[numbering[i]];
        out << "<circle cx=\"" << sx(a.x) << "\" cy=\"" << sy(a.y)
            << "\" r=\"8\" fill=\"#ff69b4\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << sx(a.x) << "\" y=\"" << num(top - a.y + 3.5) << "\">" << (i + 1) << "</text>\n";
    }
    out << "</g>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace coverbound
