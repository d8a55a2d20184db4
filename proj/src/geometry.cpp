#include "coverbound/geometry.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coverbound {

namespace {

double cross(Point o, Point a, Point b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Signed distance of c from the directed line through a and b.
double side(Point a, Point b, Point c)
{
    const double len = distance(a, b);
    if (len == 0.0) {
        return distance(a, c);
    }
    return cross(a, b, c) / len;
}

double segment_distance(Point p, Point a, Point b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) {
        return distance(p, a);
    }
    const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

bool on_segment(Point p, Point a, Point b)
{
    return segment_distance(p, a, b) <= kGeoEps;
}

bool opposite(double s1, double s2)
{
    return (s1 > kGeoEps && s2 < -kGeoEps) || (s1 < -kGeoEps && s2 > kGeoEps);
}

// Segments cross at a single point interior to both.
bool proper_cross(Point a, Point b, Point c, Point d)
{
    return opposite(side(c, d, a), side(c, d, b)) && opposite(side(a, b, c), side(a, b, d));
}

bool touches(Point a, Point b, Point c, Point d)
{
    return proper_cross(a, b, c, d) || on_segment(a, c, d) || on_segment(b, c, d) ||
           on_segment(c, a, b) || on_segment(d, a, b);
}

double signed_area(std::span<const Point> v)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

bool point_in_triangle(Point p, Point a, Point b, Point c)
{
    return cross(a, b, p) >= 0.0 && cross(b, c, p) >= 0.0 && cross(c, a, p) >= 0.0;
}

bool is_convex(const Polygon& poly)
{
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (side(poly.vertex(i), poly.vertex(i + 1), poly.vertex(i + 2)) < -kGeoEps) {
            return false;
        }
    }
    return true;
}

} // namespace

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw ValidationError("polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (const Point& p : vertices_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw ValidationError("polygon vertex is not finite");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(vertices_[i], vertices_[(i + 1) % n]) <= kGeoEps) {
            throw ValidationError("polygon has consecutive duplicate vertices at index " +
                                  std::to_string(i));
        }
    }
    const double a = signed_area(vertices_);
    if (std::abs(a) <= kGeoEps) {
        throw ValidationError("polygon is degenerate (zero area)");
    }
    if (a < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Point a0 = vertex(i);
        const Point a1 = vertex(i + 1);
        // Adjacent edges may only share their common vertex.
        const Point next = vertex(i + 2);
        if (on_segment(next, a0, a1) || on_segment(a0, a1, next)) {
            throw ValidationError("polygon folds back on itself at vertex " +
                                  std::to_string((i + 1) % n));
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            if (touches(a0, a1, vertex(j), vertex(j + 1))) {
                throw ValidationError("polygon is not simple: edges " + std::to_string(i) + " and " +
                                      std::to_string(j) + " intersect");
            }
        }
    }
}

double Polygon::area() const
{
    return signed_area(vertices_);
}

BoundingBox Polygon::bounds() const
{
    BoundingBox box{vertices_.front(), vertices_.front()};
    for (const Point& p : vertices_) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

bool Polygon::on_boundary(Point p) const
{
    for (std::size_t i = 0; i < size(); ++i) {
        if (on_segment(p, vertex(i), vertex(i + 1))) {
            return true;
        }
    }
    return false;
}

bool Polygon::contains_strict(Point p) const
{
    if (on_boundary(p)) {
        return false;
    }
    bool inside = false;
    for (std::size_t i = 0, j = size() - 1; i < size(); j = i++) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) {
                inside = !inside;
            }
        }
    }
    return inside;
}

Point Polygon::interior_point() const
{
    // Centroid of an ear: a convex vertex whose triangle holds no other vertex.
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point u = vertex(i + n - 1);
        const Point v = vertex(i);
        const Point w = vertex(i + 1);
        if (cross(u, v, w) <= 0.0) {
            continue;
        }
        bool empty = true;
        for (std::size_t k = 0; k < n && empty; ++k) {
            const Point q = vertices_[k];
            if (q == u || q == v || q == w) {
                continue;
            }
            empty = !point_in_triangle(q, u, v, w);
        }
        if (empty) {
            return Point{(u.x + v.x + w.x) / 3.0, (u.y + v.y + w.y) / 3.0};
        }
    }
    // Unreachable for simple polygons (two-ears theorem).
    throw ValidationError("polygon has no ear");
}

MissionSpace::MissionSpace(Polygon outer, std::vector<Polygon> obstacles)
    : outer_(std::move(outer)), obstacles_(std::move(obstacles)), bounds_(outer_.bounds())
{
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
        const Polygon& ob = obstacles_[i];
        const std::string tag = "obstacle " + std::to_string(i);
        for (const Point& v : ob.vertices()) {
            if (!outer_.contains(v)) {
                throw ValidationError(tag + " has a vertex outside the mission polygon");
            }
        }
        for (std::size_t e = 0; e < ob.size(); ++e) {
            for (std::size_t f = 0; f < outer_.size(); ++f) {
                if (proper_cross(ob.vertex(e), ob.vertex(e + 1), outer_.vertex(f), outer_.vertex(f + 1))) {
                    throw ValidationError(tag + " crosses the mission polygon boundary");
                }
            }
        }
        for (std::size_t j = 0; j < i; ++j) {
            const Polygon& other = obstacles_[j];
            const std::string pair = "obstacles " + std::to_string(j) + " and " + std::to_string(i);
            for (std::size_t e = 0; e < ob.size(); ++e) {
                const Point a = ob.vertex(e);
                const Point b = ob.vertex(e + 1);
                const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
                if (other.contains_strict(a) || other.contains_strict(mid)) {
                    throw ValidationError(pair + " overlap");
                }
                for (std::size_t f = 0; f < other.size(); ++f) {
                    if (proper_cross(a, b, other.vertex(f), other.vertex(f + 1))) {
                        throw ValidationError(pair + " overlap");
                    }
                }
            }
            for (const Point& v : other.vertices()) {
                if (ob.contains_strict(v)) {
                    throw ValidationError(pair + " overlap");
                }
            }
            if (other.contains_strict(ob.interior_point()) || ob.contains_strict(other.interior_point())) {
                throw ValidationError(pair + " overlap");
            }
        }
    }
}

double MissionSpace::feasible_area() const
{
    double a = outer_.area();
    for (const Polygon& ob : obstacles_) {
        a -= ob.area();
    }
    return a;
}

bool is_feasible(Point p, const MissionSpace& m)
{
    if (!m.outer().contains(p)) {
        return false;
    }
    return std::none_of(m.obstacles().begin(), m.obstacles().end(),
                        [&](const Polygon& ob) { return ob.contains_strict(p); });
}

bool line_of_sight(Point a, Point b, const MissionSpace& m)
{
    const double len = distance(a, b);
    if (len <= kGeoEps) {
        return true;
    }
    if (m.obstacles().empty() && is_convex(m.outer())) {
        return m.outer().contains(a) && m.outer().contains(b);
    }

    // Parameters along ab where the segment meets a boundary; between two
    // consecutive ones the segment lies in a single face, which one interior
    // sample classifies.
    std::vector<double> ts{0.0, 1.0};
    const auto scan = [&](const Polygon& poly) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point c = poly.vertex(i);
            const Point d = poly.vertex(i + 1);
            if (proper_cross(a, b, c, d)) {
                return false;
            }
            for (const Point& q : {c, d}) {
                if (on_segment(q, a, b)) {
                    const double t = ((q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y)) / (len * len);
                    ts.push_back(std::clamp(t, 0.0, 1.0));
                }
            }
        }
        return true;
    };
    if (!scan(m.outer())) {
        return false;
    }
    for (const Polygon& ob : m.obstacles()) {
        if (!scan(ob)) {
            return false;
        }
    }

    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if ((ts[i + 1] - ts[i]) * len <= kGeoEps) {
            continue;
        }
        const double t = 0.5 * (ts[i] + ts[i + 1]);
        if (!is_feasible(Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, m)) {
            return false;
        }
    }
    return is_feasible(a, m) && is_feasible(b, m);
}

GroundSet generate_ground_set(const MissionSpace& m, const GridSpec& spec)
{
    if (!(spec.pitch > 0.0) || !std::isfinite(spec.pitch)) {
        throw ValidationError("ground set pitch must be positive");
    }
    const double offset = spec.offset.value_or(0.5 * spec.pitch);
    if (!(offset >= 0.0) || !std::isfinite(offset)) {
        throw ValidationError("ground set offset must be non-negative");
    }
    const BoundingBox& box = m.bounds();
    GroundSet gs;
    for (std::size_t j = 0;; ++j) {
        const double y = box.min.y + offset + static_cast<double>(j) * spec.pitch;
        if (y > box.max.y + kGeoEps) {
            break;
        }
        for (std::size_t i = 0;; ++i) {
            const double x = box.min.x + offset + static_cast<double>(i) * spec.pitch;
            if (x > box.max.x + kGeoEps) {
                break;
            }
            if (is_feasible(Point{x, y}, m)) {
                gs.points.push_back(Point{x, y});
            }
        }
    }
    if (gs.points.empty()) {
        throw ValidationError("ground set empty");
    }
    return gs;
}

GroundSet generate_ground_set(const MissionSpace& m, std::span<const Point> points)
{
    GroundSet gs;
    for (const Point& p : points) {
        if (!is_feasible(p, m)) {
            continue;
        }
        if (std::find(gs.points.begin(), gs.points.end(), p) != gs.points.end()) {
            throw ValidationError("duplicate ground point (" + std::to_string(p.x) + ", " +
                                  std::to_string(p.y) + ")");
        }
        gs.points.push_back(p);
    }
    if (gs.points.empty()) {
        throw ValidationError("ground set empty");
    }
    return gs;
}

double IntegrationGrid::total_weight() const
{
    double acc = 0.0;
    for (double w : weights) {
        acc += w;
    }
    return acc;
}

IntegrationGrid IntegrationGrid::from_points(const MissionSpace& m, std::vector<Point> points,
                                             std::vector<double> weights, std::vector<double> density)
{
    if (points.empty()) {
        throw ValidationError("integration grid has no feasible cells");
    }
    if (weights.size() != points.size() || density.size() != points.size()) {
        throw ValidationError("integration grid arrays differ in length");
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!is_feasible(points[k], m)) {
            throw ValidationError("integration point " + std::to_string(k) + " is infeasible");
        }
        if (!(weights[k] > 0.0) || !(density[k] >= 0.0)) {
            throw ValidationError("integration weights must be > 0 and density >= 0");
        }
    }
    IntegrationGrid grid;
    grid.points = std::move(points);
    grid.weights = std::move(weights);
    grid.density = std::move(density);
    return grid;
}

IntegrationGrid generate_integration_grid(const MissionSpace& m, std::size_t resolution,
                                          const DensitySpec& density)
{
    if (resolution < 1) {
        throw ValidationError("grid resolution must be >= 1");
    }
    if (!density.table.empty() && density.table.size() != resolution * resolution) {
        throw ValidationError("density table has " + std::to_string(density.table.size()) +
                              " values, expected " + std::to_string(resolution * resolution));
    }
    if (!(density.uniform >= 0.0) || !std::isfinite(density.uniform)) {
        throw ValidationError("density must be non-negative");
    }
    for (double v : density.table) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("density must be non-negative");
        }
    }

    const BoundingBox& box = m.bounds();
    const double r = static_cast<double>(resolution);
    IntegrationGrid grid;
    grid.cell_width = box.width() / r;
    grid.cell_height = box.height() / r;
    const double w = grid.cell_width * grid.cell_height;
    for (std::size_t j = 0; j < resolution; ++j) {
        const double y = box.min.y + (static_cast<double>(j) + 0.5) * grid.cell_height;
        for (std::size_t i = 0; i < resolution; ++i) {
            const Point p{box.min.x + (static_cast<double>(i) + 0.5) * grid.cell_width, y};
            if (!is_feasible(p, m)) {
                continue;
            }
            grid.points.push_back(p);
            grid.weights.push_back(w);
            grid.density.push_back(density.table.empty() ? density.uniform
                                                         : density.table[j * resolution + i]);
        }
    }
    if (grid.points.empty()) {
        throw ValidationError("integration grid has no feasible cells");
    }
    return grid;
}

} // namespace coverbound
