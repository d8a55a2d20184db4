#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coverbound {

// Tolerance on orientation / incidence predicates, in length units.
inline constexpr double kGeoEps = 1e-9;

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] double distance(Point a, Point b);

struct BoundingBox
{
    Point min;
    Point max;

    [[nodiscard]] double width() const { return max.x - min.x; }
    [[nodiscard]] double height() const { return max.y - min.y; }
};

// Simple polygon, stored counter-clockwise. Construction validates the
// vertex list (>= 3 vertices, no consecutive duplicates, non-zero area,
// no self-intersection) and reverses clockwise input.
class Polygon
{
public:
    explicit Polygon(std::vector<Point> vertices);

    [[nodiscard]] std::span<const Point> vertices() const { return vertices_; }
    [[nodiscard]] std::size_t size() const { return vertices_.size(); }
    [[nodiscard]] Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    [[nodiscard]] double area() const;
    [[nodiscard]] BoundingBox bounds() const;

    [[nodiscard]] bool on_boundary(Point p) const;
    // Strict interior (boundary excluded).
    [[nodiscard]] bool contains_strict(Point p) const;
    // Interior or boundary.
    [[nodiscard]] bool contains(Point p) const { return on_boundary(p) || contains_strict(p); }

    // A point strictly inside the polygon.
    [[nodiscard]] Point interior_point() const;

private:
    std::vector<Point> vertices_;
};

// Outer polygon minus the open interiors of the obstacles.
class MissionSpace
{
public:
    explicit MissionSpace(Polygon outer, std::vector<Polygon> obstacles = {});

    [[nodiscard]] const Polygon& outer() const { return outer_; }
    [[nodiscard]] std::span<const Polygon> obstacles() const { return obstacles_; }
    [[nodiscard]] const BoundingBox& bounds() const { return bounds_; }

    // area(outer) - sum of obstacle areas (obstacles are interior-disjoint).
    [[nodiscard]] double feasible_area() const;

private:
    Polygon outer_;
    std::vector<Polygon> obstacles_;
    BoundingBox bounds_;
};

[[nodiscard]] bool is_feasible(Point p, const MissionSpace& m);

// True iff the closed segment ab stays in the feasible space. Grazing an
// obstacle boundary does not block the view.
[[nodiscard]] bool line_of_sight(Point a, Point b, const MissionSpace& m);

struct GroundSet
{
    std::vector<Point> points;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

struct GridSpec
{
    double pitch = 0.0;
    // Offset of the first grid line from the bounding-box minimum corner;
    // defaults to pitch / 2.
    std::optional<double> offset;
};

// Axis-aligned lattice filtered to feasible points, row-major from the
// bounding-box minimum corner.
[[nodiscard]] GroundSet generate_ground_set(const MissionSpace& m, const GridSpec& spec);
// Explicit list; infeasible points are dropped, duplicates rejected.
[[nodiscard]] GroundSet generate_ground_set(const MissionSpace& m, std::span<const Point> points);

struct DensitySpec
{
    double uniform = 1.0;
    // Optional per-cell values, resolution x resolution, row-major from the
    // bounding-box minimum corner. Overrides `uniform` when non-empty.
    std::vector<double> table;
};

struct IntegrationGrid
{
    std::vector<Point> points;
    std::vector<double> weights;
    std::vector<double> density;
    // Cell dimensions for lattice grids (zero for explicit grids).
    double cell_width = 0.0;
    double cell_height = 0.0;

    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] double total_weight() const;

    // Quadrature grid from explicit points; validates feasibility and signs.
    [[nodiscard]] static IntegrationGrid from_points(const MissionSpace& m, std::vector<Point> points,
                                                     std::vector<double> weights,
                                                     std::vector<double> density);
};

// Midpoint quadrature on a resolution x resolution partition of the
// bounding box, keeping feasible midpoints.
[[nodiscard]] IntegrationGrid generate_integration_grid(const MissionSpace& m, std::size_t resolution,
                                                        const DensitySpec& density = {});

} // namespace coverbound
