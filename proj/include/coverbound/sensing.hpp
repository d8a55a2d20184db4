#pragma once

#include "coverbound/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace coverbound {

struct SensingModel
{
    double delta = 0.0;  // sensing range, length units
    double lambda = 0.0; // decay rate, 1 / length units

    // Throws ValidationError when either parameter is negative or non-finite
    // (delta may be +inf).
    void validate() const;
};

// Weight theta in [0, 1] between joint (theta = 1) and max (theta = 0)
// detection.
class DetectionBlend
{
public:
    explicit DetectionBlend(double theta);

    [[nodiscard]] double theta() const { return theta_; }

private:
    double theta_;
};

// p(x, s) = exp(-lambda |x - s|) if s sees x within range delta, else 0.
[[nodiscard]] double sensing(Point x, Point s, const SensingModel& model, const MissionSpace& m);

// Pointwise detection over the per-agent sensing values p(x, s_i).
[[nodiscard]] double detect_joint(std::span<const double> probs);
[[nodiscard]] double detect_max(std::span<const double> probs);
[[nodiscard]] double detect(std::span<const double> probs, const DetectionBlend& blend);
// P(x, S + {y}) - P(x, S), where p_y = p(x, y) and probs = p(x, s_i), s_i in S.
[[nodiscard]] double marginal_detect(double p_y, std::span<const double> probs, const DetectionBlend& blend);

// Same functions evaluated from agent positions.
[[nodiscard]] double detect_joint(Point x, std::span<const Point> agents, const SensingModel& model,
                                  const MissionSpace& m);
[[nodiscard]] double detect_max(Point x, std::span<const Point> agents, const SensingModel& model,
                                const MissionSpace& m);
[[nodiscard]] double detect(Point x, std::span<const Point> agents, const DetectionBlend& blend,
                            const SensingModel& model, const MissionSpace& m);
[[nodiscard]] double marginal_detect(Point x, Point y, std::span<const Point> agents, const DetectionBlend& blend,
                                     const SensingModel& model, const MissionSpace& m);

// Dense table of p(x_k, g_l), stored column by column (one contiguous
// column per ground-set point).
class SensingMatrix
{
public:
    SensingMatrix() = default;
    SensingMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] double at(std::size_t k, std::size_t l) const { return data_[l * rows_ + k]; }
    [[nodiscard]] std::span<const double> column(std::size_t l) const
    {
        return {data_.data() + l * rows_, rows_};
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline constexpr std::size_t kDefaultMatrixCapBytes = std::size_t{2} << 30;

// Throws ResourceError when rows * cols doubles exceed max_bytes.
[[nodiscard]] SensingMatrix build_sensing_matrix(const IntegrationGrid& grid, const GroundSet& gs,
                                                 const SensingModel& model, const MissionSpace& m,
                                                 std::size_t max_bytes = kDefaultMatrixCapBytes);

} // namespace coverbound
