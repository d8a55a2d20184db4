#include "coverbound/sensing.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coverbound {

void SensingModel::validate() const
{
    if (!(delta >= 0.0) || std::isnan(delta)) {
        throw ValidationError("sensing range delta must be >= 0");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("sensing decay lambda must be >= 0");
    }
}

DetectionBlend::DetectionBlend(double theta) : theta_(theta)
{
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ValidationError("theta must lie in [0, 1], got " + std::to_string(theta));
    }
}

double sensing(Point x, Point s, const SensingModel& model, const MissionSpace& m)
{
    const double d = distance(x, s);
    if (d > model.delta || !line_of_sight(x, s, m)) {
        return 0.0;
    }
    return std::exp(-model.lambda * d);
}

double detect_joint(std::span<const double> probs)
{
    double miss = 1.0;
    for (double p : probs) {
        miss *= 1.0 - p;
    }
    return 1.0 - miss;
}

double detect_max(std::span<const double> probs)
{
    double best = 0.0;
    for (double p : probs) {
        best = std::max(best, p);
    }
    return best;
}

double detect(std::span<const double> probs, const DetectionBlend& blend)
{
    const double theta = blend.theta();
    return theta * detect_joint(probs) + (1.0 - theta) * detect_max(probs);
}

double marginal_detect(double p_y, std::span<const double> probs, const DetectionBlend& blend)
{
    double miss = 1.0;
    double best = 0.0;
    for (double p : probs) {
        miss *= 1.0 - p;
        best = std::max(best, p);
    }
    const double theta = blend.theta();
    return theta * p_y * miss + (1.0 - theta) * std::max(p_y - best, 0.0);
}

namespace {

std::vector<double> probabilities(Point x, std::span<const Point> agents, const SensingModel& model,
                                  const MissionSpace& m)
{
    std::vector<double> probs;
    probs.reserve(agents.size());
    for (const Point& s : agents) {
        probs.push_back(sensing(x, s, model, m));
    }
    return probs;
}

} // namespace

double detect_joint(Point x, std::span<const Point> agents, const SensingModel& model, const MissionSpace& m)
{
    return detect_joint(probabilities(x, agents, model, m));
}

double detect_max(Point x, std::span<const Point> agents, const SensingModel& model, const MissionSpace& m)
{
    return detect_max(probabilities(x, agents, model, m));
}

double detect(Point x, std::span<const Point> agents, const DetectionBlend& blend, const SensingModel& model,
              const MissionSpace& m)
{
    return detect(probabilities(x, agents, model, m), blend);
}

double marginal_detect(Point x, Point y, std::span<const Point> agents, const DetectionBlend& blend,
                       const SensingModel& model, const MissionSpace& m)
{
    return marginal_detect(sensing(x, y, model, m), probabilities(x, agents, model, m), blend);
}

SensingMatrix::SensingMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("sensing matrix data size does not match its shape");
    }
}

SensingMatrix build_sensing_matrix(const IntegrationGrid& grid, const GroundSet& gs, const SensingModel& model,
                                   const MissionSpace& m, std::size_t max_bytes)
{
    model.validate();
    if (grid.size() == 0 || gs.size() == 0) {
        throw ValidationError("sensing matrix needs a non-empty grid and ground set");
    }
    const std::size_t rows = grid.size();
    const std::size_t cols = gs.size();
    const double required = static_cast<double>(rows) * static_cast<double>(cols) * sizeof(double);
    if (required > static_cast<double>(max_bytes)) {
        throw ResourceError("sensing matrix needs " + std::to_string(static_cast<unsigned long long>(required)) +
                            " bytes, cap is " + std::to_string(max_bytes) + " bytes");
    }
    std::vector<double> data(rows * cols, 0.0);
    for (std::size_t l = 0; l < cols; ++l) {
        const Point s = gs.points[l];
        double* col = data.data() + l * rows;
        for (std::size_t k = 0; k < rows; ++k) {
            col[k] = sensing(grid.points[k], s, model, m);
        }
    }
    return SensingMatrix(rows, cols, std::move(data));
}

} // namespace coverbound
