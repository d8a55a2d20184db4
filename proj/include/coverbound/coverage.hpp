#pragma once

#include "coverbound/agent_set.hpp"
#include "coverbound/geometry.hpp"
#include "coverbound/objective.hpp"
#include "coverbound/sensing.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coverbound {

// Everything H(S) needs: the sensing table, the quadrature mass
// w_k * R(x_k) per grid point, and the blend weight.
//
// All sums run over grid points in ascending index order, so every value is
// bit-reproducible.
class CoverageContext
{
public:
    CoverageContext(SensingMatrix matrix, IntegrationGrid grid, GroundSet ground, DetectionBlend blend);

    [[nodiscard]] std::size_t ground_size() const { return matrix_.cols(); }
    [[nodiscard]] std::size_t grid_size() const { return matrix_.rows(); }
    [[nodiscard]] double theta() const { return blend_.theta(); }
    [[nodiscard]] const DetectionBlend& blend() const { return blend_; }
    [[nodiscard]] const SensingMatrix& matrix() const { return matrix_; }
    [[nodiscard]] const IntegrationGrid& grid() const { return grid_; }
    [[nodiscard]] const GroundSet& ground() const { return ground_; }
    [[nodiscard]] std::span<const double> mass() const { return mass_; }
    // Grid indices k with p(x_k, g_l) > 0, ascending.
    [[nodiscard]] std::span<const std::uint32_t> support(std::size_t l) const { return support_[l]; }

    // Sum of w_k R(x_k): the value of full coverage.
    [[nodiscard]] double total_mass() const { return total_mass_; }

    [[nodiscard]] double coverage(const AgentSet& s) const;
    // H(S + {y}) - H(S); y must not be in S.
    [[nodiscard]] double marginal_coverage(std::size_t y, const AgentSet& s) const;
    // H(A u B) - H(A), any A and B.
    [[nodiscard]] double marginal_coverage_set(const AgentSet& b, const AgentSet& a) const;
    // H({y}).
    [[nodiscard]] double singleton(std::size_t y) const { return singletons_[y]; }

    void check(const AgentSet& s) const;

private:
    SensingMatrix matrix_;
    IntegrationGrid grid_;
    GroundSet ground_;
    DetectionBlend blend_;
    std::vector<double> mass_;
    std::vector<std::vector<std::uint32_t>> support_;
    std::vector<double> singletons_;
    double total_mass_ = 0.0;
};

// Per-grid-point miss probability prod(1 - p) and best p for a growing set.
class DetectionState
{
public:
    explicit DetectionState(const CoverageContext& ctx);
    DetectionState(const CoverageContext& ctx, const AgentSet& s);

    void add(std::size_t l);
    // Delta H(y | current set).
    [[nodiscard]] double gain(std::size_t y) const;
    // H(current set).
    [[nodiscard]] double value() const;

    [[nodiscard]] std::span<const double> miss() const { return miss_; }
    [[nodiscard]] std::span<const double> best() const { return best_; }

private:
    const CoverageContext* ctx_;
    std::vector<double> miss_;
    std::vector<double> best_;
};

// F(S) = H(S).
class CoverageObjective final : public SetObjective
{
public:
    explicit CoverageObjective(const CoverageContext& ctx);

    [[nodiscard]] std::size_t ground_size() const override { return ctx_->ground_size(); }
    [[nodiscard]] double value(const AgentSet& s) const override { return ctx_->coverage(s); }
    void reset() override { state_ = DetectionState(*ctx_); }
    [[nodiscard]] double gain(std::size_t element) const override { return state_.gain(element); }
    void commit(std::size_t element) override { state_.add(element); }
    [[nodiscard]] double current() const override { return state_.value(); }

private:
    const CoverageContext* ctx_;
    DetectionState state_;
};

// G_A(B) = Delta H(B | A) over B disjoint from the fixed set A.
class MarginalObjective final : public SetObjective
{
public:
    MarginalObjective(const CoverageContext& ctx, AgentSet fixed);

    [[nodiscard]] std::size_t ground_size() const override { return ctx_->ground_size(); }
    [[nodiscard]] double value(const AgentSet& b) const override;
    void reset() override;
    [[nodiscard]] double gain(std::size_t element) const override;
    void commit(std::size_t element) override;
    [[nodiscard]] double current() const override;

private:
    const CoverageContext* ctx_;
    AgentSet fixed_;
    double base_;
    DetectionState state_;
};

// G_B(A) = H(B) - Delta H(B | A) over A disjoint from the fixed, non-empty
// set B. Evaluation is restricted to grid points B can sense.
class NegatedMarginalObjective final : public SetObjective
{
public:
    NegatedMarginalObjective(const CoverageContext& ctx, AgentSet fixed);

    [[nodiscard]] std::size_t ground_size() const override { return ctx_->ground_size(); }
    [[nodiscard]] double value(const AgentSet& a) const override;
    void reset() override;
    [[nodiscard]] double gain(std::size_t element) const override;
    void commit(std::size_t element) override;
    [[nodiscard]] double current() const override { return fixed_value_ - remaining_gain(); }

    // Delta H(B | working set).
    [[nodiscard]] double remaining_gain() const;
    [[nodiscard]] double fixed_value() const { return fixed_value_; }

private:
    void require_disjoint(const AgentSet& a) const;

    const CoverageContext* ctx_;
    AgentSet fixed_;
    std::vector<std::uint32_t> points_; // union support of B
    std::vector<double> joint_;         // 1 - prod_B (1 - p), on points_
    std::vector<double> best_;          // max_B p, on points_
    std::vector<double> work_miss_;     // working set, on points_
    std::vector<double> work_best_;
    double fixed_value_ = 0.0;
};

[[nodiscard]] NegatedMarginalObjective negated_marginal_objective(const CoverageContext& ctx, const AgentSet& b);

} // namespace coverbound
