#include "coverbound/coverage.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace coverbound {

CoverageContext::CoverageContext(SensingMatrix matrix, IntegrationGrid grid, GroundSet ground, DetectionBlend blend)
    : matrix_(std::move(matrix)), grid_(std::move(grid)), ground_(std::move(ground)), blend_(blend)
{
    if (matrix_.rows() != grid_.size() || matrix_.cols() != ground_.size()) {
        throw std::invalid_argument("sensing matrix shape does not match the grid and ground set");
    }
    if (grid_.weights.size() != grid_.size() || grid_.density.size() != grid_.size()) {
        throw std::invalid_argument("integration grid arrays differ in length");
    }
    mass_.resize(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        mass_[k] = grid_.weights[k] * grid_.density[k];
        total_mass_ += mass_[k];
    }
    support_.resize(ground_size());
    for (std::size_t l = 0; l < ground_size(); ++l) {
        const auto col = matrix_.column(l);
        for (std::size_t k = 0; k < col.size(); ++k) {
            if (col[k] > 0.0) {
                support_[l].push_back(static_cast<std::uint32_t>(k));
            }
        }
    }
    const DetectionState empty(*this);
    singletons_.resize(ground_size());
    for (std::size_t l = 0; l < ground_size(); ++l) {
        singletons_[l] = empty.gain(l);
    }
}

void CoverageContext::check(const AgentSet& s) const
{
    if (!s.empty() && s.max_index() >= ground_size()) {
        throw std::out_of_range("agent index " + std::to_string(s.max_index()) + " outside ground set of size " +
                                std::to_string(ground_size()));
    }
}

double CoverageContext::coverage(const AgentSet& s) const
{
    return DetectionState(*this, s).value();
}

double CoverageContext::marginal_coverage(std::size_t y, const AgentSet& s) const
{
    if (s.contains(y)) {
        throw std::invalid_argument("marginal_coverage: candidate already in the set");
    }
    if (y >= ground_size()) {
        throw std::out_of_range("candidate index outside ground set");
    }
    return DetectionState(*this, s).gain(y);
}

double CoverageContext::marginal_coverage_set(const AgentSet& b, const AgentSet& a) const
{
    const DetectionState base(*this, a);
    const DetectionState extra(*this, b.minus(a));
    const double theta = blend_.theta();
    double acc = 0.0;
    for (std::size_t k = 0; k < grid_size(); ++k) {
        const double joint = base.miss()[k] * (1.0 - extra.miss()[k]);
        const double top = std::max(extra.best()[k] - base.best()[k], 0.0);
        acc += mass_[k] * (theta * joint + (1.0 - theta) * top);
    }
    return acc;
}

DetectionState::DetectionState(const CoverageContext& ctx)
    : ctx_(&ctx), miss_(ctx.grid_size(), 1.0), best_(ctx.grid_size(), 0.0)
{
}

DetectionState::DetectionState(const CoverageContext& ctx, const AgentSet& s) : DetectionState(ctx)
{
    ctx.check(s);
    for (std::size_t l : s) {
        add(l);
    }
}

void DetectionState::add(std::size_t l)
{
    const auto col = ctx_->matrix().column(l);
    for (std::uint32_t k : ctx_->support(l)) {
        const double p = col[k];
        miss_[k] *= 1.0 - p;
        best_[k] = std::max(best_[k], p);
    }
}

double DetectionState::gain(std::size_t y) const
{
    const auto col = ctx_->matrix().column(y);
    const auto mass = ctx_->mass();
    const double theta = ctx_->theta();
    double acc = 0.0;
    for (std::uint32_t k : ctx_->support(y)) {
        const double p = col[k];
        acc += mass[k] * (theta * (p * miss_[k]) + (1.0 - theta) * std::max(p - best_[k], 0.0));
    }
    return acc;
}

double DetectionState::value() const
{
    const auto mass = ctx_->mass();
    const double theta = ctx_->theta();
    double acc = 0.0;
    for (std::size_t k = 0; k < miss_.size(); ++k) {
        acc += mass[k] * (theta * (1.0 - miss_[k]) + (1.0 - theta) * best_[k]);
    }
    return acc;
}

CoverageObjective::CoverageObjective(const CoverageContext& ctx) : ctx_(&ctx), state_(ctx) {}

MarginalObjective::MarginalObjective(const CoverageContext& ctx, AgentSet fixed)
    : ctx_(&ctx), fixed_(std::move(fixed)), base_(ctx.coverage(fixed_)), state_(ctx, fixed_)
{
}

double MarginalObjective::value(const AgentSet& b) const
{
    if (b.intersects(fixed_)) {
        throw std::invalid_argument("G_A(B) is defined only for B disjoint from A");
    }
    return ctx_->marginal_coverage_set(b, fixed_);
}

void MarginalObjective::reset()
{
    state_ = DetectionState(*ctx_, fixed_);
}

double MarginalObjective::gain(std::size_t element) const
{
    if (fixed_.contains(element)) {
        throw std::invalid_argument("G_A gain: element belongs to A");
    }
    return state_.gain(element);
}

void MarginalObjective::commit(std::size_t element)
{
    if (fixed_.contains(element)) {
        throw std::invalid_argument("G_A commit: element belongs to A");
    }
    state_.add(element);
}

double MarginalObjective::current() const
{
    return state_.value() - base_;
}

NegatedMarginalObjective::NegatedMarginalObjective(const CoverageContext& ctx, AgentSet fixed)
    : ctx_(&ctx), fixed_(std::move(fixed))
{
    if (fixed_.empty()) {
        throw std::invalid_argument("G_B needs a non-empty set B");
    }
    ctx.check(fixed_);
    for (std::size_t l : fixed_) {
        const auto sup = ctx.support(l);
        std::vector<std::uint32_t> merged;
        std::set_union(points_.begin(), points_.end(), sup.begin(), sup.end(), std::back_inserter(merged));
        points_ = std::move(merged);
    }
    joint_.assign(points_.size(), 0.0);
    best_.assign(points_.size(), 0.0);
    std::vector<double> miss(points_.size(), 1.0);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t l : fixed_) {
            const double p = ctx.matrix().at(points_[i], l);
            miss[i] *= 1.0 - p;
            best_[i] = std::max(best_[i], p);
        }
        // Single-element B keeps p itself so that G_{y} matches H({y}) exactly.
        joint_[i] = fixed_.size() == 1 ? best_[i] : 1.0 - miss[i];
    }
    const auto mass = ctx.mass();
    const double theta = ctx.theta();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        fixed_value_ += mass[points_[i]] * (theta * joint_[i] + (1.0 - theta) * best_[i]);
    }
    reset();
}

void NegatedMarginalObjective::require_disjoint(const AgentSet& a) const
{
    if (a.intersects(fixed_)) {
        throw std::invalid_argument("G_B(A) is defined only for A disjoint from B");
    }
}

double NegatedMarginalObjective::value(const AgentSet& a) const
{
    require_disjoint(a);
    ctx_->check(a);
    std::vector<double> miss(points_.size(), 1.0);
    std::vector<double> best(points_.size(), 0.0);
    for (std::size_t l : a) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double p = ctx_->matrix().at(points_[i], l);
            miss[i] *= 1.0 - p;
            best[i] = std::max(best[i], p);
        }
    }
    const auto mass = ctx_->mass();
    const double theta = ctx_->theta();
    double remaining = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        remaining += mass[points_[i]] * (theta * (joint_[i] * miss[i]) + (1.0 - theta) * std::max(best_[i] - best[i], 0.0));
    }
    return fixed_value_ - remaining;
}

void NegatedMarginalObjective::reset()
{
    work_miss_.assign(points_.size(), 1.0);
    work_best_.assign(points_.size(), 0.0);
}

double NegatedMarginalObjective::gain(std::size_t element) const
{
    if (fixed_.contains(element)) {
        throw std::invalid_argument("G_B gain: element belongs to B");
    }
    const auto col = ctx_->matrix().column(element);
    const auto mass = ctx_->mass();
    const double theta = ctx_->theta();
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double p = col[points_[i]];
        if (p == 0.0) {
            continue;
        }
        const double joint = joint_[i] * work_miss_[i] * p;
        const double top = std::max(best_[i] - work_best_[i], 0.0) - std::max(best_[i] - std::max(work_best_[i], p), 0.0);
        acc += mass[points_[i]] * (theta * joint + (1.0 - theta) * top);
    }
    return acc;
}

void NegatedMarginalObjective::commit(std::size_t element)
{
    if (fixed_.contains(element)) {
        throw std::invalid_argument("G_B commit: element belongs to B");
    }
    const auto col = ctx_->matrix().column(element);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double p = col[points_[i]];
        work_miss_[i] *= 1.0 - p;
        work_best_[i] = std::max(work_best_[i], p);
    }
}

double NegatedMarginalObjective::remaining_gain() const
{
    const auto mass = ctx_->mass();
    const double theta = ctx_->theta();
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        acc += mass[points_[i]] * (theta * (joint_[i] * work_miss_[i]) + (1.0 - theta) * std::max(best_[i] - work_best_[i], 0.0));
    }
    return acc;
}

NegatedMarginalObjective negated_marginal_objective(const CoverageContext& ctx, const AgentSet& b)
{
    return NegatedMarginalObjective(ctx, b);
}

} // namespace coverbound
