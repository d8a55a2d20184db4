#pragma once

#include "coverbound/agent_set.hpp"
#include "coverbound/coverage.hpp"
#include "coverbound/objective.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace coverbound {

struct GreedyStep
{
    std::size_t index = 0; // element picked at this iteration
    double gain = 0.0;     // its marginal against the previous prefix
    double value = 0.0;    // objective of the prefix after the pick
};

struct GreedyOptions
{
    // Priority queue over stale marginals. Only valid for submodular
    // objectives, where it yields the same trace as the plain scan.
    bool lazy = false;
    // Keep every candidate marginal of every iteration. The lazy path fills
    // them by a replay once the selections are known.
    bool record_candidates = true;
};

class GreedyTrace
{
public:
    std::size_t agents = 0;              // N; the first N selections form S^G
    std::vector<std::size_t> candidates; // ascending
    std::vector<GreedyStep> steps;
    // candidate_gains[i][c] = marginal of candidates[c] at iteration i + 1
    // (against the prefix of length i). NaN once that candidate is taken.
    std::vector<std::vector<double>> candidate_gains;

    [[nodiscard]] std::size_t horizon() const { return steps.size(); }
    [[nodiscard]] bool has_candidate_gains() const { return candidate_gains.size() == steps.size(); }
    [[nodiscard]] AgentSet solution() const { return prefix(agents); }
    [[nodiscard]] AgentSet prefix(std::size_t i) const;
    // Objective of the first i selections; value_at(0) = 0.
    [[nodiscard]] double value_at(std::size_t i) const;
    [[nodiscard]] double solution_value() const { return value_at(agents); }
};

// Runs k iterations of greedy over the candidates. Ties go to the lowest
// index and zero gains stay selectable, so exactly k picks are always made.
// The objective must be normalized; it is left holding the selected set.
[[nodiscard]] GreedyTrace greedy_on_objective(SetObjective& objective, std::span<const std::size_t> candidates,
                                              std::size_t k, const GreedyOptions& options = {});

// Greedy placement of N agents over the whole ground set, continued to the
// given horizon (N <= horizon <= M).
[[nodiscard]] GreedyTrace greedy_solve(const CoverageContext& ctx, std::size_t agents, std::size_t horizon,
                                       const GreedyOptions& options = {});

// Recomputes candidate_gains for an existing trace.
void replay_candidate_gains(GreedyTrace& trace, SetObjective& objective);

struct ImprovedBound
{
    double beta = 1.0;
    bool capped = false;
};

// beta * h_improved / h_greedy, capped at 1.
[[nodiscard]] ImprovedBound improved_bound(double beta, double h_greedy, double h_improved);

} // namespace coverbound
