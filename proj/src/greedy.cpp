#include "coverbound/greedy.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace coverbound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LazyEntry
{
    double bound;
    std::size_t pos;
    std::size_t stamp;
};

// Top of the queue: largest bound, then lowest candidate position.
struct LazyOrder
{
    bool operator()(const LazyEntry& a, const LazyEntry& b) const
    {
        if (a.bound != b.bound) {
            return a.bound < b.bound;
        }
        return a.pos > b.pos;
    }
};

std::vector<std::size_t> sorted_candidates(std::span<const std::size_t> candidates, std::size_t ground)
{
    std::vector<std::size_t> out(candidates.begin(), candidates.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw std::invalid_argument("greedy candidates contain duplicates");
    }
    if (!out.empty() && out.back() >= ground) {
        throw std::out_of_range("greedy candidate " + std::to_string(out.back()) + " outside ground set");
    }
    return out;
}

void scan(GreedyTrace& trace, SetObjective& objective, std::size_t k, bool record)
{
    const std::size_t n = trace.candidates.size();
    std::vector<bool> taken(n, false);
    for (std::size_t iter = 0; iter < k; ++iter) {
        std::vector<double> row;
        if (record) {
            row.assign(n, kNaN);
        }
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = n;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (taken[pos]) {
                continue;
            }
            const double g = objective.gain(trace.candidates[pos]);
            if (record) {
                row[pos] = g;
            }
            if (g > best) {
                best = g;
                arg = pos;
            }
        }
        if (arg == n) {
            throw std::logic_error("greedy found no selectable candidate (NaN marginals?)");
        }
        taken[arg] = true;
        objective.commit(trace.candidates[arg]);
        trace.steps.push_back({trace.candidates[arg], best, objective.current()});
        if (record) {
            trace.candidate_gains.push_back(std::move(row));
        }
    }
}

void lazy(GreedyTrace& trace, SetObjective& objective, std::size_t k)
{
    const std::size_t n = trace.candidates.size();
    constexpr std::size_t kStale = std::numeric_limits<std::size_t>::max();
    std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyOrder> queue;
    for (std::size_t pos = 0; pos < n; ++pos) {
        queue.push({std::numeric_limits<double>::infinity(), pos, kStale});
    }
    for (std::size_t iter = 0; iter < k; ++iter) {
        for (;;) {
            LazyEntry top = queue.top();
            queue.pop();
            if (top.stamp == iter) {
                objective.commit(trace.candidates[top.pos]);
                trace.steps.push_back({trace.candidates[top.pos], top.bound, objective.current()});
                break;
            }
            top.bound = objective.gain(trace.candidates[top.pos]);
            if (std::isnan(top.bound)) {
                throw std::logic_error("greedy found a NaN marginal");
            }
            top.stamp = iter;
            queue.push(top);
        }
    }
}

} // namespace

AgentSet GreedyTrace::prefix(std::size_t i) const
{
    if (i > steps.size()) {
        throw std::out_of_range("prefix longer than the greedy trace");
    }
    std::vector<std::size_t> idx;
    idx.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
        idx.push_back(steps[j].index);
    }
    return AgentSet(std::move(idx));
}

double GreedyTrace::value_at(std::size_t i) const
{
    if (i > steps.size()) {
        throw std::out_of_range("prefix longer than the greedy trace");
    }
    return i == 0 ? 0.0 : steps[i - 1].value;
}

GreedyTrace greedy_on_objective(SetObjective& objective, std::span<const std::size_t> candidates, std::size_t k,
                                const GreedyOptions& options)
{
    GreedyTrace trace;
    trace.candidates = sorted_candidates(candidates, objective.ground_size());
    if (k > trace.candidates.size()) {
        throw std::invalid_argument("greedy asked for " + std::to_string(k) + " picks from " +
                                    std::to_string(trace.candidates.size()) + " candidates");
    }
    trace.agents = k;
    objective.reset();
    if (objective.current() != 0.0) {
        throw std::invalid_argument("greedy objective is not normalized");
    }
    if (options.lazy) {
        lazy(trace, objective, k);
        if (options.record_candidates) {
            replay_candidate_gains(trace, objective);
        }
    } else {
        scan(trace, objective, k, options.record_candidates);
    }
    return trace;
}

GreedyTrace greedy_solve(const CoverageContext& ctx, std::size_t agents, std::size_t horizon,
                         const GreedyOptions& options)
{
    const std::size_t m = ctx.ground_size();
    if (agents > m) {
        throw ValidationError("agent count " + std::to_string(agents) + " exceeds ground set size " +
                              std::to_string(m));
    }
    if (agents < 1 || horizon < agents || horizon > m) {
        throw std::invalid_argument("greedy_solve needs 1 <= N <= horizon <= M");
    }
    CoverageObjective objective(ctx);
    const AgentSet all = AgentSet::range(m);
    GreedyTrace trace = greedy_on_objective(objective, all.indices(), horizon, options);
    trace.agents = agents;
    return trace;
}

void replay_candidate_gains(GreedyTrace& trace, SetObjective& objective)
{
    const std::size_t n = trace.candidates.size();
    objective.reset();
    std::vector<bool> taken(n, false);
    trace.candidate_gains.clear();
    for (const GreedyStep& step : trace.steps) {
        std::vector<double> row(n, kNaN);
        std::size_t picked = n;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (taken[pos]) {
                continue;
            }
            row[pos] = objective.gain(trace.candidates[pos]);
            if (trace.candidates[pos] == step.index) {
                picked = pos;
            }
        }
        if (picked == n) {
            throw std::invalid_argument("trace selection is not an untaken candidate");
        }
        taken[picked] = true;
        objective.commit(step.index);
        trace.candidate_gains.push_back(std::move(row));
    }
}

ImprovedBound improved_bound(double beta, double h_greedy, double h_improved)
{
    if (!(h_greedy > 0.0) || !(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("improved_bound needs h_greedy > 0 and 0 < beta <= 1");
    }
    if (h_improved < h_greedy) {
        throw std::invalid_argument("improved solution is worse than the greedy one");
    }
    const double value = beta * h_improved / h_greedy;
    if (value > 1.0) {
        return {1.0, true};
    }
    return {value, false};
}

} // namespace coverbound
