#include "coverbound/curvature.hpp"

#include "coverbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace coverbound {

namespace {

void check_alpha(double alpha, std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("curvature bounds need N >= 1");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("curvature must lie in [0, 1], got " + std::to_string(alpha));
    }
}

// Calls fn with every k-subset of items, in lexicographic order of positions.
void for_each_combination(std::span<const std::size_t> items, std::size_t k,
                          const std::function<void(std::span<const std::size_t>)>& fn)
{
    const std::size_t n = items.size();
    if (k > n) {
        return;
    }
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::vector<std::size_t> chosen(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) {
            chosen[i] = items[pos[i]];
        }
        fn(chosen);
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

std::vector<std::size_t> all_but(std::size_t m, std::size_t skip)
{
    std::vector<std::size_t> out;
    out.reserve(m);
    for (std::size_t l = 0; l < m; ++l) {
        if (l != skip) {
            out.push_back(l);
        }
    }
    return out;
}

} // namespace

double beta_fundamental(std::size_t n)
{
    return beta_total(1.0, n);
}

double beta_total(double alpha, std::size_t n)
{
    check_alpha(alpha, n);
    if (alpha == 0.0) {
        return 1.0;
    }
    const double nd = static_cast<double>(n);
    return -std::expm1(nd * std::log1p(-alpha / nd)) / alpha;
}

double beta_greedy(double alpha, std::size_t n)
{
    check_alpha(alpha, n);
    return 1.0 - alpha * (1.0 - 1.0 / static_cast<double>(n));
}

double beta_elemental(double alpha, std::size_t n)
{
    check_alpha(alpha, n);
    if (alpha == 1.0) {
        return beta_fundamental(n);
    }
    double num = 0.0;
    double den = 1.0;
    double power = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        power *= alpha;
        num += power;
        den += power;
    }
    return 1.0 - std::pow(num / den, static_cast<double>(n));
}

CurvatureBound total_curvature(const CoverageContext& ctx, std::size_t agents)
{
    const std::size_t m = ctx.ground_size();
    CurvatureBound out;
    for (std::size_t y = 0; y < m; ++y) {
        const double h = ctx.singleton(y);
        if (h == 0.0) {
            throw CurvatureError("ill-defined total curvature: H({y}) = 0 for ground point " + std::to_string(y));
        }
        const AgentSet rest = AgentSet::range(m).without(y);
        const double tail = DetectionState(ctx, rest).gain(y);
        out.alpha = std::max(out.alpha, 1.0 - tail / h);
    }
    out.alpha = std::clamp(out.alpha, 0.0, 1.0);
    out.beta = beta_total(out.alpha, agents);
    return out;
}

CurvatureBound greedy_curvature(const GreedyTrace& trace, std::size_t agents)
{
    if (agents < 1 || trace.horizon() < agents) {
        throw std::invalid_argument("greedy curvature needs a trace of at least N iterations");
    }
    if (!trace.has_candidate_gains()) {
        throw std::invalid_argument("greedy curvature needs the per-iteration candidate marginals");
    }
    CurvatureBound out;
    const auto& first = trace.candidate_gains.front();
    for (std::size_t i = 0; i < agents; ++i) {
        const auto& row = trace.candidate_gains[i];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::isnan(row[c])) {
                continue;
            }
            if (first[c] == 0.0) {
                ++out.skipped;
                continue;
            }
            out.alpha = std::max(out.alpha, 1.0 - row[c] / first[c]);
        }
    }
    out.alpha = std::clamp(out.alpha, 0.0, 1.0);
    out.beta = beta_greedy(out.alpha, agents);
    return out;
}

CurvatureBound elemental_upper_bound(const CoverageContext& ctx, std::size_t agents)
{
    CurvatureBound out;
    out.alpha = 1.0;
    const std::size_t m = ctx.ground_size();
    if (ctx.theta() == 1.0 && m >= 2) {
        // For a grid point seen by some y_i, the smallest p over y_j != y_i is
        // the row minimum when every candidate sees it and 0 otherwise.
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < ctx.grid_size(); ++k) {
            std::size_t nonzero = 0;
            double row_min = std::numeric_limits<double>::infinity();
            for (std::size_t l = 0; l < m; ++l) {
                const double p = ctx.matrix().at(k, l);
                nonzero += p != 0.0 ? 1 : 0;
                row_min = std::min(row_min, p);
            }
            if (nonzero == 0) {
                continue;
            }
            smallest = std::min(smallest, nonzero == m ? row_min : 0.0);
        }
        if (std::isfinite(smallest)) {
            out.alpha = std::clamp(1.0 - smallest, 0.0, 1.0);
        }
    }
    out.beta = beta_elemental(out.alpha, agents);
    return out;
}

CurvatureBound partial_upper_bound(const CoverageContext& ctx, std::size_t agents)
{
    if (agents < 1) {
        throw std::invalid_argument("partial curvature needs N >= 1");
    }
    CurvatureBound out;
    if (agents == 1) {
        return out;
    }
    const std::size_t m = ctx.ground_size();
    if (agents > m) {
        throw std::invalid_argument("partial curvature needs N <= M");
    }
    GreedyOptions inner;
    inner.record_candidates = false;
    double worst = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
        const double h = ctx.singleton(y);
        if (h == 0.0) {
            throw CurvatureError("ill-defined partial curvature: H({y}) = 0 for ground point " + std::to_string(y));
        }
        NegatedMarginalObjective objective(ctx, AgentSet({y}));
        const auto candidates = all_but(m, y);
        (void)greedy_on_objective(objective, candidates, agents - 1, inner);
        worst = std::max(worst, 1.0 - objective.remaining_gain() / h);
    }
    out.alpha = std::max(worst, 0.0) / beta_fundamental(agents - 1);
    if (out.alpha > 1.0) {
        out.alpha = 1.0;
        out.clamped = true;
    }
    out.beta = beta_partial(out.alpha, agents);
    return out;
}

std::vector<std::size_t> extended_index_set(std::size_t ground, std::size_t agents)
{
    if (agents < 1 || agents > ground) {
        throw std::invalid_argument("extended index set needs 1 <= N <= M");
    }
    const std::size_t blocks = ground / agents;
    std::vector<std::size_t> q;
    for (std::size_t n = 0; n < blocks; ++n) {
        q.push_back(n * agents + 1);
    }
    for (std::size_t n = 1; n <= blocks; ++n) {
        q.push_back(n * agents);
    }
    q.push_back(ground);
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

ExtendedGreedyBound extended_greedy_curvature(const GreedyTrace& trace, const CoverageContext& ctx,
                                              std::size_t agents, std::span<const std::size_t> q,
                                              Inflation inflation)
{
    const std::size_t m = ctx.ground_size();
    const auto full = extended_index_set(m, agents);
    ExtendedGreedyBound out;
    if (q.empty()) {
        out.q = full;
    } else {
        out.q.assign(q.begin(), q.end());
        std::sort(out.q.begin(), out.q.end());
        out.q.erase(std::unique(out.q.begin(), out.q.end()), out.q.end());
        for (std::size_t i : out.q) {
            if (!std::binary_search(full.begin(), full.end(), i)) {
                throw ValidationError("index " + std::to_string(i) + " is not in the extended greedy index set");
            }
        }
    }
    if (trace.agents != agents || trace.candidates.size() != m) {
        throw std::invalid_argument("extended greedy curvature needs a greedy_solve trace for the same N");
    }
    if (trace.horizon() < out.q.back()) {
        throw std::invalid_argument("greedy trace horizon " + std::to_string(trace.horizon()) +
                                    " is shorter than the largest index " + std::to_string(out.q.back()));
    }
    const bool use_elemental = inflation == Inflation::Elemental && ctx.theta() == 1.0;
    const double beta = use_elemental ? elemental_upper_bound(ctx, agents).beta : beta_fundamental(agents);
    out.inflation = 1.0 / beta;
    const std::size_t blocks = m / agents;

    out.alpha = std::numeric_limits<double>::infinity();
    for (std::size_t i : out.q) {
        double term = std::numeric_limits<double>::infinity();
        if ((i - 1) % agents == 0 && (i - 1) / agents < blocks) {
            if (!trace.has_candidate_gains()) {
                throw std::invalid_argument("extended greedy curvature needs the per-iteration candidate marginals");
            }
            std::vector<double> open;
            for (double g : trace.candidate_gains[i - 1]) {
                if (!std::isnan(g)) {
                    open.push_back(g);
                }
            }
            const std::size_t take = std::min(agents, open.size());
            std::partial_sort(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(take), open.end(),
                              std::greater<>());
            double sum = 0.0;
            for (std::size_t c = 0; c < take; ++c) {
                sum += open[c];
            }
            term = std::min(term, trace.value_at(i - 1) + sum);
        }
        if (i % agents == 0 && i / agents >= 1 && i / agents <= blocks) {
            const double before = trace.value_at(i - agents);
            term = std::min(term, before + out.inflation * (trace.value_at(i) - before));
        }
        if (i == m) {
            term = std::min(term, trace.value_at(m));
        }
        out.terms.push_back({i, term});
        out.alpha = std::min(out.alpha, term);
    }

    const double h = trace.value_at(agents);
    if (!(out.alpha > 0.0)) {
        out.beta = 1.0;
        return out;
    }
    out.beta = h / out.alpha;
    if (out.beta > 1.0) {
        out.beta = 1.0;
        out.clamped = true;
    }
    return out;
}

std::optional<double> CurvatureReport::gamma_t() const
{
    if (!total) {
        return std::nullopt;
    }
    return 1.0 - total->alpha;
}

double CurvatureReport::best_bound() const
{
    double best = beta_f;
    best = std::max(best, greedy.beta);
    best = std::max(best, elemental.beta);
    if (total) {
        best = std::max(best, total->beta);
    }
    if (partial) {
        best = std::max(best, partial->beta);
    }
    if (extended) {
        best = std::max(best, extended->beta);
    }
    return best;
}

std::string CurvatureReport::best_name() const
{
    const double best = best_bound();
    if (extended && extended->beta == best) {
        return "beta_u";
    }
    if (partial && partial->beta == best) {
        return "beta_p";
    }
    if (total && total->beta == best) {
        return "beta_t";
    }
    if (greedy.beta == best) {
        return "beta_g";
    }
    if (elemental.beta == best) {
        return "beta_e";
    }
    return "beta_f";
}

CurvatureReport analyze(const CoverageContext& ctx, const GreedyTrace& trace, const AnalysisOptions& options)
{
    CurvatureReport report;
    const std::size_t n = trace.agents;
    report.agents = n;
    report.beta_f = beta_fundamental(n);
    try {
        report.total = total_curvature(ctx, n);
    } catch (const CurvatureError& e) {
        report.notes.emplace_back(std::string("beta_t unavailable: ") + e.what());
    }
    report.greedy = greedy_curvature(trace, n);
    report.elemental = elemental_upper_bound(ctx, n);
    try {
        report.partial = partial_upper_bound(ctx, n);
    } catch (const CurvatureError& e) {
        report.notes.emplace_back(std::string("beta_p unavailable: ") + e.what());
    }
    report.extended = extended_greedy_curvature(trace, ctx, n, options.q, options.inflation);
    return report;
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        const std::size_t factor = n - k + i;
        if (result > std::numeric_limits<std::size_t>::max() / factor) {
            return std::numeric_limits<std::size_t>::max();
        }
        result = result * factor / i;
    }
    return result;
}

OptimumResult brute_force_optimum(const CoverageContext& ctx, std::size_t agents, std::size_t cap)
{
    const std::size_t m = ctx.ground_size();
    if (agents < 1 || agents > m) {
        throw std::invalid_argument("brute force needs 1 <= N <= M");
    }
    const std::size_t count = binomial(m, agents);
    if (count > cap) {
        throw ResourceError("brute force needs " + std::to_string(count) + " subsets, cap is " + std::to_string(cap));
    }
    OptimumResult best;
    best.value = -std::numeric_limits<double>::infinity();
    const AgentSet all = AgentSet::range(m);
    for_each_combination(all.indices(), agents, [&](std::span<const std::size_t> chosen) {
        AgentSet s(std::vector<std::size_t>(chosen.begin(), chosen.end()));
        const double v = ctx.coverage(s);
        ++best.evaluated;
        if (v > best.value) {
            best.value = v;
            best.set = std::move(s);
        }
    });
    return best;
}

ExactCurvature brute_force_elemental(const CoverageContext& ctx, std::size_t max_ground)
{
    const std::size_t m = ctx.ground_size();
    if (m > max_ground || m >= 8 * sizeof(std::size_t) - 1) {
        throw ResourceError("exact elemental curvature limited to M <= " + std::to_string(max_ground) + ", got " +
                            std::to_string(m));
    }
    ExactCurvature out;
    const double theta = ctx.theta();
    const auto mass = ctx.mass();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> in;
        std::vector<std::size_t> rest;
        for (std::size_t l = 0; l < m; ++l) {
            ((mask >> l) & 1U ? in : rest).push_back(l);
        }
        if (rest.size() < 2) {
            continue;
        }
        const DetectionState state(ctx, AgentSet(in));
        for (std::size_t yi : rest) {
            const double den = state.gain(yi);
            if (den == 0.0) {
                out.skipped += rest.size() - 1;
                continue;
            }
            const auto col_i = ctx.matrix().column(yi);
            for (std::size_t yj : rest) {
                if (yj == yi) {
                    continue;
                }
                const auto col_j = ctx.matrix().column(yj);
                double num = 0.0;
                for (std::uint32_t k : ctx.support(yi)) {
                    const double p = col_i[k];
                    const double q = col_j[k];
                    const double miss = state.miss()[k] * (1.0 - q);
                    const double top = std::max(state.best()[k], q);
                    num += mass[k] * (theta * (p * miss) + (1.0 - theta) * std::max(p - top, 0.0));
                }
                out.alpha = std::max(out.alpha, num / den);
                ++out.evaluated;
            }
        }
    }
    return out;
}

ExactCurvature brute_force_partial(const CoverageContext& ctx, std::size_t agents, std::size_t cap)
{
    const std::size_t m = ctx.ground_size();
    if (agents < 1 || agents > m) {
        throw std::invalid_argument("brute force needs 1 <= N <= M");
    }
    const std::size_t per_point = binomial(m - 1, agents - 1);
    if (per_point > cap / m) {
        throw ResourceError("exact partial curvature needs " + std::to_string(m) + " x " + std::to_string(per_point) +
                            " evaluations, cap is " + std::to_string(cap));
    }
    ExactCurvature out;
    for (std::size_t y = 0; y < m; ++y) {
        const double h = ctx.singleton(y);
        if (h == 0.0) {
            out.skipped += per_point;
            continue;
        }
        const auto others = all_but(m, y);
        for_each_combination(others, agents - 1, [&](std::span<const std::size_t> chosen) {
            const AgentSet a(std::vector<std::size_t>(chosen.begin(), chosen.end()));
            const double ratio = DetectionState(ctx, a).gain(y) / h;
            out.alpha = std::max(out.alpha, 1.0 - ratio);
            ++out.evaluated;
        });
    }
    return out;
}

} // namespace coverbound
