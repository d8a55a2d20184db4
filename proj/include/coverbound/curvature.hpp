#pragma once

#include "coverbound/agent_set.hpp"
#include "coverbound/coverage.hpp"
#include "coverbound/greedy.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coverbound {

// A curvature measure was requested on an instance where it is undefined.
class CurvatureError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// 1 - (1 - 1/N)^N.
[[nodiscard]] double beta_fundamental(std::size_t n);
// (1/a)(1 - (1 - a/N)^N), equal to 1 at a = 0. Also the partial bound.
[[nodiscard]] double beta_total(double alpha, std::size_t n);
// 1 - a(1 - 1/N).
[[nodiscard]] double beta_greedy(double alpha, std::size_t n);
// 1 - (sum_{k=1}^{N-1} a^k / sum_{k=0}^{N-1} a^k)^N.
[[nodiscard]] double beta_elemental(double alpha, std::size_t n);
[[nodiscard]] inline double beta_partial(double alpha, std::size_t n) { return beta_total(alpha, n); }

struct CurvatureBound
{
    double alpha = 0.0;
    double beta = 1.0;
    std::size_t skipped = 0; // ratios dropped for a zero denominator
    bool clamped = false;
};

// Throws CurvatureError if some H({y}) = 0.
[[nodiscard]] CurvatureBound total_curvature(const CoverageContext& ctx, std::size_t agents);
[[nodiscard]] CurvatureBound greedy_curvature(const GreedyTrace& trace, std::size_t agents);
[[nodiscard]] CurvatureBound elemental_upper_bound(const CoverageContext& ctx, std::size_t agents);
// Throws CurvatureError if some H({y}) = 0 (N > 1).
[[nodiscard]] CurvatureBound partial_upper_bound(const CoverageContext& ctx, std::size_t agents);

enum class Inflation
{
    Fundamental, // 1 / beta_f(N)
    Elemental,   // 1 / beta_e(N), used only when theta = 1
};

struct ExtendedTerm
{
    std::size_t index = 0;
    double value = 0.0;
};

struct ExtendedGreedyBound
{
    double alpha = 0.0; // upper estimate of H(S*), in units of H
    double beta = 1.0;
    bool clamped = false;
    double inflation = 1.0; // factor applied to the block terms
    std::vector<std::size_t> q;
    std::vector<ExtendedTerm> terms;
};

// {nN+1 : 0 <= n < m} u {nN : 1 <= n <= m} u {M}, m = floor(M/N), ascending.
[[nodiscard]] std::vector<std::size_t> extended_index_set(std::size_t ground, std::size_t agents);

// An empty q means the full index set. Throws ValidationError if q has an
// index outside the full set.
[[nodiscard]] ExtendedGreedyBound extended_greedy_curvature(const GreedyTrace& trace, const CoverageContext& ctx,
                                                            std::size_t agents, std::span<const std::size_t> q = {},
                                                            Inflation inflation = Inflation::Fundamental);

struct AnalysisOptions
{
    std::vector<std::size_t> q; // empty = full index set
    Inflation inflation = Inflation::Fundamental;
};

struct CurvatureReport
{
    std::size_t agents = 0;
    double beta_f = 1.0;
    std::optional<CurvatureBound> total;
    CurvatureBound greedy;
    CurvatureBound elemental;
    std::optional<CurvatureBound> partial;
    std::optional<ExtendedGreedyBound> extended;
    // Reasons for each missing measure.
    std::vector<std::string> notes;

    [[nodiscard]] std::optional<double> gamma_t() const;
    [[nodiscard]] double gamma_g() const { return 1.0 - greedy.alpha; }
    [[nodiscard]] double best_bound() const;
    [[nodiscard]] std::string best_name() const;
};

// The trace must cover every index in the requested Q (a full-horizon trace
// always does).
[[nodiscard]] CurvatureReport analyze(const CoverageContext& ctx, const GreedyTrace& trace,
                                      const AnalysisOptions& options = {});

inline constexpr std::size_t kDefaultBruteForceCap = 200000;

struct OptimumResult
{
    AgentSet set;
    double value = 0.0;
    std::size_t evaluated = 0;
};

struct ExactCurvature
{
    double alpha = 0.0;
    std::size_t skipped = 0;
    std::size_t evaluated = 0;
};

// C(n, k), saturating at SIZE_MAX.
[[nodiscard]] std::size_t binomial(std::size_t n, std::size_t k);

[[nodiscard]] OptimumResult brute_force_optimum(const CoverageContext& ctx, std::size_t agents,
                                                std::size_t cap = kDefaultBruteForceCap);
[[nodiscard]] ExactCurvature brute_force_elemental(const CoverageContext& ctx, std::size_t max_ground = 10);
[[nodiscard]] ExactCurvature brute_force_partial(const CoverageContext& ctx, std::size_t agents,
                                                 std::size_t cap = kDefaultBruteForceCap);

} // namespace coverbound
