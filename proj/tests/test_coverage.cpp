#include "coverbound/coverage.hpp"
#include "coverbound/errors.hpp"
#include "coverbound/scenario.hpp"
#include "support/random_scenarios.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace coverbound;
using testsupport::random_instance;
using testsupport::RandomConfig;

namespace {

Scenario small_blank(double delta, double lambda, double theta)
{
    Scenario s = builtin_scenario("blank600");
    s.sensing = {delta, lambda};
    s.theta = theta;
    s.ground.pitch = 150;
    s.resolution = 20;
    s.solver.agents = 3;
    return s;
}

AgentSet subset_from_mask(std::size_t mask, const std::vector<std::size_t>& pool)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if ((mask >> i) & 1U) {
            idx.push_back(pool[i]);
        }
    }
    return AgentSet(idx);
}

// Exhaustive normalized / monotone / submodular check of f over subsets of
// pool, with f's gains read from the set function itself.
template <typename F>
void check_polymatroid(const F& f, const std::vector<std::size_t>& pool, double tol)
{
    REQUIRE(std::abs(f(AgentSet{})) <= tol);
    const std::size_t n = pool.size();
    for (std::size_t big = 0; big < (std::size_t{1} << n); ++big) {
        const AgentSet b = subset_from_mask(big, pool);
        const double fb = f(b);
        // Every subset a of b.
        for (std::size_t small = big;; small = (small - 1) & big) {
            const AgentSet a = subset_from_mask(small, pool);
            const double fa = f(a);
            REQUIRE(fa <= fb + tol);
            for (std::size_t i = 0; i < n; ++i) {
                if ((big >> i) & 1U) {
                    continue;
                }
                const double gb = f(b.with(pool[i])) - fb;
                const double ga = f(a.with(pool[i])) - fa;
                REQUIRE(gb <= ga + tol);
            }
            if (small == 0) {
                break;
            }
        }
    }
}

} // namespace

TEST_CASE("coverage basics")
{
    const Instance inst = build_instance(small_blank(200, 0.012, 0.5));
    const CoverageContext& ctx = inst.ctx;
    REQUIRE(ctx.ground_size() == 16);
    REQUIRE(ctx.grid_size() == 400);
    CHECK(ctx.coverage(AgentSet{}) == 0.0);
    CHECK(ctx.total_mass() == doctest::Approx(360000.0));

    const Instance full = build_instance(small_blank(5000, 0.0, 0.3));
    CHECK(full.ctx.coverage(AgentSet({3})) == full.ctx.total_mass());
    CHECK(full.ctx.coverage(AgentSet({1, 7, 9})) == full.ctx.total_mass());
    CHECK(full.ctx.marginal_coverage(4, AgentSet({1})) == 0.0);
}

TEST_CASE("single agent coverage matches a direct quadrature loop")
{
    const Scenario s = small_blank(200, 0.012, 0.5);
    const Instance inst = build_instance(s);
    const CoverageContext& ctx = inst.ctx;
    for (std::size_t l = 0; l < ctx.ground_size(); ++l) {
        const Point g = ctx.ground().points[l];
        double expected = 0.0;
        for (std::size_t i = 0; i < 20; ++i) {
            for (std::size_t j = 0; j < 20; ++j) {
                const Point x{15.0 + 30.0 * static_cast<double>(j), 15.0 + 30.0 * static_cast<double>(i)};
                const double d = std::hypot(x.x - g.x, x.y - g.y);
                expected += 900.0 * (d <= 200.0 ? std::exp(-0.012 * d) : 0.0);
            }
        }
        CHECK(ctx.coverage(AgentSet({l})) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(ctx.singleton(l) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("coverage from independent pointwise evaluation")
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto r = random_instance(rng);
        const CoverageContext& ctx = r.instance.ctx;
        std::vector<std::size_t> all(ctx.ground_size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        const std::vector<std::size_t> pick(all.begin(), all.begin() + 3);
        const AgentSet s(pick);
        std::vector<Point> agents;
        for (std::size_t i : s) {
            agents.push_back(ctx.ground().points[i]);
        }
        double expected = 0.0;
        for (std::size_t k = 0; k < ctx.grid_size(); ++k) {
            expected += ctx.grid().weights[k] * ctx.grid().density[k] *
                        detect(ctx.grid().points[k], agents, ctx.blend(), r.scenario.sensing, r.instance.mission);
        }
        CHECK(ctx.coverage(s) == doctest::Approx(expected).epsilon(1e-12));
        // Order of the input indices does not matter.
        std::vector<std::size_t> reversed(pick.rbegin(), pick.rend());
        CHECK(ctx.coverage(AgentSet(reversed)) == ctx.coverage(s));
    }
}

TEST_CASE("marginals agree with coverage differences")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto r = random_instance(rng);
        const CoverageContext& ctx = r.instance.ctx;
        const double scale = std::max(1.0, ctx.total_mass());
        std::vector<std::size_t> idx(ctx.ground_size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        const AgentSet s(std::vector<std::size_t>(idx.begin(), idx.begin() + 3));
        const std::size_t y = idx[4];
        const double direct = ctx.coverage(s.with(y)) - ctx.coverage(s);
        CHECK(std::abs(ctx.marginal_coverage(y, s) - direct) <= 1e-12 * scale);
        CHECK(ctx.marginal_coverage(y, AgentSet{}) == ctx.singleton(y));
        CHECK_THROWS_AS((void)ctx.marginal_coverage(idx[0], s), std::invalid_argument);
        CHECK_THROWS_AS((void)ctx.coverage(AgentSet({ctx.ground_size()})), std::out_of_range);

        // Set marginals.
        const AgentSet a(std::vector<std::size_t>(idx.begin(), idx.begin() + 2));
        const AgentSet b(std::vector<std::size_t>(idx.begin() + 2, idx.begin() + 5));
        CHECK(ctx.marginal_coverage_set(a, a.unite(b)) == 0.0);
        CHECK(std::abs(ctx.marginal_coverage_set(b, AgentSet{}) - ctx.coverage(b)) <= 1e-12 * scale);
        const double set_gain = ctx.marginal_coverage_set(b, a);
        CHECK(std::abs(set_gain - (ctx.coverage(a.unite(b)) - ctx.coverage(a))) <= 1e-12 * scale);
        double best_single = 0.0;
        for (std::size_t l : b) {
            best_single = std::max(best_single, ctx.marginal_coverage(l, a));
        }
        CHECK(set_gain >= best_single - 1e-12 * scale);
        // Overlapping B is allowed and only its part outside A counts.
        const AgentSet overlap(std::vector<std::size_t>(idx.begin() + 1, idx.begin() + 4));
        CHECK(std::abs(ctx.marginal_coverage_set(overlap, a) - ctx.marginal_coverage_set(overlap.minus(a), a)) <=
              1e-12 * scale);
    }
}

TEST_CASE("zero density gives zero coverage")
{
    Scenario s = small_blank(200, 0.01, 0.5);
    s.density.uniform = 0.0;
    const Instance inst = build_instance(s);
    CHECK(inst.ctx.coverage(AgentSet({0, 5, 9})) == 0.0);
    CHECK(inst.ctx.singleton(3) == 0.0);
}

TEST_CASE("H is a polymatroid on random triples")
{
    std::mt19937_64 rng(2024);
    RandomConfig cfg;
    cfg.min_ground = 10;
    cfg.max_ground = 20;
    for (double theta : {0.0, 0.3, 0.5, 1.0}) {
        int triples = 0;
        while (triples < 1000) {
            auto r = random_instance(rng, cfg);
            r.scenario.theta = theta;
            const Instance inst = build_instance(r.scenario);
            const CoverageContext& ctx = inst.ctx;
            const std::size_t m = ctx.ground_size();
            CHECK(ctx.coverage(AgentSet{}) == 0.0);
            for (int t = 0; t < 100; ++t, ++triples) {
                std::vector<std::size_t> perm(m);
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                std::shuffle(perm.begin(), perm.end(), rng);
                const std::size_t nb = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
                const std::size_t na = std::uniform_int_distribution<std::size_t>(0, nb)(rng);
                const AgentSet b(std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(nb)));
                const AgentSet a(std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(na)));
                const std::size_t y = perm[nb];
                const double ga = ctx.marginal_coverage(y, a);
                const double gb = ctx.marginal_coverage(y, b);
                REQUIRE(ga >= 0.0);
                REQUIRE(gb >= 0.0);
                REQUIRE(gb <= ga);
                REQUIRE(ctx.coverage(a) <= ctx.coverage(b));
            }
        }
    }
}

TEST_CASE("marginal objectives G_A and G_B are polymatroids")
{
    std::mt19937_64 rng(88);
    RandomConfig cfg;
    cfg.min_ground = 6;
    cfg.max_ground = 8;
    for (int trial = 0; trial < 6; ++trial) {
        auto r = random_instance(rng, cfg);
        const CoverageContext& ctx = r.instance.ctx;
        const std::size_t m = ctx.ground_size();
        const double tol = 1e-9 * std::max(1.0, ctx.total_mass());
        const AgentSet fixed = trial % 2 == 0 ? AgentSet({0}) : AgentSet({1, m - 1});
        std::vector<std::size_t> pool;
        for (std::size_t l = 0; l < m; ++l) {
            if (!fixed.contains(l)) {
                pool.push_back(l);
            }
        }
        const MarginalObjective g_a(ctx, fixed);
        check_polymatroid([&](const AgentSet& s) { return g_a.value(s); }, pool, tol);
        const NegatedMarginalObjective g_b(ctx, fixed);
        check_polymatroid([&](const AgentSet& s) { return g_b.value(s); }, pool, tol);

        // G_B(A) against its definition -Delta H(B | A) + H(B).
        for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); mask += 3) {
            const AgentSet a = subset_from_mask(mask, pool);
            const double def = -ctx.marginal_coverage_set(fixed, a) + ctx.coverage(fixed);
            REQUIRE(std::abs(g_b.value(a) - def) <= tol);
            REQUIRE(std::abs(g_a.value(a) - ctx.marginal_coverage_set(a, fixed)) <= tol);
        }
        CHECK_THROWS_AS((void)g_b.value(fixed), std::invalid_argument);
        CHECK_THROWS_AS((void)g_a.value(fixed), std::invalid_argument);
    }
}

TEST_CASE("negated marginal objective saturates at H(B)")
{
    // Two co-located candidates under full sensing: once A holds one of them,
    // B adds nothing.
    Scenario s = builtin_scenario("blank600");
    s.sensing = {5000, 0.0};
    s.ground.points = {{100, 100}, {500, 500}, {300, 300}};
    s.resolution = 10;
    s.solver.agents = 1;
    s.theta = 1.0;
    const Instance inst = build_instance(s);
    const NegatedMarginalObjective g(inst.ctx, AgentSet({0}));
    CHECK(g.value(AgentSet{}) == 0.0);
    CHECK(g.value(AgentSet({1})) == doctest::Approx(inst.ctx.coverage(AgentSet({0}))));
    CHECK(g.fixed_value() == inst.ctx.coverage(AgentSet({0})));
    CHECK_THROWS_AS(NegatedMarginalObjective(inst.ctx, AgentSet{}), std::invalid_argument);
}

TEST_CASE("incremental sessions agree with from-scratch values")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto r = random_instance(rng);
        const CoverageContext& ctx = r.instance.ctx;
        const std::size_t m = ctx.ground_size();
        const double tol = 1e-12 * std::max(1.0, ctx.total_mass());
        CoverageObjective h(ctx);
        MarginalObjective ga(ctx, AgentSet({0}));
        NegatedMarginalObjective gb(ctx, AgentSet({0}));
        for (SetObjective* f : std::initializer_list<SetObjective*>{&h, &ga, &gb}) {
            f->reset();
            REQUIRE(std::abs(f->current()) <= tol);
            AgentSet w;
            for (std::size_t l = 1; l < m; l += 2) {
                const double gain = f->gain(l);
                const double expected = f->value(w.with(l)) - f->value(w);
                REQUIRE(std::abs(gain - expected) <= tol);
                f->commit(l);
                w = w.with(l);
                REQUIRE(std::abs(f->current() - f->value(w)) <= tol);
            }
        }
        CHECK_THROWS_AS((void)ga.gain(0), std::invalid_argument);
        CHECK_THROWS_AS((void)gb.gain(0), std::invalid_argument);
    }
}
