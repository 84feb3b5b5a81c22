#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nmoo/problems.hpp"
#include "oracles.hpp"
#include "zdt1_reference.hpp"

using namespace nmoo;

TEST(Zdt1, OriginAndCorner)
{
    SolutionVector x(10, 0.0);
    EXPECT_EQ(zdt1_true(x), (ObjectiveVector{ 0.0, 1.0 }));
    x[0] = 1.0;
    auto const f = zdt1_true(x);
    EXPECT_DOUBLE_EQ(f[0], 1.0);
    EXPECT_DOUBLE_EQ(f[1], 0.0);
}

TEST(Zdt1, ReferenceFrontFirstPoint)
{
    SolutionVector x(10, 0.0);
    x[0] = 0.02020202;
    auto const f = zdt1_true(x);
    EXPECT_NEAR(f[0], 0.02020202, 1e-8);
    EXPECT_NEAR(f[1], 0.85786619, 1e-8);
}

TEST(Zdt1, OffFrontUsesG)
{
    // x = (0.25, 1, ..., 1): g = 10, f2 = 10 (1 - sqrt(0.025))
    SolutionVector x(10, 1.0);
    x[0] = 0.25;
    auto const f = zdt1_true(x);
    EXPECT_DOUBLE_EQ(f[1], 10.0 * (1.0 - std::sqrt(0.025)));
}

TEST(Zdt1, OutOfDomainIsContractViolation)
{
    EXPECT_THROW((void)zdt1_true(std::vector{ 1.5, 0.0 }), ContractViolation);
    EXPECT_THROW((void)zdt1_true(std::vector{ 0.5 }), ContractViolation);
}

TEST(IdealFront, MatchesReferenceList)
{
    Zdt1 const problem;
    auto const front = problem.ideal_front(49);
    ASSERT_EQ(front.size(), 49U);
    for (std::size_t i = 0; i < front.size(); ++i) {
        EXPECT_NEAR(front[i][0], zdt1_reference_front[i].first, 1e-6);
        EXPECT_NEAR(front[i][1], zdt1_reference_front[i].second, 1e-6);
    }
}

TEST(IdealFront, MutuallyNonDominatingAndDecreasing)
{
    auto const front = zdt1_front(100);
    for (std::size_t i = 0; i + 1 < front.size(); ++i) {
        EXPECT_LT(front[i][0], front[i + 1][0]);
        EXPECT_GT(front[i][1], front[i + 1][1]);
    }
    EXPECT_EQ(pareto_filter(front).size(), front.size());
}

TEST(IdealFront, UnsupportedForSurrogate)
{
    ScenarioSurrogate const s(ScenarioSpace::ss1);
    EXPECT_FALSE(s.has_analytic_front());
    EXPECT_THROW((void)s.ideal_front(10), UnsupportedError);
}

TEST(FrontDistance, ZeroOnFrontAndPositiveAbove)
{
    for (double f1 : { 0.0, 0.1, 0.5, 0.9, 1.0 }) {
        EXPECT_NEAR(zdt1_front_distance(std::vector{ f1, 1.0 - std::sqrt(f1) }), 0.0, 1e-9);
    }
    // dense sampling of the front as the reference
    for (auto const& p : { std::vector{ 1.0, 0.5 }, std::vector{ 0.3, 0.9 }, std::vector{ 0.05, 2.0 } }) {
        double best = 1e9;
        for (int i = 0; i <= 200000; ++i) {
            auto const f1 = i / 200000.0;
            best = std::min(best, std::hypot(p[0] - f1, p[1] - (1.0 - std::sqrt(f1))));
        }
        EXPECT_NEAR(zdt1_front_distance(p), best, 1e-6);
        EXPECT_GT(zdt1_front_distance(p), 0.0);
    }
}

TEST(EvaluateNoisy, ZeroNoiseIsExact)
{
    Zdt1 const problem(10, { 0.0, 0.0 });
    Rng rng(1);
    SolutionVector x(10, 0.3);
    EXPECT_EQ(evaluate_noisy(problem, x, rng), zdt1_true(x));
}

TEST(EvaluateNoisy, IndependentDrawsButSeedDeterministic)
{
    Zdt1 const problem;
    SolutionVector const x(10, 0.3);
    Rng a(42);
    auto const first = evaluate_noisy(problem, x, a);
    auto const second = evaluate_noisy(problem, x, a);
    EXPECT_NE(first, second);
    Rng b(42);
    EXPECT_EQ(evaluate_noisy(problem, x, b), first);
    EXPECT_EQ(evaluate_noisy(problem, x, b), second);
}

TEST(EvaluateNoisy, RejectsOutOfBounds)
{
    Zdt1 const problem;
    Rng rng(0);
    EXPECT_THROW((void)evaluate_noisy(problem, SolutionVector(10, 2.0), rng), ContractViolation);
}

TEST(EvaluateNoisy, LawOfLargeNumbers)
{
    Zdt1 const problem;
    SolutionVector const x(10, 0.2);
    auto const truth = zdt1_true(x);
    Rng rng(2021);
    constexpr int n = 100000;
    ObjectiveVector mean(2, 0.0);
    for (int i = 0; i < n; ++i) {
        auto const f = evaluate_noisy(problem, x, rng);
        mean[0] += f[0] / n;
        mean[1] += f[1] / n;
    }
    for (int k = 0; k < 2; ++k) { EXPECT_NEAR(mean[k], truth[k], 4.0 * 0.05 / std::sqrt(double(n))); }
}

TEST(EvaluateNoisy, EmpiricalNoiseSanity)
{
    Zdt1 const problem(10, { 0.05, 0.2 });
    SolutionVector const x(10, 0.7);
    auto const truth = zdt1_true(x);
    Rng rng(99);
    constexpr int n = 10000;
    std::vector<std::vector<double>> obs(2);
    for (int i = 0; i < n; ++i) {
        auto const f = evaluate_noisy(problem, x, rng);
        obs[0].push_back(f[0]);
        obs[1].push_back(f[1]);
    }
    for (int k = 0; k < 2; ++k) {
        auto const sigma = problem.noise_sigma()[k];
        auto const mean = std::accumulate(obs[k].begin(), obs[k].end(), 0.0) / n;
        EXPECT_NEAR(mean, truth[k], 5.0 * sigma / std::sqrt(double(n)));
        EXPECT_NEAR(std::sqrt(oracle::sample_variance(obs[k])), sigma, 0.1 * sigma);
    }
}

TEST(ScenarioSurrogate, SearchSpaces)
{
    auto const ss1 = scenario_search_space(ScenarioSpace::ss1);
    ASSERT_EQ(ss1.size(), 2U);
    EXPECT_EQ(ss1[0].lower, -100.0);
    EXPECT_EQ(ss1[0].upper, 60.0);
    EXPECT_EQ(ss1[1].lower, 35.0);
    EXPECT_EQ(ss1[1].upper, 65.0);
    auto const ss2 = scenario_search_space(ScenarioSpace::ss2);
    ASSERT_EQ(ss2.size(), 4U);
    EXPECT_EQ(ss2[1].lower, 3.0);
    EXPECT_EQ(ss2[1].upper, 100.0);
    EXPECT_EQ(ss2[2].upper, 10.0);
    EXPECT_EQ(ss2[3].lower, -20.0);
    EXPECT_EQ(ss2[3].upper, 20.0);
}

TEST(ScenarioSurrogate, ZeroDistanceAtCriticalPosition)
{
    ScenarioSurrogateParams const p;
    for (double v : { 35.0, 50.0, 65.0 }) {
        auto const f = scenario_surrogate_true(std::vector{ p.critical_position(v), v }, ScenarioSpace::ss1, p);
        EXPECT_DOUBLE_EQ(f[0], 0.0);
        EXPECT_DOUBLE_EQ(f[1], v);
    }
    auto const c = p.critical_position(20.0, 1.8, -3.0);
    EXPECT_DOUBLE_EQ(c, -40.0 + 10.0 + 10.0 - 3.0);
    auto const f = scenario_surrogate_true(std::vector{ c, 20.0, 1.8, -3.0 }, ScenarioSpace::ss2, p);
    EXPECT_NEAR(f[0], 0.0, 1e-12);
}

TEST(ScenarioSurrogate, DistanceGrowsWithPositionError)
{
    ScenarioSurrogateParams p;
    p.distance_slope = 1.5;
    auto const c = p.critical_position(40.0);
    auto const f = scenario_surrogate_true(std::vector{ c + 4.0, 40.0 }, ScenarioSpace::ss1, p);
    EXPECT_DOUBLE_EQ(f[0], 6.0);
}

TEST(ScenarioSurrogate, VelocityObjectiveIsNoiseFree)
{
    ScenarioSurrogate const s(ScenarioSpace::ss2);
    EXPECT_EQ(s.noise_sigma(), (std::vector<double>{ 2.0, 0.0 }));
    Rng rng(5);
    SolutionVector const x{ 0.0, 47.5, 2.0, 1.0 };
    for (int i = 0; i < 100; ++i) { EXPECT_EQ(evaluate_noisy(s, x, rng)[1], 47.5); }
}

TEST(ScenarioSurrogate, CollisionRateAtCriticalPosition)
{
    // P(|N(0, 2)| < 0.5) = erf(0.5 / (2 sqrt 2))
    auto const expected = std::erf(0.5 / (2.0 * std::sqrt(2.0)));
    EXPECT_NEAR(expected, 0.197, 0.001);

    ScenarioSurrogate const s(ScenarioSpace::ss1);
    auto const v = 50.0;
    SolutionVector const x{ s.params().critical_position(v), v };
    Rng rng(123);
    int collisions = 0;
    constexpr int n = 10000;
    for (int i = 0; i < n; ++i) { collisions += is_collision(evaluate_noisy(s, x, rng)[0], s.params()) ? 1 : 0; }
    EXPECT_NEAR(collisions / double(n), expected, 0.02);
    EXPECT_LT(collisions, n); // no configuration always collides
}

TEST(ScenarioSurrogate, InvalidParamsAreConfigErrors)
{
    ScenarioSurrogateParams p;
    p.collision_threshold = 0.0;
    EXPECT_THROW(ScenarioSurrogate(ScenarioSpace::ss1, p), ConfigError);
    p = {};
    p.noise_sigma_distance = -1.0;
    EXPECT_THROW(ScenarioSurrogate(ScenarioSpace::ss1, p), ConfigError);
}

TEST(ScenarioSurrogate, DefaultReferenceBoundsAllTrueObjectives)
{
    for (auto kind : { ScenarioSpace::ss1, ScenarioSpace::ss2 }) {
        ScenarioSurrogate const s(kind);
        auto const ref = s.reference_point();
        Rng rng(8);
        for (int i = 0; i < 20000; ++i) {
            auto const f = s.true_objectives(s.space().sample(rng));
            EXPECT_LT(f[0], ref[0]);
            EXPECT_LE(f[1], ref[1]);
        }
    }
    auto const ref1 = ScenarioSurrogate(ScenarioSpace::ss1).reference_point();
    EXPECT_DOUBLE_EQ(ref1[0], 92.5 + 10.0);
    EXPECT_DOUBLE_EQ(ref1[1], 65.0);
}
