#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nmoo/core.hpp"
#include "nmoo/problems.hpp"
#include "nmoo/types.hpp"

namespace nmoo {

/// How the fitness reported to the search is derived from noisy observations.
struct StrategyConfig {
    enum class Kind { baseline, repetition, knn };

    static constexpr double default_max_sed = 2.0;

    Kind kind{Kind::baseline};
    std::uint32_t repetitions{1};  // Rep-n
    std::uint32_t k{1};            // kNN-Avg-k: the observation itself plus up to k-1 neighbours
    double max_sed{std::numeric_limits<double>::infinity()};

    static auto baseline() -> StrategyConfig { return {}; }
    static auto repetition(std::uint32_t n) -> StrategyConfig;
    static auto knn(std::uint32_t k, double max_sed = default_max_sed) -> StrategyConfig;

    void validate() const;
    /// Simulator executions charged per evaluated individual.
    [[nodiscard]] auto cost_per_individual() const noexcept -> std::uint32_t
    {
        return kind == Kind::repetition ? repetitions : 1U;
    }
    /// Short display name: "B", "Rep-5", "kNN-Avg-10".
    [[nodiscard]] auto name() const -> std::string;
    /// Name including every hyperparameter; equal iff the strategies behave identically.
    [[nodiscard]] auto canonical_name() const -> std::string;
};

/// Standardized Euclidean distance: sqrt(sum_i (x1_i - x2_i)^2 / sigma2_i).
[[nodiscard]] auto sed(std::span<double const> x1, std::span<double const> x2, std::span<double const> sigma2) -> double;

/// Ids of up to k-1 archived evaluations nearest to `x` by sed, using the archive's current
/// variances. Entries farther than `max_sed` are excluded; ties go to the lower id.
[[nodiscard]] auto knn_neighbors(EvaluationArchive const& archive, std::span<double const> x,
    std::uint32_t k, double max_sed) -> std::vector<std::uint64_t>;

/// Result of evaluating one candidate, not yet committed to an archive.
struct PendingEvaluation {
    SolutionVector solution;
    ObjectiveVector raw;
    ObjectiveVector assigned;
    std::uint32_t cost{1};
    std::size_t averaged{1}; // number of raw values folded into `assigned`
};

/// Evaluates `x` under `strategy`, reading neighbours from `archive` without modifying it.
[[nodiscard]] auto evaluate_candidate(StrategyConfig const& strategy, NoisyProblem const& problem,
    std::span<double const> x, EvaluationArchive const& archive, Rng& rng) -> PendingEvaluation;

/// Appends a pending evaluation as one archive entry.
auto commit(EvaluationArchive& archive, PendingEvaluation pending, std::uint32_t generation) -> std::uint64_t;

/// Evaluates `x`, archives exactly one entry and returns the assigned fitness.
auto assign_fitness(StrategyConfig const& strategy, NoisyProblem const& problem, std::span<double const> x,
    EvaluationArchive& archive, Rng& rng, std::uint32_t generation = 0) -> ObjectiveVector;

} // namespace nmoo
