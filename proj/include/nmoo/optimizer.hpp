#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nmoo/core.hpp"
#include "nmoo/noise.hpp"
#include "nmoo/problems.hpp"
#include "nmoo/types.hpp"

namespace nmoo {

struct Individual {
    SolutionVector solution;
    ObjectiveVector fitness; // assigned by the active noise strategy
    std::size_t rank{0};
    double crowding{0.0};
};

struct GAConfig {
    std::size_t population_size{10};
    std::uint64_t total_budget{500};
    double crossover_probability{0.9};
    double crossover_eta{15.0};
    std::optional<double> mutation_probability; // defaults to 1 / n_variables
    double mutation_eta{20.0};
    std::uint64_t seed{0};

    void validate() const;
    [[nodiscard]] auto mutation_probability_for(std::size_t n_variables) const -> double;
};

/// floor(total_budget / (population_size * cost_per_individual)). Throws ConfigError below 2.
[[nodiscard]] auto generations_for(GAConfig const& cfg, StrategyConfig const& strategy) -> std::uint32_t;

using Fronts = std::vector<std::vector<std::size_t>>;

[[nodiscard]] auto fast_non_dominated_sort(std::vector<ObjectiveVector> const& fitness) -> Fronts;
/// Sorts by fitness and writes each individual's rank.
auto fast_non_dominated_sort(std::vector<Individual>& population) -> Fronts;

/// NSGA-II crowding distance of one front. Per-objective boundary points get +inf, zero-range
/// objectives contribute nothing. Repeated copies of a point get 0; the first copy is scored
/// among the distinct points.
[[nodiscard]] auto crowding_distance(std::vector<ObjectiveVector> const& front) -> std::vector<double>;

/// Sets rank and crowding for every individual; returns the fronts.
auto rank_population(std::vector<Individual>& population) -> Fronts;

/// Index of the winner of a binary tournament on (rank asc, crowding desc); ties go to the first draw.
[[nodiscard]] auto binary_tournament(std::span<Individual const> population, Rng& rng) -> std::size_t;

[[nodiscard]] auto sbx_crossover(std::span<double const> parent1, std::span<double const> parent2,
    SearchSpace const& space, GAConfig const& cfg, Rng& rng) -> std::pair<SolutionVector, SolutionVector>;

[[nodiscard]] auto polynomial_mutation(std::span<double const> x, SearchSpace const& space,
    GAConfig const& cfg, Rng& rng) -> SolutionVector;

/// Picks `count` survivors from a merged population by front, then crowding.
[[nodiscard]] auto select_survivors(std::vector<Individual> merged, std::size_t count) -> std::vector<Individual>;

struct OptimizationResult {
    std::vector<Individual> population;
    std::vector<Individual> predicted_front; // non-dominated members of the final population
    EvaluationArchive archive;
    std::uint32_t generations{};
};

/// Runs NSGA-II for the budget-implied number of generations (the initial population counts
/// as the first). Every evaluation goes through `strategy`; within a generation all candidates
/// see the archive as it was at the start of that generation.
[[nodiscard]] auto run(NoisyProblem const& problem, StrategyConfig const& strategy, GAConfig const& cfg) -> OptimizationResult;

} // namespace nmoo
