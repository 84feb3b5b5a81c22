#include "nmoo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace nmoo {

namespace {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double sbx_eps = 1e-14;

    auto unit_draw(Rng& rng) -> double
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
} // namespace

void GAConfig::validate() const
{
    if (population_size < 4 || population_size % 2 != 0) {
        throw ConfigError("ga.population_size: must be an even integer >= 4");
    }
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
        throw ConfigError("ga.crossover_probability: must lie in [0, 1]");
    }
    if (!(crossover_eta > 0.0)) { throw ConfigError("ga.crossover_eta: must be > 0"); }
    if (mutation_probability && !(*mutation_probability >= 0.0 && *mutation_probability <= 1.0)) {
        throw ConfigError("ga.mutation_probability: must lie in [0, 1]");
    }
    if (!(mutation_eta > 0.0)) { throw ConfigError("ga.mutation_eta: must be > 0"); }
}

auto GAConfig::mutation_probability_for(std::size_t n_variables) const -> double
{
    return mutation_probability.value_or(1.0 / static_cast<double>(n_variables));
}

auto generations_for(GAConfig const& cfg, StrategyConfig const& strategy) -> std::uint32_t
{
    auto const per_generation = static_cast<std::uint64_t>(cfg.population_size) * strategy.cost_per_individual();
    auto const generations = per_generation == 0 ? 0 : cfg.total_budget / per_generation;
    if (generations < 2) {
        throw ConfigError(fmt::format(
            "ga.total_budget: {} executions allow {} generation(s) of {} at cost {}; at least 2 are required",
            cfg.total_budget, generations, cfg.population_size, strategy.cost_per_individual()));
    }
    return static_cast<std::uint32_t>(generations);
}

auto fast_non_dominated_sort(std::vector<ObjectiveVector> const& fitness) -> Fronts
{
    auto const n = fitness.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    Fronts fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(fitness[p], fitness[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(fitness[q], fitness[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) { fronts[0].push_back(p); }
    }
    if (fronts[0].empty()) { return {}; }

    for (std::size_t i = 0; !fronts[i].empty(); ++i) {
        std::vector<std::size_t> next;
        for (auto p : fronts[i]) {
            for (auto q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) { next.push_back(q); }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

auto fast_non_dominated_sort(std::vector<Individual>& population) -> Fronts
{
    std::vector<ObjectiveVector> fitness;
    fitness.reserve(population.size());
    for (auto const& ind : population) { fitness.push_back(ind.fitness); }
    auto fronts = fast_non_dominated_sort(fitness);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        for (auto i : fronts[r]) { population[i].rank = r; }
    }
    return fronts;
}

auto crowding_distance(std::vector<ObjectiveVector> const& front) -> std::vector<double>
{
    std::vector<double> distance(front.size(), 0.0);
    if (front.empty()) { return distance; }

    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < front.size(); ++i) {
        auto const seen = std::any_of(distinct.begin(), distinct.end(), [&](auto j) { return front[j] == front[i]; });
        if (!seen) { distinct.push_back(i); }
    }
    if (distinct.size() <= 2) {
        for (auto i : distinct) { distance[i] = inf; }
        return distance;
    }

    auto const m = front[0].size();
    std::vector<std::size_t> order(distinct);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return front[a][obj] < front[b][obj]; });
        auto const lo = front[order.front()][obj];
        auto const hi = front[order.back()][obj];
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        if (!(hi > lo)) { continue; }
        for (std::size_t i = 1; i + 1 < order.size(); ++i) {
            distance[order[i]] += (front[order[i + 1]][obj] - front[order[i - 1]][obj]) / (hi - lo);
        }
    }
    return distance;
}

auto rank_population(std::vector<Individual>& population) -> Fronts
{
    auto fronts = fast_non_dominated_sort(population);
    for (auto const& front : fronts) {
        std::vector<ObjectiveVector> fitness;
        fitness.reserve(front.size());
        for (auto i : front) { fitness.push_back(population[i].fitness); }
        auto const cd = crowding_distance(fitness);
        for (std::size_t j = 0; j < front.size(); ++j) { population[front[j]].crowding = cd[j]; }
    }
    return fronts;
}

auto binary_tournament(std::span<Individual const> population, Rng& rng) -> std::size_t
{
    require(!population.empty(), "tournament on an empty population");
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    auto const a = pick(rng);
    auto const b = pick(rng);
    auto const& ia = population[a];
    auto const& ib = population[b];
    if (ib.rank < ia.rank) { return b; }
    if (ib.rank == ia.rank && ib.crowding > ia.crowding) { return b; }
    return a;
}

auto sbx_crossover(std::span<double const> parent1, std::span<double const> parent2, SearchSpace const& space,
    GAConfig const& cfg, Rng& rng) -> std::pair<SolutionVector, SolutionVector>
{
    require(parent1.size() == space.size() && parent2.size() == space.size(), "sbx: parent length mismatch");
    SolutionVector c1(parent1.begin(), parent1.end());
    SolutionVector c2(parent2.begin(), parent2.end());
    if (unit_draw(rng) > cfg.crossover_probability) { return { c1, c2 }; }

    auto const eta = cfg.crossover_eta;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (unit_draw(rng) > 0.5) { continue; }
        if (std::abs(parent1[i] - parent2[i]) <= sbx_eps) { continue; }

        auto const y1 = std::min(parent1[i], parent2[i]);
        auto const y2 = std::max(parent1[i], parent2[i]);
        auto const yl = space[i].lower;
        auto const yu = space[i].upper;
        auto const u = unit_draw(rng);

        auto spread = [&](double beta) {
            auto const alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            return u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                                    : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };
        auto const betaq_low = spread(1.0 + 2.0 * (y1 - yl) / (y2 - y1));
        auto const betaq_high = spread(1.0 + 2.0 * (yu - y2) / (y2 - y1));
        auto const low = std::clamp(0.5 * ((y1 + y2) - betaq_low * (y2 - y1)), yl, yu);
        auto const high = std::clamp(0.5 * ((y1 + y2) + betaq_high * (y2 - y1)), yl, yu);

        if (unit_draw(rng) <= 0.5) {
            c1[i] = high;
            c2[i] = low;
        } else {
            c1[i] = low;
            c2[i] = high;
        }
    }
    return { c1, c2 };
}

auto polynomial_mutation(std::span<double const> x, SearchSpace const& space, GAConfig const& cfg, Rng& rng)
    -> SolutionVector
{
    require(x.size() == space.size(), "mutation: solution length mismatch");
    SolutionVector y(x.begin(), x.end());
    auto const pm = cfg.mutation_probability_for(space.size());
    auto const eta = cfg.mutation_eta;
    auto const power = 1.0 / (eta + 1.0);

    for (std::size_t i = 0; i < y.size(); ++i) {
        if (unit_draw(rng) >= pm) { continue; }
        auto const yl = space[i].lower;
        auto const yu = space[i].upper;
        auto const delta1 = (y[i] - yl) / (yu - yl);
        auto const delta2 = (yu - y[i]) / (yu - yl);
        auto const u = unit_draw(rng);
        double deltaq = 0.0;
        if (u <= 0.5) {
            auto const val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, power) - 1.0;
        } else {
            auto const val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, power);
        }
        y[i] = std::clamp(y[i] + deltaq * (yu - yl), yl, yu);
    }
    return y;
}

auto select_survivors(std::vector<Individual> merged, std::size_t count) -> std::vector<Individual>
{
    auto const fronts = rank_population(merged);
    std::vector<Individual> next;
    next.reserve(count);
    for (auto const& front : fronts) {
        if (next.size() + front.size() <= count) {
            for (auto i : front) { next.push_back(merged[i]); }
            continue;
        }
        auto order = front;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return merged[a].crowding > merged[b].crowding; });
        for (std::size_t j = 0; next.size() < count; ++j) { next.push_back(merged[order[j]]); }
        break;
    }
    rank_population(next);
    return next;
}

namespace {
    // Evaluates a batch against the archive as it stands, then commits in index order.
    auto evaluate_generation(std::vector<SolutionVector> const& candidates, StrategyConfig const& strategy,
        NoisyProblem const& problem, EvaluationArchive& archive, std::uint64_t seed, std::uint32_t generation)
        -> std::vector<Individual>
    {
        std::vector<PendingEvaluation> pending;
        pending.reserve(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            Rng stream(derive_seed(seed, generation + 1, i));
            pending.push_back(evaluate_candidate(strategy, problem, candidates[i], archive, stream));
        }
        std::vector<Individual> out;
        out.reserve(pending.size());
        for (auto& p : pending) {
            out.push_back({ p.solution, p.assigned, 0, 0.0 });
            commit(archive, std::move(p), generation);
        }
        return out;
    }
} // namespace

auto run(NoisyProblem const& problem, StrategyConfig const& strategy, GAConfig const& cfg) -> OptimizationResult
{
    cfg.validate();
    strategy.validate();
    auto const generations = generations_for(cfg, strategy);
    auto const& space = problem.space();

    Rng rng(mix64(cfg.seed));
    EvaluationArchive archive(space);

    std::vector<SolutionVector> candidates;
    candidates.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) { candidates.push_back(space.sample(rng)); }
    auto population = evaluate_generation(candidates, strategy, problem, archive, cfg.seed, 0);
    rank_population(population);

    for (std::uint32_t gen = 1; gen < generations; ++gen) {
        candidates.clear();
        while (candidates.size() < cfg.population_size) {
            auto const& p1 = population[binary_tournament(population, rng)].solution;
            auto const& p2 = population[binary_tournament(population, rng)].solution;
            auto [c1, c2] = sbx_crossover(p1, p2, space, cfg, rng);
            candidates.push_back(polynomial_mutation(c1, space, cfg, rng));
            candidates.push_back(polynomial_mutation(c2, space, cfg, rng));
        }
        auto offspring = evaluate_generation(candidates, strategy, problem, archive, cfg.seed, gen);

        std::vector<Individual> merged = std::move(population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        population = select_survivors(std::move(merged), cfg.population_size);
    }

    OptimizationResult result{ population, {}, std::move(archive), generations };
    std::vector<ObjectiveVector> fitness;
    for (auto const& ind : result.population) { fitness.push_back(ind.fitness); }
    for (auto i : pareto_filter_indices(fitness)) { result.predicted_front.push_back(result.population[i]); }
    return result;
}

} // namespace nmoo
