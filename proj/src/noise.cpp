#include "nmoo/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace nmoo {

auto StrategyConfig::repetition(std::uint32_t n) -> StrategyConfig
{
    StrategyConfig s;
    s.kind = Kind::repetition;
    s.repetitions = n;
    s.validate();
    return s;
}

auto StrategyConfig::knn(std::uint32_t k, double max_sed) -> StrategyConfig
{
    StrategyConfig s;
    s.kind = Kind::knn;
    s.k = k;
    s.max_sed = max_sed;
    s.validate();
    return s;
}

void StrategyConfig::validate() const
{
    switch (kind) {
    case Kind::baseline:
        break;
    case Kind::repetition:
        if (repetitions < 2) { throw ConfigError("approach.n: repetition count must be >= 2"); }
        break;
    case Kind::knn:
        if (k < 1) { throw ConfigError("approach.k: neighbour count must be >= 1"); }
        if (!(max_sed > 0.0)) { throw ConfigError("approach.max_sed: must be > 0"); }
        break;
    }
}

auto StrategyConfig::name() const -> std::string
{
    switch (kind) {
    case Kind::repetition: return fmt::format("Rep-{}", repetitions);
    case Kind::knn: return fmt::format("kNN-Avg-{}", k);
    default: return "B";
    }
}

auto StrategyConfig::canonical_name() const -> std::string
{
    if (kind == Kind::knn) { return fmt::format("kNN-Avg-{}/max_sed={}", k, max_sed); }
    return name();
}

auto sed(std::span<double const> x1, std::span<double const> x2, std::span<double const> sigma2) -> double
{
    require(x1.size() == x2.size() && x1.size() == sigma2.size(), "sed: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        auto const d = x1[i] - x2[i];
        sum += d * d / sigma2[i];
    }
    return std::sqrt(sum);
}

auto knn_neighbors(EvaluationArchive const& archive, std::span<double const> x, std::uint32_t k, double max_sed)
    -> std::vector<std::uint64_t>
{
    require(k >= 1, "knn_neighbors: k must be >= 1");
    if (k == 1 || archive.empty()) { return {}; }

    auto const sigma2 = archive.variances();
    std::vector<std::pair<double, std::uint64_t>> candidates;
    candidates.reserve(archive.size());
    for (auto const& e : archive.entries()) {
        auto const d = sed(x, e.solution, sigma2);
        if (d <= max_sed) { candidates.emplace_back(d, e.id); }
    }
    auto const keep = std::min<std::size_t>(k - 1, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end());

    std::vector<std::uint64_t> ids(keep);
    std::transform(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), ids.begin(),
        [](auto const& c) { return c.second; });
    return ids;
}

auto evaluate_candidate(StrategyConfig const& strategy, NoisyProblem const& problem, std::span<double const> x,
    EvaluationArchive const& archive, Rng& rng) -> PendingEvaluation
{
    PendingEvaluation out;
    out.solution.assign(x.begin(), x.end());

    switch (strategy.kind) {
    case StrategyConfig::Kind::baseline:
        out.raw = evaluate_noisy(problem, x, rng);
        out.assigned = out.raw;
        break;

    case StrategyConfig::Kind::repetition: {
        ObjectiveVector sum(problem.objective_count(), 0.0);
        for (std::uint32_t r = 0; r < strategy.repetitions; ++r) {
            auto const f = evaluate_noisy(problem, x, rng);
            for (std::size_t i = 0; i < sum.size(); ++i) { sum[i] += f[i]; }
        }
        for (auto& v : sum) { v /= static_cast<double>(strategy.repetitions); }
        out.raw = sum;
        out.assigned = std::move(sum);
        out.cost = strategy.repetitions;
        out.averaged = strategy.repetitions;
        break;
    }

    case StrategyConfig::Kind::knn: {
        out.raw = evaluate_noisy(problem, x, rng);
        auto const neighbours = knn_neighbors(archive, x, strategy.k, strategy.max_sed);
        // Neighbours contribute their raw observations only, never their assigned values.
        ObjectiveVector sum = out.raw;
        for (auto id : neighbours) {
            auto const& raw = archive.entries()[id].raw;
            for (std::size_t i = 0; i < sum.size(); ++i) { sum[i] += raw[i]; }
        }
        out.averaged = neighbours.size() + 1;
        for (auto& v : sum) { v /= static_cast<double>(out.averaged); }
        out.assigned = std::move(sum);
        break;
    }
    }
    return out;
}

auto commit(EvaluationArchive& archive, PendingEvaluation pending, std::uint32_t generation) -> std::uint64_t
{
    Evaluation e;
    e.solution = std::move(pending.solution);
    e.raw = std::move(pending.raw);
    e.assigned = std::move(pending.assigned);
    e.generation = generation;
    e.cost = pending.cost;
    return archive.insert(std::move(e));
}

auto assign_fitness(StrategyConfig const& strategy, NoisyProblem const& problem, std::span<double const> x,
    EvaluationArchive& archive, Rng& rng, std::uint32_t generation) -> ObjectiveVector
{
    auto pending = evaluate_candidate(strategy, problem, x, archive, rng);
    auto assigned = pending.assigned;
    commit(archive, std::move(pending), generation);
    return assigned;
}

} // namespace nmoo
