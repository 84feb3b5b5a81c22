#include "nmoo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "nmoo/core.hpp"

namespace nmoo {

auto hypervolume_2d(std::vector<ObjectiveVector> const& front, std::span<double const> ref) -> double
{
    if (ref.size() != 2) { throw UnsupportedError(fmt::format("hypervolume for {} objectives is not supported", ref.size())); }

    std::vector<std::pair<double, double>> pts;
    pts.reserve(front.size());
    for (auto const& p : front) {
        if (p.size() != 2) { throw UnsupportedError(fmt::format("hypervolume for {} objectives is not supported", p.size())); }
        if (p[0] < ref[0] && p[1] < ref[1]) { pts.emplace_back(p[0], p[1]); }
    }
    std::sort(pts.begin(), pts.end());

    // Sweep on the first objective; each point that improves the running minimum of the
    // second objective adds one horizontal strip.
    double area = 0.0;
    double ceiling = ref[1];
    for (auto const& [f0, f1] : pts) {
        if (f1 < ceiling) {
            area += (ref[0] - f0) * (ceiling - f1);
            ceiling = f1;
        }
    }
    return area;
}

auto effective_objectives(NoisyProblem const& problem, std::span<double const> x, std::uint32_t reps, Rng& rng)
    -> ObjectiveVector
{
    require(reps >= 1, "effective_objectives: reps must be >= 1");
    ObjectiveVector sum(problem.objective_count(), 0.0);
    for (std::uint32_t r = 0; r < reps; ++r) {
        auto const f = evaluate_noisy(problem, x, rng);
        for (std::size_t i = 0; i < sum.size(); ++i) { sum[i] += f[i]; }
    }
    for (auto& v : sum) { v /= static_cast<double>(reps); }
    return sum;
}

auto delta_f(std::vector<ObjectiveVector> const& predicted, std::vector<ObjectiveVector> const& effective) -> double
{
    require(!predicted.empty(), "delta F of an empty front is undefined");
    require(predicted.size() == effective.size(), "delta F needs aligned predicted/effective lists");
    double total = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        require(predicted[i].size() == effective[i].size(), "delta F objective length mismatch");
        double sq = 0.0;
        for (std::size_t j = 0; j < predicted[i].size(); ++j) {
            auto const d = predicted[i][j] - effective[i][j];
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total / static_cast<double>(predicted.size());
}

auto delta_f(FrontAssessment const& assessment) -> double
{
    return delta_f(assessment.predicted, assessment.effective);
}

auto assess(std::vector<Individual> const& predicted_front, NoisyProblem const& problem, std::span<double const> ref,
    std::uint32_t reps, std::uint64_t seed) -> FrontAssessment
{
    require(!predicted_front.empty(), "cannot assess an empty front");
    FrontAssessment a;
    a.reference_point.assign(ref.begin(), ref.end());
    a.effective_repetitions = reps;
    for (std::size_t i = 0; i < predicted_front.size(); ++i) {
        auto const& ind = predicted_front[i];
        Rng stream(derive_seed(seed, i));
        a.solutions.push_back(ind.solution);
        a.predicted.push_back(ind.fitness);
        a.effective.push_back(effective_objectives(problem, ind.solution, reps, stream));
    }
    a.hv_pred = hypervolume_2d(pareto_filter(a.predicted), ref);
    a.hv_eff = hypervolume_2d(pareto_filter(a.effective), ref);
    a.delta_f = delta_f(a);
    return a;
}

} // namespace nmoo
