#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nmoo/optimizer.hpp"
#include "nmoo/problems.hpp"
#include "nmoo/types.hpp"

namespace nmoo {

/// Post-hoc quality of a predicted front. `predicted` and `effective` are index-aligned:
/// entry i of both refers to `solutions[i]`.
struct FrontAssessment {
    std::vector<SolutionVector> solutions;
    std::vector<ObjectiveVector> predicted;
    std::vector<ObjectiveVector> effective;
    double hv_pred{0.0};
    double hv_eff{0.0};
    double delta_f{0.0};
    ObjectiveVector reference_point;
    std::uint32_t effective_repetitions{30};
};

inline constexpr std::uint32_t default_effective_repetitions = 30;

/// Exact area dominated by `front` and bounded by `ref` (two objectives, minimization).
/// Points not strictly better than `ref` in both objectives contribute nothing.
[[nodiscard]] auto hypervolume_2d(std::vector<ObjectiveVector> const& front, std::span<double const> ref) -> double;

/// Mean of `reps` independent noisy evaluations. Not charged to any search budget.
[[nodiscard]] auto effective_objectives(NoisyProblem const& problem, std::span<double const> x,
    std::uint32_t reps, Rng& rng) -> ObjectiveVector;

/// Mean Euclidean distance between aligned predicted and effective objective vectors.
[[nodiscard]] auto delta_f(std::vector<ObjectiveVector> const& predicted, std::vector<ObjectiveVector> const& effective) -> double;
[[nodiscard]] auto delta_f(FrontAssessment const& assessment) -> double;

/// Re-evaluates every front member `reps` times (per-solution substreams of `seed`) and
/// computes HV-pred, HV-eff and delta F.
[[nodiscard]] auto assess(std::vector<Individual> const& predicted_front, NoisyProblem const& problem,
    std::span<double const> ref, std::uint32_t reps, std::uint64_t seed) -> FrontAssessment;

} // namespace nmoo
