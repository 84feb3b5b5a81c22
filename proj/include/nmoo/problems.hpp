#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nmoo/core.hpp"
#include "nmoo/types.hpp"

namespace nmoo {

/// A box-bounded problem whose observations carry additive Gaussian noise:
/// observed = true_objectives(x) + e, with e_i ~ N(0, noise_sigma_i^2) independent per objective and call.
class NoisyProblem {
public:
    NoisyProblem(SearchSpace space, std::vector<double> noise_sigma);
    virtual ~NoisyProblem() = default;

    NoisyProblem(NoisyProblem const&) = default;
    NoisyProblem(NoisyProblem&&) = default;
    auto operator=(NoisyProblem const&) -> NoisyProblem& = delete;
    auto operator=(NoisyProblem&&) -> NoisyProblem& = delete;

    [[nodiscard]] virtual auto name() const -> std::string = 0;
    [[nodiscard]] virtual auto true_objectives(std::span<double const> x) const -> ObjectiveVector = 0;
    /// Fixed hypervolume reference point shared by every compared approach.
    [[nodiscard]] virtual auto reference_point() const -> ObjectiveVector = 0;
    [[nodiscard]] virtual auto has_analytic_front() const -> bool { return false; }
    /// Throws UnsupportedError unless the problem has a closed-form Pareto front.
    [[nodiscard]] virtual auto ideal_front(std::size_t n_points) const -> std::vector<ObjectiveVector>;

    [[nodiscard]] auto space() const noexcept -> SearchSpace const& { return space_; }
    [[nodiscard]] auto objective_count() const noexcept -> std::size_t { return sigma_.size(); }
    [[nodiscard]] auto noise_sigma() const noexcept -> std::vector<double> const& { return sigma_; }

private:
    SearchSpace space_;
    std::vector<double> sigma_;
};

/// One noisy observation of `x`. Deterministic given the state of `rng`.
[[nodiscard]] auto evaluate_noisy(NoisyProblem const& problem, std::span<double const> x, Rng& rng) -> ObjectiveVector;

// ---------------------------------------------------------------------------
// ZDT1
// ---------------------------------------------------------------------------

/// f1 = x1, g = 1 + 9 * sum(x2..xn) / (n - 1), f2 = g * (1 - sqrt(f1 / g)), x in [0,1]^n.
[[nodiscard]] auto zdt1_true(std::span<double const> x) -> ObjectiveVector;

/// `n_points` points of the ZDT1 front with f1_j = 2j / (2 n_points + 1), j = 1..n_points.
/// For 49 points this is the classic 2/99, 4/99, ..., 98/99 grid.
[[nodiscard]] auto zdt1_front(std::size_t n_points) -> std::vector<ObjectiveVector>;

/// Euclidean distance from an objective vector to the ZDT1 front f2 = 1 - sqrt(f1), f1 in [0,1].
[[nodiscard]] auto zdt1_front_distance(std::span<double const> f) -> double;

class Zdt1 final : public NoisyProblem {
public:
    explicit Zdt1(std::size_t n_variables = 10, std::vector<double> noise_sigma = {0.05, 0.05},
        ObjectiveVector reference = {1.1, 10.0});

    [[nodiscard]] auto name() const -> std::string override { return "zdt1"; }
    [[nodiscard]] auto true_objectives(std::span<double const> x) const -> ObjectiveVector override;
    [[nodiscard]] auto reference_point() const -> ObjectiveVector override { return reference_; }
    [[nodiscard]] auto has_analytic_front() const -> bool override { return true; }
    [[nodiscard]] auto ideal_front(std::size_t n_points) const -> std::vector<ObjectiveVector> override;

private:
    ObjectiveVector reference_;
};

// ---------------------------------------------------------------------------
// Crash-scenario surrogate
// ---------------------------------------------------------------------------

enum class ScenarioSpace {
    ss1, // position [-100, 60] m, velocity [35, 65] km/h
    ss2, // position, velocity [3, 100] km/h, trigger delay [0, 10] s, trigger position [-20, 20] m
};

[[nodiscard]] auto scenario_search_space(ScenarioSpace kind) -> SearchSpace;

/// Closed-form stand-in for the simulator. The critical position (the offset of V1 that
/// produces a collision) is affine in velocity; for SS2 it is shifted by the distance V1
/// covers during the trigger delay and by the trigger position.
struct ScenarioSurrogateParams {
    double critical_base{-40.0};          // m
    double critical_velocity_slope{0.5};  // m per km/h
    double distance_slope{1.0};           // m of distance per m of position error
    double noise_sigma_distance{2.0};     // m
    double collision_threshold{0.5};      // m

    void validate() const;
    [[nodiscard]] auto critical_position(double velocity_kmh, double trigger_delay_s = 0.0,
        double trigger_position_m = 0.0) const -> double;
};

/// (true minimum distance, velocity). `x` follows the variable order of `scenario_search_space(kind)`.
[[nodiscard]] auto scenario_surrogate_true(std::span<double const> x, ScenarioSpace kind,
    ScenarioSurrogateParams const& params) -> ObjectiveVector;

/// A collision is signalled when the observed distance falls below the threshold.
[[nodiscard]] auto is_collision(double observed_distance, ScenarioSurrogateParams const& params) -> bool;

class ScenarioSurrogate final : public NoisyProblem {
public:
    explicit ScenarioSurrogate(ScenarioSpace kind, ScenarioSurrogateParams params = {});
    ScenarioSurrogate(ScenarioSpace kind, ScenarioSurrogateParams params, ObjectiveVector reference);

    [[nodiscard]] auto name() const -> std::string override;
    [[nodiscard]] auto true_objectives(std::span<double const> x) const -> ObjectiveVector override;
    [[nodiscard]] auto reference_point() const -> ObjectiveVector override { return reference_; }

    [[nodiscard]] auto kind() const noexcept -> ScenarioSpace { return kind_; }
    [[nodiscard]] auto params() const noexcept -> ScenarioSurrogateParams const& { return params_; }

    /// Worst attainable true distance plus a 5 sigma noise margin, and the velocity upper bound.
    [[nodiscard]] static auto default_reference(ScenarioSpace kind, ScenarioSurrogateParams const& params) -> ObjectiveVector;

private:
    ScenarioSpace kind_;
    ScenarioSurrogateParams params_;
    ObjectiveVector reference_;
};

} // namespace nmoo
