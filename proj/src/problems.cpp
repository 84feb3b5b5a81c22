#include "nmoo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>

namespace nmoo {

NoisyProblem::NoisyProblem(SearchSpace space, std::vector<double> noise_sigma)
    : space_(std::move(space))
    , sigma_(std::move(noise_sigma))
{
    require(sigma_.size() >= 2, "a multi-objective problem needs at least two objectives");
    for (auto s : sigma_) {
        require(std::isfinite(s) && s >= 0.0, "noise sigma must be finite and non-negative");
    }
}

auto NoisyProblem::ideal_front(std::size_t /*n_points*/) const -> std::vector<ObjectiveVector>
{
    throw UnsupportedError(fmt::format("problem '{}' has no analytic front", name()));
}

auto evaluate_noisy(NoisyProblem const& problem, std::span<double const> x, Rng& rng) -> ObjectiveVector
{
    problem.space().check(x);
    auto f = problem.true_objectives(x);
    auto const& sigma = problem.noise_sigma();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (sigma[i] > 0.0) {
            std::normal_distribution<double> noise(0.0, sigma[i]);
            f[i] += noise(rng);
        }
    }
    return f;
}

namespace {
    auto unit_cube(std::size_t n) -> SearchSpace
    {
        std::vector<Dimension> dims;
        dims.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            dims.push_back({ fmt::format("x{}", i + 1), 0.0, 1.0, "" });
        }
        return SearchSpace(std::move(dims));
    }

    auto validated(ScenarioSurrogateParams const& params) -> ScenarioSurrogateParams const&
    {
        params.validate();
        return params;
    }
} // namespace

auto zdt1_true(std::span<double const> x) -> ObjectiveVector
{
    require(x.size() >= 2, "ZDT1 needs at least two variables");
    for (auto v : x) {
        require(v >= 0.0 && v <= 1.0, fmt::format("ZDT1 variable {} outside [0, 1]", v));
    }
    double tail = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) { tail += x[i]; }
    auto const f1 = x[0];
    auto const g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
    return { f1, g * (1.0 - std::sqrt(f1 / g)) };
}

auto zdt1_front(std::size_t n_points) -> std::vector<ObjectiveVector>
{
    require(n_points >= 1, "front needs at least one point");
    std::vector<ObjectiveVector> front;
    front.reserve(n_points);
    auto const denom = static_cast<double>(2 * n_points + 1);
    for (std::size_t j = 1; j <= n_points; ++j) {
        auto const f1 = 2.0 * static_cast<double>(j) / denom;
        front.push_back({ f1, 1.0 - std::sqrt(f1) });
    }
    return front;
}

auto zdt1_front_distance(std::span<double const> f) -> double
{
    require(f.size() == 2, "ZDT1 front distance needs two objectives");
    // The squared distance to (t, 1 - sqrt(t)) is smooth in s = sqrt(t) on [0, 1]; a dense
    // grid followed by golden-section refinement is exact to ~1e-12.
    auto dist2 = [&](double s) {
        auto const dx = f[0] - s * s;
        auto const dy = f[1] - (1.0 - s);
        return dx * dx + dy * dy;
    };
    constexpr int grid = 2000;
    int best = 0;
    for (int i = 1; i <= grid; ++i) {
        if (dist2(i / double(grid)) < dist2(best / double(grid))) { best = i; }
    }
    double lo = std::max(0, best - 1) / double(grid);
    double hi = std::min(grid, best + 1) / double(grid);
    constexpr double phi = 0.6180339887498949;
    for (int it = 0; it < 100; ++it) {
        auto const a = hi - phi * (hi - lo);
        auto const b = lo + phi * (hi - lo);
        if (dist2(a) < dist2(b)) { hi = b; } else { lo = a; }
    }
    return std::sqrt(dist2(0.5 * (lo + hi)));
}

Zdt1::Zdt1(std::size_t n_variables, std::vector<double> noise_sigma, ObjectiveVector reference)
    : NoisyProblem(unit_cube(n_variables), std::move(noise_sigma))
    , reference_(std::move(reference))
{
    require(n_variables >= 2, "ZDT1 needs at least two variables");
    require(objective_count() == 2, "ZDT1 has exactly two objectives");
    require(reference_.size() == 2, "ZDT1 reference point needs two coordinates");
}

auto Zdt1::true_objectives(std::span<double const> x) const -> ObjectiveVector
{
    return zdt1_true(x);
}

auto Zdt1::ideal_front(std::size_t n_points) const -> std::vector<ObjectiveVector>
{
    return zdt1_front(n_points);
}

auto scenario_search_space(ScenarioSpace kind) -> SearchSpace
{
    if (kind == ScenarioSpace::ss1) {
        return SearchSpace({
            { "position", -100.0, 60.0, "m" },
            { "velocity", 35.0, 65.0, "km/h" },
        });
    }
    return SearchSpace({
        { "position", -100.0, 60.0, "m" },
        { "velocity", 3.0, 100.0, "km/h" },
        { "trigger_delay", 0.0, 10.0, "s" },
        { "trigger_position", -20.0, 20.0, "m" },
    });
}

void ScenarioSurrogateParams::validate() const
{
    if (!(collision_threshold > 0.0)) { throw ConfigError("collision_threshold: must be > 0"); }
    if (!(noise_sigma_distance > 0.0)) { throw ConfigError("noise_sigma_distance: must be > 0"); }
    if (!(distance_slope > 0.0)) { throw ConfigError("distance_slope: must be > 0"); }
    if (!std::isfinite(critical_base) || !std::isfinite(critical_velocity_slope)) {
        throw ConfigError("critical_base/critical_velocity_slope: must be finite");
    }
}

auto ScenarioSurrogateParams::critical_position(double velocity_kmh, double trigger_delay_s, double trigger_position_m) const -> double
{
    return critical_base + critical_velocity_slope * velocity_kmh + trigger_delay_s * velocity_kmh / 3.6 + trigger_position_m;
}

auto scenario_surrogate_true(std::span<double const> x, ScenarioSpace kind, ScenarioSurrogateParams const& params) -> ObjectiveVector
{
    scenario_search_space(kind).check(x);
    auto const position = x[0];
    auto const velocity = x[1];
    auto const critical = kind == ScenarioSpace::ss1
        ? params.critical_position(velocity)
        : params.critical_position(velocity, x[2], x[3]);
    auto const distance = std::max(0.0, params.distance_slope * std::abs(position - critical));
    return { distance, velocity };
}

auto is_collision(double observed_distance, ScenarioSurrogateParams const& params) -> bool
{
    return std::abs(observed_distance) < params.collision_threshold;
}

ScenarioSurrogate::ScenarioSurrogate(ScenarioSpace kind, ScenarioSurrogateParams params)
    : ScenarioSurrogate(kind, params, default_reference(kind, params))
{
}

ScenarioSurrogate::ScenarioSurrogate(ScenarioSpace kind, ScenarioSurrogateParams params, ObjectiveVector reference)
    : NoisyProblem(scenario_search_space(kind), { validated(params).noise_sigma_distance, 0.0 })
    , kind_(kind)
    , params_(params)
    , reference_(std::move(reference))
{
    require(reference_.size() == 2, "scenario reference point needs two coordinates");
}

auto ScenarioSurrogate::name() const -> std::string
{
    return kind_ == ScenarioSpace::ss1 ? "ss1" : "ss2";
}

auto ScenarioSurrogate::true_objectives(std::span<double const> x) const -> ObjectiveVector
{
    return scenario_surrogate_true(x, kind_, params_);
}

auto ScenarioSurrogate::default_reference(ScenarioSpace kind, ScenarioSurrogateParams const& params) -> ObjectiveVector
{
    auto const space = scenario_search_space(kind);
    // The critical position is bilinear in (velocity, delay) and linear in trigger
    // position, so its extremes sit on the corners of the box.
    double crit_lo = std::numeric_limits<double>::infinity();
    double crit_hi = -crit_lo;
    auto corner = [&](double v, double d, double t) {
        auto const c = params.critical_position(v, d, t);
        crit_lo = std::min(crit_lo, c);
        crit_hi = std::max(crit_hi, c);
    };
    for (double v : { space[1].lower, space[1].upper }) {
        if (kind == ScenarioSpace::ss1) {
            corner(v, 0.0, 0.0);
            continue;
        }
        for (double d : { space[2].lower, space[2].upper }) {
            for (double t : { space[3].lower, space[3].upper }) { corner(v, d, t); }
        }
    }
    auto const worst = params.distance_slope * std::max(std::abs(space[0].lower - crit_hi), std::abs(space[0].upper - crit_lo));
    return { worst + 5.0 * params.noise_sigma_distance, space[1].upper };
}

} // namespace nmoo
