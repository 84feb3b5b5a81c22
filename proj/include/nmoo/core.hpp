#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nmoo/types.hpp"

namespace nmoo {

struct Dimension {
    std::string name;
    double lower{};
    double upper{};
    std::string unit;
};

/// Box-bounded decision space.
class SearchSpace {
public:
    explicit SearchSpace(std::vector<Dimension> dims);

    [[nodiscard]] auto size() const noexcept -> std::size_t { return dims_.size(); }
    [[nodiscard]] auto dimensions() const noexcept -> std::vector<Dimension> const& { return dims_; }
    [[nodiscard]] auto operator[](std::size_t i) const -> Dimension const& { return dims_[i]; }

    [[nodiscard]] auto contains(std::span<double const> x) const -> bool;
    /// Throws ContractViolation naming the first offending dimension.
    void check(std::span<double const> x) const;
    [[nodiscard]] auto clip(SolutionVector x) const -> SolutionVector;
    [[nodiscard]] auto sample(Rng& rng) const -> SolutionVector;

private:
    std::vector<Dimension> dims_;
};

/// Pareto dominance under minimization. Equal vectors do not dominate each other.
[[nodiscard]] auto dominates(std::span<double const> a, std::span<double const> b) -> bool;

/// Indices of the points not dominated by any other input point, in input order.
[[nodiscard]] auto pareto_filter_indices(std::vector<ObjectiveVector> const& points) -> std::vector<std::size_t>;
[[nodiscard]] auto pareto_filter(std::vector<ObjectiveVector> const& points) -> std::vector<ObjectiveVector>;

/// One (possibly repeated) evaluation of a candidate solution.
struct Evaluation {
    std::uint64_t id{};
    SolutionVector solution;
    ObjectiveVector raw;      // observed value; the mean of the repetitions for Rep-n
    ObjectiveVector assigned; // fitness handed to the search
    std::uint32_t generation{};
    std::uint32_t cost{1};    // simulator executions consumed
};

/// Append-only record of every evaluation in one run.
///
/// Keeps a running per-dimension mean and sum of squared deviations (Welford) over the
/// archived solutions so that the standardized distance can be computed without a pass
/// over all entries.
class EvaluationArchive {
public:
    static constexpr double variance_floor = 1e-12;

    explicit EvaluationArchive(SearchSpace space);

    /// Appends `e` and returns its id. The id field of `e` is overwritten.
    auto insert(Evaluation e) -> std::uint64_t;

    [[nodiscard]] auto entries() const noexcept -> std::vector<Evaluation> const& { return entries_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return entries_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return entries_.empty(); }
    [[nodiscard]] auto space() const noexcept -> SearchSpace const& { return space_; }

    [[nodiscard]] auto means() const noexcept -> std::vector<double> const& { return mean_; }
    /// Sample variance (N-1) per dimension without clamping; 0 with fewer than 2 entries.
    [[nodiscard]] auto raw_variances() const -> std::vector<double>;
    /// Sample variance per dimension, clamped below at `variance_floor`.
    [[nodiscard]] auto variances() const -> std::vector<double>;
    [[nodiscard]] auto consumed_budget() const noexcept -> std::uint64_t { return budget_; }

private:
    SearchSpace space_;
    std::vector<Evaluation> entries_;
    std::vector<double> mean_;
    std::vector<double> m2_;
    std::uint64_t budget_{0};
};

} // namespace nmoo
