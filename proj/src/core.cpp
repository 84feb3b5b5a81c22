#include "nmoo/core.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace nmoo {

SearchSpace::SearchSpace(std::vector<Dimension> dims)
    : dims_(std::move(dims))
{
    require(!dims_.empty(), "search space needs at least one dimension");
    for (auto const& d : dims_) {
        require(std::isfinite(d.lower) && std::isfinite(d.upper) && d.lower < d.upper,
            fmt::format("dimension '{}': lower bound must be below upper bound", d.name));
    }
}

auto SearchSpace::contains(std::span<double const> x) const -> bool
{
    if (x.size() != dims_.size()) { return false; }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= dims_[i].lower && x[i] <= dims_[i].upper)) { return false; }
    }
    return true;
}

void SearchSpace::check(std::span<double const> x) const
{
    require(x.size() == dims_.size(),
        fmt::format("solution has {} values, search space has {} dimensions", x.size(), dims_.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] >= dims_[i].lower && x[i] <= dims_[i].upper,
            fmt::format("dimension '{}' value {} outside [{}, {}]", dims_[i].name, x[i], dims_[i].lower, dims_[i].upper));
    }
}

auto SearchSpace::clip(SolutionVector x) const -> SolutionVector
{
    for (std::size_t i = 0; i < x.size() && i < dims_.size(); ++i) {
        x[i] = std::clamp(x[i], dims_[i].lower, dims_[i].upper);
    }
    return x;
}

auto SearchSpace::sample(Rng& rng) const -> SolutionVector
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SolutionVector x(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        x[i] = dims_[i].lower + unit(rng) * (dims_[i].upper - dims_[i].lower);
    }
    return x;
}

auto dominates(std::span<double const> a, std::span<double const> b) -> bool
{
    require(a.size() == b.size(), fmt::format("dominance on vectors of length {} and {}", a.size(), b.size()));
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) { return false; }
        if (a[i] < b[i]) { strictly = true; }
    }
    return strictly;
}

auto pareto_filter_indices(std::vector<ObjectiveVector> const& points) -> std::vector<std::size_t>
{
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) { survivors.push_back(i); }
    }
    return survivors;
}

auto pareto_filter(std::vector<ObjectiveVector> const& points) -> std::vector<ObjectiveVector>
{
    std::vector<ObjectiveVector> out;
    for (auto i : pareto_filter_indices(points)) { out.push_back(points[i]); }
    return out;
}

EvaluationArchive::EvaluationArchive(SearchSpace space)
    : space_(std::move(space))
    , mean_(space_.size(), 0.0)
    , m2_(space_.size(), 0.0)
{
}

auto EvaluationArchive::insert(Evaluation e) -> std::uint64_t
{
    space_.check(e.solution);
    require(e.cost >= 1, "evaluation cost must be at least 1");
    require(!e.assigned.empty(), "evaluation must carry an assigned fitness");

    e.id = entries_.size();
    auto const n = static_cast<double>(entries_.size() + 1);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        auto const delta = e.solution[i] - mean_[i];
        mean_[i] += delta / n;
        m2_[i] += delta * (e.solution[i] - mean_[i]);
    }
    budget_ += e.cost;
    entries_.push_back(std::move(e));
    return entries_.back().id;
}

auto EvaluationArchive::raw_variances() const -> std::vector<double>
{
    std::vector<double> var(m2_.size(), 0.0);
    if (entries_.size() < 2) { return var; }
    auto const denom = static_cast<double>(entries_.size() - 1);
    std::transform(m2_.begin(), m2_.end(), var.begin(), [denom](double m2) { return m2 / denom; });
    return var;
}

auto EvaluationArchive::variances() const -> std::vector<double>
{
    auto var = raw_variances();
    for (auto& v : var) { v = std::max(v, variance_floor); }
    return var;
}

} // namespace nmoo
