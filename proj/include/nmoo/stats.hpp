#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace nmoo {

struct MannWhitneyResult {
    double u{0.0};       // U statistic of the first sample
    double p_value{1.0}; // two-sided
    bool exact{false};
};

/// Largest combined sample size for which the exact null distribution is used.
inline constexpr std::size_t mann_whitney_exact_limit = 20;

/// Two-sided Mann-Whitney U test. Tie-free samples with |a| + |b| <= 20 use the exact
/// distribution; everything else the normal approximation with tie and continuity correction.
[[nodiscard]] auto mann_whitney(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult;
[[nodiscard]] auto mann_whitney_u(std::span<double const> a, std::span<double const> b) -> double;

[[nodiscard]] auto mann_whitney_exact(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult;
[[nodiscard]] auto mann_whitney_normal(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult;

/// Probability that a value drawn from `a` exceeds one drawn from `b`, ties counting half.
[[nodiscard]] auto vargha_delaney_a12(std::span<double const> a, std::span<double const> b) -> double;

enum class Verdict { app1_better, app2_better, equivalent };

[[nodiscard]] auto verdict_symbol(Verdict v) -> std::string;

struct ComparisonVerdict {
    std::string metric;
    std::string app1;
    std::string app2;
    double p_value{1.0};
    double a12{0.5};
    Verdict verdict{Verdict::equivalent};
    bool higher_is_better{true};
};

inline constexpr double default_alpha = 0.05;

[[nodiscard]] auto compare(std::span<double const> samples1, std::span<double const> samples2, double alpha,
    bool higher_is_better) -> ComparisonVerdict;

} // namespace nmoo
