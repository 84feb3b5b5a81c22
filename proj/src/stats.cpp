#include "nmoo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "nmoo/types.hpp"

namespace nmoo {

namespace {
    struct Ranked {
        double rank_sum_a{0.0};
        double tie_term{0.0}; // sum over tie groups of (t^3 - t)
        bool has_ties{false};
        bool all_equal{false};
    };

    auto rank_samples(std::span<double const> a, std::span<double const> b) -> Ranked
    {
        std::vector<std::pair<double, bool>> all; // (value, from a)
        all.reserve(a.size() + b.size());
        for (auto v : a) { all.emplace_back(v, true); }
        for (auto v : b) { all.emplace_back(v, false); }
        std::sort(all.begin(), all.end(), [](auto const& x, auto const& y) { return x.first < y.first; });

        Ranked r;
        std::size_t i = 0;
        while (i < all.size()) {
            std::size_t j = i;
            while (j < all.size() && all[j].first == all[i].first) { ++j; }
            auto const t = static_cast<double>(j - i);
            auto const mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
            for (std::size_t k = i; k < j; ++k) {
                if (all[k].second) { r.rank_sum_a += mid_rank; }
            }
            if (j - i > 1) {
                r.has_ties = true;
                r.tie_term += t * t * t - t;
            }
            i = j;
        }
        r.all_equal = !all.empty() && all.front().first == all.back().first;
        return r;
    }

    void check_sizes(std::span<double const> a, std::span<double const> b)
    {
        require(a.size() >= 2 && b.size() >= 2, "Mann-Whitney U needs at least two values per sample");
    }

    // counts[u] = number of size-n1 rank subsets of {1..n1+n2} whose U statistic equals u.
    auto u_distribution(std::size_t n1, std::size_t n2) -> std::vector<double>
    {
        // Standard recurrence over (n1, n2): N(u; n1, n2) = N(u - n2; n1 - 1, n2) + N(u; n1, n2 - 1).
        auto const max_u = n1 * n2;
        std::vector<std::vector<std::vector<double>>> table(n1 + 1, std::vector<std::vector<double>>(n2 + 1));
        for (std::size_t i = 0; i <= n1; ++i) {
            for (std::size_t j = 0; j <= n2; ++j) {
                auto& cell = table[i][j];
                cell.assign(i * j + 1, 0.0);
                if (i == 0 || j == 0) {
                    cell[0] = 1.0;
                    continue;
                }
                for (std::size_t u = 0; u <= i * j; ++u) {
                    double c = 0.0;
                    if (u >= j && u - j < table[i - 1][j].size()) { c += table[i - 1][j][u - j]; }
                    if (u < table[i][j - 1].size()) { c += table[i][j - 1][u]; }
                    cell[u] = c;
                }
            }
        }
        auto out = table[n1][n2];
        out.resize(max_u + 1, 0.0);
        return out;
    }
} // namespace

auto mann_whitney_exact(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult
{
    check_sizes(a, b);
    auto const ranked = rank_samples(a, b);
    require(!ranked.has_ties, "exact Mann-Whitney U requires tie-free samples");
    auto const n1 = a.size();
    auto const n2 = b.size();
    auto const u = ranked.rank_sum_a - static_cast<double>(n1 * (n1 + 1)) / 2.0;

    auto const counts = u_distribution(n1, n2);
    auto const total = std::accumulate(counts.begin(), counts.end(), 0.0);
    auto const ui = static_cast<std::size_t>(std::llround(u));
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (k <= ui) { lower += counts[k]; }
        if (k >= ui) { upper += counts[k]; }
    }
    auto const p = std::min(1.0, 2.0 * std::min(lower, upper) / total);
    return { u, p, true };
}

auto mann_whitney_normal(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult
{
    check_sizes(a, b);
    auto const ranked = rank_samples(a, b);
    auto const n1 = static_cast<double>(a.size());
    auto const n2 = static_cast<double>(b.size());
    auto const n = n1 + n2;
    auto const u = ranked.rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    if (ranked.all_equal) { return { u, 1.0, false }; }

    auto const mu = n1 * n2 / 2.0;
    auto const variance = n1 * n2 / 12.0 * ((n + 1.0) - ranked.tie_term / (n * (n - 1.0)));
    if (!(variance > 0.0)) { return { u, 1.0, false }; }
    auto const z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(variance);
    auto const p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return { u, p, false };
}

auto mann_whitney(std::span<double const> a, std::span<double const> b) -> MannWhitneyResult
{
    check_sizes(a, b);
    auto const ranked = rank_samples(a, b);
    if (ranked.all_equal) {
        auto const n1 = static_cast<double>(a.size());
        return { ranked.rank_sum_a - n1 * (n1 + 1.0) / 2.0, 1.0, false };
    }
    if (!ranked.has_ties && a.size() + b.size() <= mann_whitney_exact_limit) { return mann_whitney_exact(a, b); }
    return mann_whitney_normal(a, b);
}

auto mann_whitney_u(std::span<double const> a, std::span<double const> b) -> double
{
    return mann_whitney(a, b).p_value;
}

auto vargha_delaney_a12(std::span<double const> a, std::span<double const> b) -> double
{
    require(!a.empty() && !b.empty(), "A12 needs non-empty samples");
    // Integer counts keep a12(a, b) + a12(b, a) == 1 exact.
    std::uint64_t wins = 0;
    std::uint64_t ties = 0;
    for (auto x : a) {
        for (auto y : b) {
            if (x > y) { ++wins; } else if (x == y) { ++ties; }
        }
    }
    return (2.0 * static_cast<double>(wins) + static_cast<double>(ties)) / (2.0 * static_cast<double>(a.size() * b.size()));
}

auto verdict_symbol(Verdict v) -> std::string
{
    switch (v) {
    case Verdict::app1_better: return "✓";
    case Verdict::app2_better: return "✗";
    default: return "≡";
    }
}

auto compare(std::span<double const> samples1, std::span<double const> samples2, double alpha, bool higher_is_better)
    -> ComparisonVerdict
{
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    ComparisonVerdict v;
    v.p_value = mann_whitney_u(samples1, samples2);
    v.a12 = vargha_delaney_a12(samples1, samples2);
    v.higher_is_better = higher_is_better;
    if (v.p_value >= alpha) {
        v.verdict = Verdict::equivalent;
    } else {
        auto const first_higher = v.a12 > 0.5;
        v.verdict = first_higher == higher_is_better ? Verdict::app1_better : Verdict::app2_better;
    }
    return v;
}

} // namespace nmoo
