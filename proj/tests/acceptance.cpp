// Acceptance campaign: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance [--workdir DIR] [--jobs N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "nmoo/runner.hpp"
#include "oracles.hpp"
#include "zdt1_reference.hpp"

using namespace nmoo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

fs::path workdir = "acceptance_work";
unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
std::vector<ExperimentSummary> emitted; // every experiment written by the campaign, for the budget check

auto config(std::string const& file) -> ExperimentConfig
{
    return load_config(fs::path(NMOO_SOURCE_DIR) / "configs" / file);
}

auto campaign(ExperimentConfig cfg, fs::path const& out, unsigned workers) -> ExperimentSummary
{
    fs::remove_all(out);
    cfg.output_dir = out;
    auto summary = run_experiment(cfg, workers);
    (void)emit_verdict_table(out);
    (void)emit_plot_data(out);
    emitted.push_back(summary);
    return summary;
}

auto metric(ExperimentSummary const& s, std::string const& approach, double FrontAssessment::*field) -> std::vector<double>
{
    std::vector<double> out;
    for (auto const& r : s.runs) {
        if (r.ok && r.approach == approach) { out.push_back(r.assessment.*field); }
    }
    return out;
}

auto median(std::vector<double> v) -> double
{
    std::sort(v.begin(), v.end());
    auto const n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

auto slurp(fs::path const& file) -> std::string
{
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto c1_sorting() -> Outcome
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> size(1, 64);
    std::uniform_int_distribution<int> coarse(0, 12);
    std::uniform_real_distribution<double> fine(0.0, 1.0);
    int mismatches = 0;
    for (int t = 0; t < 500; ++t) {
        std::vector<ObjectiveVector> pts(static_cast<std::size_t>(size(rng)));
        // half the populations on a coarse grid so duplicates and equal coordinates occur
        for (auto& p : pts) {
            p = t % 2 == 0 ? ObjectiveVector{ double(coarse(rng)), double(coarse(rng)) } : ObjectiveVector{ fine(rng), fine(rng) };
        }
        mismatches += fast_non_dominated_sort(pts) == oracle::peel_fronts(pts) ? 0 : 1;
    }
    return { mismatches == 0, fmt::format("{} mismatches in 500 populations", mismatches) };
}

auto c2_hypervolume() -> Outcome
{
    std::vector<double> const ref{ 1.0, 1.0 };
    auto const hand = hypervolume_2d({ { 0.25, 0.75 }, { 0.75, 0.25 } }, ref);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> size(5, 30);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::vector<ObjectiveVector> pts(static_cast<std::size_t>(size(rng)));
        for (auto& p : pts) { p = { u(rng), u(rng) }; }
        auto const exact = hypervolume_2d(pts, ref);
        auto const mc = oracle::hypervolume_mc(pts, { 0.0, 0.0 }, ref, 1000000, 1000 + t);
        worst = std::max(worst, std::abs(mc - exact) / exact);
    }
    return { hand == 0.3125 && worst < 0.005, fmt::format("hand value {}, worst MC relative error {:.4f}%", hand, 100.0 * worst) };
}

auto c3_zdt1_front() -> Outcome
{
    double worst = 0.0;
    for (auto const& [f1, f2] : zdt1_reference_front) {
        SolutionVector x(10, 0.0);
        x[0] = f1;
        auto const f = zdt1_true(x);
        worst = std::max({ worst, std::abs(f[0] - f1), std::abs(f[1] - f2) });
    }
    return { zdt1_reference_front.size() == 49 && worst <= 1e-6,
        fmt::format("{} points, max deviation {:.2e}", zdt1_reference_front.size(), worst) };
}

auto c4_knn1_is_baseline() -> Outcome
{
    Zdt1 const problem;
    int identical = 0;
    constexpr int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        GAConfig cfg;
        cfg.seed = derive_seed(20211201, s);
        auto const b = run(problem, StrategyConfig::baseline(), cfg);
        auto const k = run(problem, StrategyConfig::knn(1), cfg);
        bool same = b.archive.size() == k.archive.size() && b.predicted_front.size() == k.predicted_front.size();
        for (std::size_t i = 0; same && i < b.archive.size(); ++i) {
            auto const& x = b.archive.entries()[i];
            auto const& y = k.archive.entries()[i];
            same = x.solution == y.solution && x.raw == y.raw && x.assigned == y.assigned && x.cost == y.cost;
        }
        for (std::size_t i = 0; same && i < b.predicted_front.size(); ++i) {
            same = b.predicted_front[i].solution == k.predicted_front[i].solution
                && b.predicted_front[i].fitness == k.predicted_front[i].fitness;
        }
        identical += same ? 1 : 0;
    }
    return { identical == seeds, fmt::format("{}/{} seeded runs bit-identical", identical, seeds) };
}

auto c5_hv_pred_inflation() -> Outcome
{
    auto const s = campaign(config("zdt1.toml"), workdir / "c5-zdt1", jobs);
    auto const b = median(metric(s, "B", &FrontAssessment::hv_pred));
    auto const k = median(metric(s, "kNN-Avg-10", &FrontAssessment::hv_pred));
    auto const r = median(metric(s, "Rep-5", &FrontAssessment::hv_pred));
    return { s.failed_runs == 0 && b > k && b > r,
        fmt::format("median HV-pred B {:.4f}, kNN-Avg-10 {:.4f}, Rep-5 {:.4f}", b, k, r) };
}

// ΔF(challenger) lower than ΔF(B): significant in that direction, or ≡ with a12 below 0.5.
auto delta_f_lower(ExperimentSummary const& s, std::string const& challenger, double alpha) -> bool
{
    auto const c = metric(s, challenger, &FrontAssessment::delta_f);
    auto const b = metric(s, "B", &FrontAssessment::delta_f);
    auto const v = compare(c, b, alpha, false);
    return v.verdict == Verdict::app1_better || (v.verdict == Verdict::equivalent && v.a12 < 0.5);
}

auto c6_delta_f_reduction() -> Outcome
{
    auto const zdt1 = config("zdt1.toml");
    auto const ss1 = config("ss1.toml");
    int rep5 = 0;
    int knn50 = 0;
    int significant_rep5 = 0;
    int significant_knn50 = 0;
    constexpr int campaigns = 10;
    for (int c = 0; c < campaigns; ++c) {
        auto z = zdt1;
        z.base_seed = zdt1.base_seed + static_cast<std::uint64_t>(c);
        auto const sz = campaign(z, workdir / fmt::format("c6-zdt1-{}", c), jobs);
        auto s = ss1;
        s.base_seed = ss1.base_seed + static_cast<std::uint64_t>(c);
        auto const ss = campaign(s, workdir / fmt::format("c6-ss1-{}", c), jobs);

        rep5 += delta_f_lower(sz, "Rep-5", z.alpha) ? 1 : 0;
        knn50 += delta_f_lower(ss, "kNN-Avg-50", s.alpha) ? 1 : 0;
        significant_rep5 += compare(metric(sz, "Rep-5", &FrontAssessment::delta_f), metric(sz, "B", &FrontAssessment::delta_f),
                                z.alpha, false).verdict == Verdict::app1_better;
        significant_knn50 += compare(metric(ss, "kNN-Avg-50", &FrontAssessment::delta_f), metric(ss, "B", &FrontAssessment::delta_f),
                                 s.alpha, false).verdict == Verdict::app1_better;
    }
    return { rep5 >= 8 && knn50 >= 8,
        fmt::format("Rep-5 < B on ZDT1 in {}/10 ({} significant), kNN-Avg-50 < B on SS1 in {}/10 ({} significant)", rep5,
            significant_rep5, knn50, significant_knn50) };
}

auto c7_budget_fairness() -> Outcome
{
    std::size_t checked = 0;
    bool fair = !emitted.empty();
    for (auto const& s : emitted) {
        std::uint64_t budget = 0;
        std::uint32_t gen_b = 0;
        std::uint32_t gen_rep5 = 0;
        for (auto const& r : s.runs) {
            if (!r.ok) { continue; }
            if (budget == 0) { budget = r.consumed_budget; }
            fair = fair && r.consumed_budget == budget;
            if (r.approach == "B") { gen_b = r.generations; }
            if (r.approach == "Rep-5") { gen_rep5 = r.generations; }
        }
        fair = fair && gen_rep5 > 0 && gen_b == 5 * gen_rep5;
        fair = fair && slurp(s.directory / "manifest.json").find("\"budget_parity\": true") != std::string::npos;
        ++checked;
    }
    return { fair, fmt::format("{} experiments, equal consumed budget per run and B = 5 x Rep-5 generations", checked) };
}

auto c8_stat_kernel() -> Outcome
{
    // Every split of the pooled ranks 1..2n into two samples of n covers all tie-free inputs.
    int disagreements = 0;
    int cases = 0;
    for (std::size_t n : { 3U, 4U }) {
        std::vector<bool> mask(2 * n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
        do {
            std::vector<double> a, b;
            for (std::size_t i = 0; i < mask.size(); ++i) { (mask[i] ? a : b).push_back(double(i + 1)); }
            auto const got = mann_whitney(a, b);
            disagreements += (got.exact && std::abs(got.p_value - oracle::mann_whitney_enumerated(a, b)) < 1e-12) ? 0 : 1;
            ++cases;
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }

    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> size(2, 15);
    std::uniform_int_distribution<int> value(0, 9);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> a(static_cast<std::size_t>(size(rng))), b(static_cast<std::size_t>(size(rng)));
        for (auto& x : a) { x = value(rng); }
        for (auto& x : b) { x = value(rng); }
        worst = std::max(worst, std::abs(vargha_delaney_a12(a, b) + vargha_delaney_a12(b, a) - 1.0));
    }
    return { disagreements == 0 && worst == 0.0,
        fmt::format("{} exact/enumeration disagreements in {} splits, max |a12 + a21 - 1| = {}", disagreements, cases, worst) };
}

auto c9_convergence() -> Outcome
{
    Zdt1 const problem(10, { 0.0, 0.0 });
    GAConfig cfg;
    cfg.population_size = 50;
    cfg.total_budget = 50 * 200;
    std::vector<double> distances;
    for (std::uint64_t seed : { 1U, 2U, 3U }) {
        cfg.seed = seed;
        auto const r = run(problem, StrategyConfig::baseline(), cfg);
        double total = 0.0;
        for (auto const& ind : r.predicted_front) { total += zdt1_front_distance(ind.fitness); }
        distances.push_back(total / static_cast<double>(r.predicted_front.size()));
    }
    auto const worst = *std::max_element(distances.begin(), distances.end());
    return { worst < 0.05, fmt::format("mean distance to front over 3 seeds: worst {:.5f}", worst) };
}

auto c10_determinism() -> Outcome
{
    std::size_t compared = 0;
    std::size_t differing = 0;
    for (auto const* file : { "zdt1.toml", "ss1.toml" }) {
        auto const cfg = config(file);
        auto const a = workdir / fmt::format("c10-{}-a", cfg.name);
        auto const b = workdir / fmt::format("c10-{}-b", cfg.name);
        (void)campaign(cfg, a, 1);
        (void)campaign(cfg, b, std::max(4U, jobs));
        for (auto const& entry : fs::recursive_directory_iterator(a)) {
            if (!entry.is_regular_file()) { continue; }
            auto const rel = fs::relative(entry.path(), a);
            ++compared;
            if (slurp(entry.path()) != slurp(b / rel)) { ++differing; }
        }
    }
    return { compared > 0 && differing == 0,
        fmt::format("{} files compared across serial and {}-way parallel reruns, {} differ", compared, std::max(4U, jobs), differing) };
}

} // namespace

auto main(int argc, char** argv) -> int
{
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string const flag = argv[i];
        if (flag == "--workdir") {
            workdir = argv[i + 1];
        } else if (flag == "--jobs") {
            jobs = static_cast<unsigned>(std::max(1, std::stoi(argv[i + 1])));
        } else {
            fmt::print(stderr, "usage: acceptance [--workdir DIR] [--jobs N]\n");
            return 2;
        }
    }
    fs::create_directories(workdir);

    struct Criterion {
        int id;
        std::string name;
        double time_limit; // seconds, 0 = none
        std::function<Outcome()> check;
    };
    // 7 runs after the campaigns so it sees every emitted experiment.
    std::vector<Criterion> const criteria{
        { 1, "non-dominated sort matches brute-force oracle", 10, c1_sorting },
        { 2, "hypervolume matches Monte-Carlo oracle and hand value", 30, c2_hypervolume },
        { 3, "ZDT1 reproduces the 49-point reference front", 0, c3_zdt1_front },
        { 4, "kNN-Avg-1 is bit-identical to the baseline", 0, c4_knn1_is_baseline },
        { 5, "baseline has the highest median HV-pred", 300, c5_hv_pred_inflation },
        { 6, "repetition and kNN averaging reduce delta F", 0, c6_delta_f_reduction },
        { 8, "Mann-Whitney exact path and A12 complement", 0, c8_stat_kernel },
        { 9, "noise-free NSGA-II converges to the ZDT1 front", 60, c9_convergence },
        { 10, "campaign outputs are byte-identical across reruns", 0, c10_determinism },
        { 7, "budget fairness across every emitted experiment", 0, c7_budget_fairness },
    };

    std::vector<std::string> lines(11);
    int failures = 0;
    for (auto const& c : criteria) {
        auto const start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (std::exception const& e) {
            o = { false, fmt::format("exception: {}", e.what()) };
        }
        auto const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        auto detail = o.detail;
        if (c.time_limit > 0) {
            if (seconds >= c.time_limit) { o.pass = false; }
            detail += fmt::format("; {:.2f} s (limit {:.0f} s)", seconds, c.time_limit);
        } else {
            detail += fmt::format("; {:.2f} s", seconds);
        }
        failures += o.pass ? 0 : 1;
        lines[static_cast<std::size_t>(c.id)] = fmt::format("{} criterion {:>2}: {}: {}", o.pass ? "PASS" : "FAIL", c.id, c.name, detail);
        std::fflush(stdout);
    }
    for (std::size_t i = 1; i < lines.size(); ++i) { fmt::print("{}\n", lines[i]); }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
