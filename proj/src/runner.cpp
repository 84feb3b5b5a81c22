#include "nmoo/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <thread>

#include "csv.hpp"

namespace nmoo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {
    constexpr auto manifest_file = "manifest.json";
    constexpr auto metrics_file = "metrics.csv";

    struct MetricColumn {
        std::string_view key;   // metrics.csv column and plot file stem
        std::string_view title; // text table heading
        bool higher_is_better;
    };
    constexpr std::array<MetricColumn, 3> metric_columns{ {
        { "hv_pred", "HV-pred", true },
        { "hv_eff", "HV-eff", true },
        { "delta_f", "ΔF", false },
    } };

    auto run_slug(std::string const& label, std::uint32_t index) -> std::string
    {
        std::string slug;
        for (char c : label) {
            auto const keep = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.';
            slug += keep ? c : '_';
        }
        return fmt::format("{}-{}", slug, index);
    }

    auto strategy_json(StrategyConfig const& s) -> json
    {
        json j;
        switch (s.kind) {
        case StrategyConfig::Kind::baseline:
            j["kind"] = "baseline";
            break;
        case StrategyConfig::Kind::repetition:
            j["kind"] = "repetition";
            j["n"] = s.repetitions;
            break;
        case StrategyConfig::Kind::knn:
            j["kind"] = "knn";
            j["k"] = s.k;
            // JSON has no infinity; keep the value readable and exact.
            j["max_sed"] = std::isfinite(s.max_sed) ? json(s.max_sed) : json("inf");
            break;
        }
        j["cost_per_individual"] = s.cost_per_individual();
        return j;
    }

    auto config_json(ExperimentConfig const& cfg, NoisyProblem const& problem) -> json
    {
        json j;
        j["name"] = cfg.name;
        j["base_seed"] = cfg.base_seed;
        j["repetitions"] = cfg.repetitions;
        j["effective_reps"] = cfg.effective_reps;
        j["alpha"] = cfg.alpha;

        auto& p = j["problem"];
        p["name"] = cfg.problem.name;
        p["reference_point"] = problem.reference_point();
        p["noise_sigma"] = problem.noise_sigma();
        if (cfg.problem.name == "zdt1") {
            p["variables"] = cfg.problem.variables;
        } else {
            auto const& s = cfg.problem.scenario;
            p["scenario"] = { { "critical_base", s.critical_base }, { "critical_velocity_slope", s.critical_velocity_slope },
                { "distance_slope", s.distance_slope }, { "noise_sigma_distance", s.noise_sigma_distance },
                { "collision_threshold", s.collision_threshold } };
        }
        auto& space = p["search_space"];
        space = json::array();
        for (auto const& d : problem.space().dimensions()) {
            space.push_back({ { "name", d.name }, { "lower", d.lower }, { "upper", d.upper }, { "unit", d.unit } });
        }

        auto& ga = j["ga"];
        ga["population_size"] = cfg.ga.population_size;
        ga["total_budget"] = cfg.ga.total_budget;
        ga["crossover_probability"] = cfg.ga.crossover_probability;
        ga["crossover_eta"] = cfg.ga.crossover_eta;
        ga["mutation_probability"] = cfg.ga.mutation_probability_for(problem.space().size());
        ga["mutation_eta"] = cfg.ga.mutation_eta;
        return j;
    }

    void write_front(fs::path const& file, NoisyProblem const& problem, FrontAssessment const& a)
    {
        csv::Row header{ "point" };
        for (auto const& d : problem.space().dimensions()) { header.push_back(d.name); }
        for (std::size_t k = 0; k < a.reference_point.size(); ++k) { header.push_back(fmt::format("pred_f{}", k + 1)); }
        for (std::size_t k = 0; k < a.reference_point.size(); ++k) { header.push_back(fmt::format("eff_f{}", k + 1)); }

        std::vector<csv::Row> rows;
        for (std::size_t i = 0; i < a.solutions.size(); ++i) {
            csv::Row row{ std::to_string(i) };
            for (auto v : a.solutions[i]) { row.push_back(csv::number(v)); }
            for (auto v : a.predicted[i]) { row.push_back(csv::number(v)); }
            for (auto v : a.effective[i]) { row.push_back(csv::number(v)); }
            rows.push_back(std::move(row));
        }
        csv::write(file, header, rows);
    }

    auto read_manifest(fs::path const& directory) -> json
    {
        std::ifstream in(directory / manifest_file);
        if (!in) { throw ExperimentError(fmt::format("{}: no {} found", directory.string(), manifest_file)); }
        return json::parse(in);
    }

    struct MetricTable {
        std::vector<std::string> approaches;
        // approach -> rows of metrics.csv for completed runs, in file order
        std::map<std::string, std::vector<std::map<std::string, std::string>>> completed;
        double alpha{default_alpha};
    };

    auto read_metrics(fs::path const& directory) -> MetricTable
    {
        auto const manifest = read_manifest(directory);
        MetricTable table;
        table.alpha = manifest.at("config").at("alpha").get<double>();
        for (auto const& a : manifest.at("approaches")) { table.approaches.push_back(a.at("label").get<std::string>()); }

        auto rows = csv::read(directory / metrics_file);
        if (rows.empty()) { throw ExperimentError(fmt::format("{}: empty {}", directory.string(), metrics_file)); }
        auto const header = rows.front();
        for (std::size_t r = 1; r < rows.size(); ++r) {
            std::map<std::string, std::string> row;
            for (std::size_t c = 0; c < header.size() && c < rows[r].size(); ++c) { row[header[c]] = rows[r][c]; }
            if (row["status"] == "ok") { table.completed[row["approach"]].push_back(std::move(row)); }
        }
        return table;
    }

    auto samples(MetricTable const& table, std::string const& approach, std::string_view metric) -> std::vector<double>
    {
        std::vector<double> out;
        auto it = table.completed.find(approach);
        if (it == table.completed.end()) { return out; }
        for (auto const& row : it->second) { out.push_back(csv::to_double(row.at(std::string(metric)))); }
        return out;
    }

    // Pads to a display width counted in code points.
    auto pad(std::string const& text, std::size_t width) -> std::string
    {
        std::size_t columns = 0;
        for (unsigned char c : text) {
            if ((c & 0xC0U) != 0x80U) { ++columns; }
        }
        return text + std::string(width > columns ? width - columns : 0, ' ');
    }
} // namespace

auto run_seed(std::uint64_t base_seed, StrategyConfig const& strategy, std::uint32_t run_index) -> std::uint64_t
{
    return base_seed ^ stable_hash(fmt::format("{}#{}", strategy.canonical_name(), run_index));
}

auto assessment_seed(std::uint64_t run_seed) -> std::uint64_t
{
    return mix64(run_seed ^ stable_hash("effective-assessment"));
}

auto execute_run(ExperimentConfig const& cfg, NoisyProblem const& problem, Approach const& approach, std::uint32_t run_index)
    -> RunRecord
{
    RunRecord rec;
    rec.approach = approach.label;
    rec.run_index = run_index;
    rec.seed = run_seed(cfg.base_seed, approach.strategy, run_index);
    rec.assessment_seed = assessment_seed(rec.seed);
    try {
        auto ga = cfg.ga;
        ga.seed = rec.seed;
        auto result = run(problem, approach.strategy, ga);
        rec.generations = result.generations;
        rec.archive_size = result.archive.size();
        rec.consumed_budget = result.archive.consumed_budget();
        auto const ref = problem.reference_point();
        rec.assessment = assess(result.predicted_front, problem, ref, cfg.effective_reps, rec.assessment_seed);
        rec.ok = true;
    } catch (std::exception const& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

auto run_experiment(ExperimentConfig const& cfg, unsigned jobs) -> ExperimentSummary
{
    cfg.validate();
    auto const problem = make_problem(cfg.problem);
    auto const dir = cfg.output_dir;
    fs::create_directories(dir / "runs");

    struct Task {
        std::size_t approach;
        std::uint32_t index;
    };
    std::vector<Task> tasks;
    for (std::size_t a = 0; a < cfg.approaches.size(); ++a) {
        for (std::uint32_t r = 0; r < cfg.repetitions; ++r) { tasks.push_back({ a, r }); }
    }

    ExperimentSummary summary;
    summary.directory = dir;
    summary.runs.resize(tasks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto t = next++; t < tasks.size(); t = next++) {
            auto const& approach = cfg.approaches[tasks[t].approach];
            auto rec = execute_run(cfg, *problem, approach, tasks[t].index);
            auto const run_dir = dir / "runs" / run_slug(approach.label, tasks[t].index);
            try {
                fs::create_directories(run_dir);
                if (rec.ok) { write_front(run_dir / "front.csv", *problem, rec.assessment); }
            } catch (std::exception const& e) {
                rec.ok = false;
                rec.error = e.what();
            }
            summary.runs[t] = std::move(rec);
        }
    };
    auto const workers = std::clamp<std::size_t>(jobs, 1, tasks.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) { pool.emplace_back(worker); }
        worker();
    }

    std::vector<csv::Row> rows;
    json runs = json::array();
    for (auto const& rec : summary.runs) {
        if (!rec.ok) { ++summary.failed_runs; }
        auto const& a = rec.assessment;
        rows.push_back({ rec.approach, std::to_string(rec.run_index), std::to_string(rec.seed), std::to_string(rec.assessment_seed),
            rec.ok ? "ok" : "failed", std::to_string(rec.generations), std::to_string(rec.archive_size),
            std::to_string(rec.consumed_budget), std::to_string(a.solutions.size()),
            rec.ok ? csv::number(a.hv_pred) : "", rec.ok ? csv::number(a.hv_eff) : "", rec.ok ? csv::number(a.delta_f) : "",
            rec.error });
        runs.push_back({ { "approach", rec.approach }, { "run_index", rec.run_index }, { "seed", rec.seed },
            { "assessment_seed", rec.assessment_seed }, { "status", rec.ok ? "ok" : "failed" }, { "error", rec.error },
            { "directory", fmt::format("runs/{}", run_slug(rec.approach, rec.run_index)) } });
    }
    csv::write(dir / metrics_file,
        { "approach", "run_index", "seed", "assessment_seed", "status", "generations", "archive_size", "consumed_budget",
            "front_size", "hv_pred", "hv_eff", "delta_f", "error" },
        rows);

    json manifest;
    manifest["config"] = config_json(cfg, *problem);
    auto& approaches = manifest["approaches"];
    approaches = json::array();
    std::set<std::uint64_t> budgets;
    for (auto const& a : cfg.approaches) {
        auto const generations = generations_for(cfg.ga, a.strategy);
        auto const budget = std::uint64_t{ generations } * cfg.ga.population_size * a.strategy.cost_per_individual();
        budgets.insert(budget);
        approaches.push_back({ { "label", a.label }, { "strategy", strategy_json(a.strategy) }, { "generations", generations },
            { "budget_per_run", budget } });
    }
    manifest["budget_parity"] = budgets.size() == 1;
    manifest["runs"] = std::move(runs);
    manifest["failed_runs"] = summary.failed_runs;
    std::ofstream(dir / manifest_file, std::ios::binary | std::ios::trunc) << manifest.dump(2) << '\n';
    return summary;
}

auto compute_verdicts(fs::path const& directory) -> std::vector<ComparisonVerdict>
{
    auto const table = read_metrics(directory);
    for (auto const& a : table.approaches) {
        auto const n = table.completed.contains(a) ? table.completed.at(a).size() : 0;
        if (n < 2) {
            throw ExperimentError(fmt::format("approach '{}' has {} completed run(s); at least 2 are required", a, n));
        }
    }
    std::vector<ComparisonVerdict> verdicts;
    for (std::size_t i = 1; i < table.approaches.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            for (auto const& m : metric_columns) {
                auto const s1 = samples(table, table.approaches[i], m.key);
                auto const s2 = samples(table, table.approaches[j], m.key);
                auto v = compare(s1, s2, table.alpha, m.higher_is_better);
                v.metric = std::string(m.key);
                v.app1 = table.approaches[i];
                v.app2 = table.approaches[j];
                verdicts.push_back(std::move(v));
            }
        }
    }
    return verdicts;
}

auto emit_verdict_table(fs::path const& directory) -> fs::path
{
    auto const verdicts = compute_verdicts(directory);

    std::vector<csv::Row> rows;
    for (auto const& v : verdicts) {
        auto const name = v.verdict == Verdict::app1_better ? "app1_better"
            : v.verdict == Verdict::app2_better             ? "app2_better"
                                                            : "equivalent";
        rows.push_back({ v.app1, v.app2, v.metric, csv::number(v.p_value), csv::number(v.a12), name, verdict_symbol(v.verdict) });
    }
    auto const csv_path = directory / "verdicts.csv";
    csv::write(csv_path, { "app1", "app2", "metric", "p_value", "a12", "verdict", "symbol" }, rows);

    std::size_t width = 4;
    for (auto const& v : verdicts) { width = std::max({ width, v.app1.size(), v.app2.size() }); }
    width += 2;
    std::string text = pad("App1", width) + pad("App2", width);
    for (auto const& m : metric_columns) { text += pad(std::string(m.title), 9); }
    text += '\n';
    for (std::size_t r = 0; r < verdicts.size(); r += metric_columns.size()) {
        text += pad(verdicts[r].app1, width) + pad(verdicts[r].app2, width);
        for (std::size_t m = 0; m < metric_columns.size(); ++m) { text += pad(verdict_symbol(verdicts[r + m].verdict), 9); }
        text += '\n';
    }
    text += "✓: App1 is statistically better. ✗: App2 is statistically better. ≡: no significant difference.\n";
    std::ofstream(directory / "verdicts.txt", std::ios::binary | std::ios::trunc) << text;
    return csv_path;
}

auto emit_plot_data(fs::path const& directory) -> std::vector<fs::path>
{
    auto const table = read_metrics(directory);
    auto const plots = directory / "plots";
    fs::create_directories(plots / "fronts");

    std::vector<fs::path> written;
    for (auto const& m : metric_columns) {
        std::vector<csv::Row> rows;
        for (auto const& a : table.approaches) {
            auto it = table.completed.find(a);
            if (it == table.completed.end()) { continue; }
            for (auto const& row : it->second) { rows.push_back({ a, row.at("run_index"), row.at(std::string(m.key)) }); }
        }
        auto const file = plots / fmt::format("{}.csv", m.key);
        csv::write(file, { "approach", "run_index", "value" }, rows);
        written.push_back(file);
    }
    for (auto const& a : table.approaches) {
        auto it = table.completed.find(a);
        if (it == table.completed.end()) { continue; }
        for (auto const& row : it->second) {
            auto const slug = run_slug(a, static_cast<std::uint32_t>(std::stoul(row.at("run_index"))));
            auto const target = plots / "fronts" / fmt::format("{}.csv", slug);
            fs::copy_file(directory / "runs" / slug / "front.csv", target, fs::copy_options::overwrite_existing);
            written.push_back(target);
        }
    }
    return written;
}

} // namespace nmoo
