// nmoo: run noisy multi-objective search experiments and summarize them.
//
//   nmoo run <config.toml> [--seed N] [--jobs N] [--out DIR]
//   nmoo table <experiment-dir>
//   nmoo plots <experiment-dir>
//
// Exit codes: 0 success, 1 configuration error, 2 partial run failures.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "nmoo/runner.hpp"

namespace {
constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_partial = 2;
} // namespace

auto main(int argc, char** argv) -> int
{
    CLI::App app{ "Noisy multi-objective search experiments (baseline, repetition, kNN-averaging)" };
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run every approach x repetition of an experiment config");
    run_cmd->add_option("config", config_path, "TOML experiment file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", seed, "Override base_seed");
    run_cmd->add_option("--jobs", jobs, "Maximum concurrent runs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_dir, "Override output_dir");

    std::string table_dir;
    auto* table_cmd = app.add_subcommand("table", "Emit the pairwise verdict table of an experiment");
    table_cmd->add_option("dir", table_dir, "Experiment directory")->required()->check(CLI::ExistingDirectory);

    std::string plots_dir;
    auto* plots_cmd = app.add_subcommand("plots", "Emit long-format boxplot data and per-run front dumps");
    plots_cmd->add_option("dir", plots_dir, "Experiment directory")->required()->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        auto const code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*run_cmd) {
            auto cfg = nmoo::load_config(config_path);
            if (seed) { cfg.base_seed = *seed; }
            if (!out_dir.empty()) { cfg.output_dir = out_dir; }
            auto const summary = nmoo::run_experiment(cfg, jobs);
            fmt::print("{}: {} runs, {} failed\n", summary.directory.string(), summary.runs.size(), summary.failed_runs);
            for (auto const& r : summary.runs) {
                if (!r.ok) { fmt::print(stderr, "run {}#{} failed: {}\n", r.approach, r.run_index, r.error); }
            }
            return summary.failed_runs > 0 ? exit_partial : exit_ok;
        }
        if (*table_cmd) {
            auto const file = nmoo::emit_verdict_table(table_dir);
            std::ifstream text(std::filesystem::path(table_dir) / "verdicts.txt");
            std::cout << text.rdbuf();
            fmt::print("written: {}\n", file.string());
            return exit_ok;
        }
        if (*plots_cmd) {
            auto const files = nmoo::emit_plot_data(plots_dir);
            fmt::print("written: {} files under {}\n", files.size(), (std::filesystem::path(plots_dir) / "plots").string());
            return exit_ok;
        }
    } catch (nmoo::ConfigError const& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_config;
    } catch (std::exception const& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_config;
    }
    return exit_ok;
}
