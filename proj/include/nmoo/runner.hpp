#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmoo/metrics.hpp"
#include "nmoo/noise.hpp"
#include "nmoo/optimizer.hpp"
#include "nmoo/problems.hpp"
#include "nmoo/stats.hpp"

namespace nmoo {

/// Raised when an experiment directory is incomplete or inconsistent.
class ExperimentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemSpec {
    std::string name{"zdt1"}; // zdt1 | ss1 | ss2
    std::size_t variables{10};
    std::vector<double> noise_sigma{0.05, 0.05};
    ScenarioSurrogateParams scenario;
    std::optional<ObjectiveVector> reference_point;
};

[[nodiscard]] auto make_problem(ProblemSpec const& spec) -> std::unique_ptr<NoisyProblem>;

struct Approach {
    std::string label;
    StrategyConfig strategy;
};

struct ExperimentConfig {
    std::string name{"experiment"};
    ProblemSpec problem;
    GAConfig ga;
    std::vector<Approach> approaches;
    std::uint32_t repetitions{10};
    std::uint32_t effective_reps{default_effective_repetitions};
    double alpha{default_alpha};
    std::uint64_t base_seed{0};
    std::filesystem::path output_dir{"results"};

    void validate() const;
};

/// Parses the TOML experiment description. Errors name the offending field.
[[nodiscard]] auto parse_config(std::string_view toml_text) -> ExperimentConfig;
[[nodiscard]] auto load_config(std::filesystem::path const& file) -> ExperimentConfig;

/// base_seed XOR a stable hash of (strategy, run index). Strategies with identical
/// hyperparameters receive identical seeds regardless of label or position in the config.
[[nodiscard]] auto run_seed(std::uint64_t base_seed, StrategyConfig const& strategy, std::uint32_t run_index) -> std::uint64_t;
[[nodiscard]] auto assessment_seed(std::uint64_t run_seed) -> std::uint64_t;

struct RunRecord {
    std::string approach;
    std::uint32_t run_index{};
    std::uint64_t seed{};
    std::uint64_t assessment_seed{};
    bool ok{false};
    std::string error;
    std::uint32_t generations{};
    std::uint64_t archive_size{};
    std::uint64_t consumed_budget{};
    FrontAssessment assessment;
};

/// Executes one optimization run and its post-hoc assessment. Never throws; failures are
/// reported through `ok` and `error`.
[[nodiscard]] auto execute_run(ExperimentConfig const& cfg, NoisyProblem const& problem, Approach const& approach,
    std::uint32_t run_index) -> RunRecord;

struct ExperimentSummary {
    std::filesystem::path directory;
    std::vector<RunRecord> runs; // approach-major, config order
    std::size_t failed_runs{0};
};

/// Runs every approach x repetition (up to `jobs` at a time) and writes
/// manifest.json, metrics.csv and runs/<label>-<index>/front.csv under cfg.output_dir.
auto run_experiment(ExperimentConfig const& cfg, unsigned jobs = 1) -> ExperimentSummary;

/// Pairwise verdicts in table order: for approaches a0..aN-1, rows (a1,a0), (a2,a0), (a2,a1), ...
[[nodiscard]] auto compute_verdicts(std::filesystem::path const& directory) -> std::vector<ComparisonVerdict>;

/// Writes verdicts.csv and verdicts.txt into `directory`; returns the CSV path.
auto emit_verdict_table(std::filesystem::path const& directory) -> std::filesystem::path;

/// Writes plots/{hv_pred,hv_eff,delta_f}.csv in long format and plots/fronts/<run>.csv.
auto emit_plot_data(std::filesystem::path const& directory) -> std::vector<std::filesystem::path>;

} // namespace nmoo
