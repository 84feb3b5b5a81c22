#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>
#include <toml.hpp>

#include "nmoo/runner.hpp"

namespace nmoo {

namespace {
    void reject_unknown(toml::table const& table, std::string_view where, std::set<std::string_view> const& known)
    {
        for (auto const& [key, value] : table) {
            if (!known.contains(key.str())) {
                throw ConfigError(fmt::format("{}{}: unknown key", where.empty() ? "" : fmt::format("{}.", where), key.str()));
            }
        }
    }

    auto field(std::string_view where, std::string_view key) -> std::string
    {
        return where.empty() ? std::string(key) : fmt::format("{}.{}", where, key);
    }

    auto get_double(toml::table const& t, std::string_view where, std::string_view key, double fallback) -> double
    {
        auto const* node = t.get(key);
        if (node == nullptr) { return fallback; }
        if (auto v = node->value_exact<double>()) { return *v; }
        if (auto v = node->value_exact<std::int64_t>()) { return static_cast<double>(*v); }
        throw ConfigError(fmt::format("{}: expected a number", field(where, key)));
    }

    auto get_int(toml::table const& t, std::string_view where, std::string_view key, std::int64_t fallback, std::int64_t min)
        -> std::int64_t
    {
        auto const* node = t.get(key);
        if (node == nullptr) { return fallback; }
        auto v = node->value_exact<std::int64_t>();
        if (!v) { throw ConfigError(fmt::format("{}: expected an integer", field(where, key))); }
        if (*v < min) { throw ConfigError(fmt::format("{}: must be >= {}", field(where, key), min)); }
        return *v;
    }

    auto get_string(toml::table const& t, std::string_view where, std::string_view key, std::string fallback) -> std::string
    {
        auto const* node = t.get(key);
        if (node == nullptr) { return fallback; }
        auto v = node->value_exact<std::string>();
        if (!v) { throw ConfigError(fmt::format("{}: expected a string", field(where, key))); }
        return *v;
    }

    auto get_doubles(toml::table const& t, std::string_view where, std::string_view key) -> std::optional<std::vector<double>>
    {
        auto const* node = t.get(key);
        if (node == nullptr) { return std::nullopt; }
        auto const* arr = node->as_array();
        if (arr == nullptr) { throw ConfigError(fmt::format("{}: expected an array of numbers", field(where, key))); }
        std::vector<double> out;
        for (auto const& item : *arr) {
            if (auto v = item.value_exact<double>()) {
                out.push_back(*v);
            } else if (auto i = item.value_exact<std::int64_t>()) {
                out.push_back(static_cast<double>(*i));
            } else {
                throw ConfigError(fmt::format("{}: expected an array of numbers", field(where, key)));
            }
        }
        return out;
    }

    auto get_table(toml::table const& t, std::string_view key) -> toml::table const*
    {
        auto const* node = t.get(key);
        if (node == nullptr) { return nullptr; }
        auto const* table = node->as_table();
        if (table == nullptr) { throw ConfigError(fmt::format("{}: expected a table", key)); }
        return table;
    }

    auto parse_problem(toml::table const& t) -> ProblemSpec
    {
        reject_unknown(t, "problem", { "name", "variables", "noise_sigma", "reference_point", "scenario" });
        ProblemSpec spec;
        spec.name = get_string(t, "problem", "name", spec.name);
        spec.variables = static_cast<std::size_t>(get_int(t, "problem", "variables", 10, 2));
        if (auto sigma = get_doubles(t, "problem", "noise_sigma")) { spec.noise_sigma = *sigma; }
        spec.reference_point = get_doubles(t, "problem", "reference_point");

        if (auto const* sc = get_table(t, "scenario")) {
            reject_unknown(*sc, "problem.scenario",
                { "critical_base", "critical_velocity_slope", "distance_slope", "noise_sigma_distance", "collision_threshold" });
            auto& p = spec.scenario;
            constexpr std::string_view where = "problem.scenario";
            p.critical_base = get_double(*sc, where, "critical_base", p.critical_base);
            p.critical_velocity_slope = get_double(*sc, where, "critical_velocity_slope", p.critical_velocity_slope);
            p.distance_slope = get_double(*sc, where, "distance_slope", p.distance_slope);
            p.noise_sigma_distance = get_double(*sc, where, "noise_sigma_distance", p.noise_sigma_distance);
            p.collision_threshold = get_double(*sc, where, "collision_threshold", p.collision_threshold);
        }
        return spec;
    }

    auto parse_ga(toml::table const& t) -> GAConfig
    {
        reject_unknown(t, "ga",
            { "population_size", "total_budget", "crossover_probability", "crossover_eta", "mutation_probability", "mutation_eta" });
        GAConfig ga;
        ga.population_size = static_cast<std::size_t>(get_int(t, "ga", "population_size", 10, 0));
        ga.total_budget = static_cast<std::uint64_t>(get_int(t, "ga", "total_budget", 500, 1));
        ga.crossover_probability = get_double(t, "ga", "crossover_probability", ga.crossover_probability);
        ga.crossover_eta = get_double(t, "ga", "crossover_eta", ga.crossover_eta);
        if (t.contains("mutation_probability")) { ga.mutation_probability = get_double(t, "ga", "mutation_probability", 0.0); }
        ga.mutation_eta = get_double(t, "ga", "mutation_eta", ga.mutation_eta);
        return ga;
    }

    auto parse_approach(toml::table const& t, std::size_t index) -> Approach
    {
        auto const where = fmt::format("approach[{}]", index);
        reject_unknown(t, where, { "kind", "n", "k", "max_sed", "label" });
        auto const kind = get_string(t, where, "kind", "");
        StrategyConfig s;
        if (kind == "baseline") {
            s = StrategyConfig::baseline();
        } else if (kind == "repetition") {
            s.kind = StrategyConfig::Kind::repetition;
            s.repetitions = static_cast<std::uint32_t>(get_int(t, where, "n", 0, 2));
        } else if (kind == "knn") {
            s.kind = StrategyConfig::Kind::knn;
            s.k = static_cast<std::uint32_t>(get_int(t, where, "k", 0, 1));
            s.max_sed = get_double(t, where, "max_sed", StrategyConfig::default_max_sed);
            if (!(s.max_sed > 0.0)) { throw ConfigError(fmt::format("{}.max_sed: must be > 0", where)); }
        } else {
            throw ConfigError(fmt::format("{}.kind: expected one of baseline, repetition, knn", where));
        }
        return { get_string(t, where, "label", s.name()), s };
    }
} // namespace

auto make_problem(ProblemSpec const& spec) -> std::unique_ptr<NoisyProblem>
{
    if (spec.name == "zdt1") {
        if (spec.noise_sigma.size() != 2) { throw ConfigError("problem.noise_sigma: ZDT1 needs two values"); }
        for (auto s : spec.noise_sigma) {
            if (!(s >= 0.0) || !std::isfinite(s)) { throw ConfigError("problem.noise_sigma: must be finite and >= 0"); }
        }
        if (spec.reference_point && spec.reference_point->size() != 2) {
            throw ConfigError("problem.reference_point: needs two values");
        }
        return std::make_unique<Zdt1>(spec.variables, spec.noise_sigma, spec.reference_point.value_or(ObjectiveVector{ 1.1, 10.0 }));
    }
    if (spec.name == "ss1" || spec.name == "ss2") {
        auto const kind = spec.name == "ss1" ? ScenarioSpace::ss1 : ScenarioSpace::ss2;
        spec.scenario.validate();
        if (spec.reference_point) {
            if (spec.reference_point->size() != 2) { throw ConfigError("problem.reference_point: needs two values"); }
            return std::make_unique<ScenarioSurrogate>(kind, spec.scenario, *spec.reference_point);
        }
        return std::make_unique<ScenarioSurrogate>(kind, spec.scenario);
    }
    throw ConfigError(fmt::format("problem.name: unknown problem '{}' (expected zdt1, ss1 or ss2)", spec.name));
}

void ExperimentConfig::validate() const
{
    ga.validate();
    if (approaches.empty()) { throw ConfigError("approach: at least one approach is required"); }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < approaches.size(); ++i) {
        auto const& a = approaches[i];
        a.strategy.validate();
        if (a.label.empty()) { throw ConfigError(fmt::format("approach[{}].label: must not be empty", i)); }
        if (!labels.insert(a.label).second) {
            throw ConfigError(fmt::format("approach[{}].label: duplicate label '{}'", i, a.label));
        }
        try {
            (void)generations_for(ga, a.strategy);
        } catch (ConfigError const& e) {
            throw ConfigError(fmt::format("{} (approach '{}')", e.what(), a.label));
        }
    }
    if (repetitions < 1) { throw ConfigError("repetitions: must be >= 1"); }
    if (effective_reps < 1) { throw ConfigError("effective_reps: must be >= 1"); }
    if (!(alpha > 0.0 && alpha < 1.0)) { throw ConfigError("alpha: must lie in (0, 1)"); }
    (void)make_problem(problem);
}

auto parse_config(std::string_view toml_text) -> ExperimentConfig
{
    toml::table root;
    try {
        root = toml::parse(toml_text);
    } catch (toml::parse_error const& e) {
        throw ConfigError(fmt::format("line {}: {}", e.source().begin.line, e.description()));
    }
    reject_unknown(root, "",
        { "name", "base_seed", "repetitions", "effective_reps", "alpha", "output_dir", "problem", "ga", "approach" });

    ExperimentConfig cfg;
    cfg.name = get_string(root, "", "name", cfg.name);
    cfg.base_seed = static_cast<std::uint64_t>(get_int(root, "", "base_seed", 0, 0));
    cfg.repetitions = static_cast<std::uint32_t>(get_int(root, "", "repetitions", cfg.repetitions, 1));
    cfg.effective_reps = static_cast<std::uint32_t>(get_int(root, "", "effective_reps", cfg.effective_reps, 1));
    cfg.alpha = get_double(root, "", "alpha", cfg.alpha);
    cfg.output_dir = get_string(root, "", "output_dir", cfg.output_dir.string());

    if (auto const* p = get_table(root, "problem")) { cfg.problem = parse_problem(*p); }
    if (auto const* g = get_table(root, "ga")) { cfg.ga = parse_ga(*g); }

    if (auto const* node = root.get("approach")) {
        auto const* arr = node->as_array();
        if (arr == nullptr) { throw ConfigError("approach: expected an array of tables ([[approach]])"); }
        for (std::size_t i = 0; i < arr->size(); ++i) {
            auto const* t = (*arr)[i].as_table();
            if (t == nullptr) { throw ConfigError(fmt::format("approach[{}]: expected a table", i)); }
            cfg.approaches.push_back(parse_approach(*t, i));
        }
    }
    cfg.validate();
    return cfg;
}

auto load_config(std::filesystem::path const& file) -> ExperimentConfig
{
    std::ifstream in(file, std::ios::binary);
    if (!in) { throw ConfigError(fmt::format("{}: cannot open config file", file.string())); }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace nmoo
