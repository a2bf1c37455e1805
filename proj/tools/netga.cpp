// netga - command line front end for networked genetic algorithm experiments.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netga/csv.hpp"
#include "netga/harness.hpp"

namespace fs = std::filesystem;
using namespace netga;

namespace {

/// Collects output files and writes them in one pass; anything already
/// written is removed if a later write fails, so a failed invocation leaves
/// no partial outputs behind.
class OutputSet {
public:
    explicit OutputSet(fs::path directory) : directory_(std::move(directory)) {}

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    std::vector<fs::path> commit() {
        fs::create_directories(directory_);
        std::vector<fs::path> written;
        try {
            for (const auto& [name, content] : files_) {
                const fs::path path = directory_ / name;
                std::ofstream out(path, std::ios::binary);
                out << content;
                if (!out) {
                    throw std::runtime_error("failed writing " + path.string());
                }
                written.push_back(path);
            }
        } catch (...) {
            for (const auto& path : written) {
                std::error_code ec;
                fs::remove(path, ec);
            }
            throw;
        }
        return written;
    }

private:
    fs::path directory_;
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fresh_seed() {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

/// True when the key-value text assigns the "seed" key (comments ignored).
bool config_mentions_seed(const std::string& text) {
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto equals = line.find('=');
        if (equals == std::string::npos) continue;
        std::string key = line.substr(0, equals);
        key.erase(0, key.find_first_not_of(" \t"));
        const auto trailing = key.find_last_not_of(" \t");
        if (trailing != std::string::npos) key.erase(trailing + 1);
        if (key == "seed") return true;
    }
    return false;
}

/// Flags shared by every subcommand that executes runs. A config file, when
/// given, is applied first; explicitly passed flags win over it.
struct BaseOptions {
    std::string config_path;
    std::optional<std::uint64_t> file_seed;  // set by resolve()
    std::string function = "rastrigin";
    int n = 50;
    int dimension = 2;
    double rho = 0.7;
    double mu = 0.05;
    int tau = 100;
    std::string selection_variant = "linear";
    std::string topology = "complete";

    CLI::Option* function_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* dimension_opt = nullptr;
    CLI::Option* rho_opt = nullptr;
    CLI::Option* mu_opt = nullptr;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* variant_opt = nullptr;
    CLI::Option* topology_opt = nullptr;

    void attach(CLI::App* cmd, bool with_topology) {
        cmd->add_option("--config", config_path,
                        "config file with the flat key = value schema");
        function_opt = cmd->add_option("--function", function,
                                       "objective: rastrigin|sphere|ackley");
        n_opt = cmd->add_option("--n", n, "population size (even)");
        dimension_opt =
            cmd->add_option("--dimension", dimension, "genome length");
        rho_opt = cmd->add_option("--rho", rho, "crossover rate");
        mu_opt = cmd->add_option("--mu", mu, "per-gene mutation rate");
        tau_opt = cmd->add_option("--tau", tau, "generations per run");
        variant_opt = cmd->add_option("--selection-variant", selection_variant,
                                      "roulette weighting: linear|squared");
        if (with_topology) {
            topology_opt =
                cmd->add_option("--topology", topology,
                                "er:<p>|ba:<m>|complete|empty|star");
        }
    }

    /// Resolved GAConfig (seed untouched): config file first, flags on top.
    GAConfig resolve() {
        GAConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw std::runtime_error("cannot open config file " + config_path);
            }
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            config = GAConfig::from_key_values(text);
            if (config_mentions_seed(text)) file_seed = config.seed;
        }
        ObjectiveId function_id = config.objective.id;
        int genome_length = config.objective.dimension;
        if (function_opt->count()) function_id = objective_from_string(function);
        if (dimension_opt->count()) genome_length = dimension;
        config.objective = ObjectiveSpec::defaults(function_id, genome_length);
        if (n_opt->count()) config.population_size = n;
        if (rho_opt->count()) config.crossover_rate = rho;
        if (mu_opt->count()) config.mutation_rate = mu;
        if (tau_opt->count()) config.generations = tau;
        if (variant_opt->count()) {
            config.selection_variant =
                selection_variant_from_string(selection_variant);
        }
        if (topology_opt && topology_opt->count()) {
            config.topology = TopologySpec::parse(topology);
        }
        return config;
    }
};

/// Seed precedence: --seed flag, then the config file, then NETGA_SEED, then
/// a fresh random seed. The resolved value is always printed and written to
/// the manifest.
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value,
                           const std::optional<std::uint64_t>& file_seed) {
    if (seed_opt->count()) return flag_value;
    if (file_seed) return *file_seed;
    if (const char* env = std::getenv("NETGA_SEED")) {
        return std::stoull(env);
    }
    return fresh_seed();
}

std::string manifest_header(const std::string& command, std::uint64_t seed) {
    std::string out = "# netga manifest: the settings below regenerate the "
                      "CSV outputs byte-for-byte\n";
    out += "command = " + command + "\n";
    out += "created_utc = " + utc_timestamp() + "\n";
    out += "seed = " + format_u64(seed) + "\n";
    return out;
}

/// Run-parameter echo for the manifest. The seed line is dropped: the
/// header's master seed is the authoritative one (for composite commands the
/// base config's own seed is never used).
std::string config_echo(const GAConfig& config) {
    const std::string text = config.to_key_values();
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size() - 1;
        const std::string line = text.substr(start, end - start + 1);
        start = end + 1;
        if (line.rfind("seed ", 0) != 0 && line.rfind("seed=", 0) != 0) {
            out += line;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"networked genetic algorithm engine and experiment harness"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::uint64_t seed_flag = 0;
    int workers = 1;
    int reps = 10;

    // run
    auto* run_cmd = app.add_subcommand("run", "single run, trace CSV");
    BaseOptions run_base;
    run_base.attach(run_cmd, true);
    auto* run_seed = run_cmd->add_option("--seed", seed_flag, "master seed");
    run_cmd->add_option("--out", out_dir, "output directory");

    // panel
    auto* panel_cmd = app.add_subcommand(
        "panel", "averaged fitness-over-time traces for a topology list");
    BaseOptions panel_base;
    panel_base.attach(panel_cmd, false);
    std::string topologies_flag = "empty,complete,star,er:0.5,ba:25";
    panel_cmd->add_option("--topologies", topologies_flag,
                          "comma-separated topology list");
    auto* panel_seed = panel_cmd->add_option("--seed", seed_flag, "master seed");
    panel_cmd->add_option("--reps", reps, "repetitions per topology");
    panel_cmd->add_option("--out", out_dir, "output directory");

    // sweep
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "network parameter sweep with repetitions and snapshots");
    BaseOptions sweep_base;
    sweep_base.attach(sweep_cmd, false);
    std::string axis_flag = "p";
    std::string snapshots_flag = "20,50,100";
    sweep_cmd->add_option("--axis", axis_flag, "sweep axis: p (ER) or m (BA)");
    sweep_cmd->add_option("--snapshots", snapshots_flag,
                          "comma-separated snapshot generations");
    auto* sweep_seed = sweep_cmd->add_option("--seed", seed_flag, "master seed");
    sweep_cmd->add_option("--reps", reps, "repetitions per grid value");
    sweep_cmd->add_option("--workers", workers, "worker threads");
    sweep_cmd->add_option("--out", out_dir, "output directory");

    // compare
    auto* compare_cmd = app.add_subcommand(
        "compare",
        "ER/BA sweeps against the complete-network standard GA baseline");
    BaseOptions compare_base;
    compare_base.attach(compare_cmd, false);
    std::string compare_snapshots = "20,50,100";
    compare_cmd->add_option("--snapshots", compare_snapshots,
                            "comma-separated snapshot generations");
    auto* compare_seed =
        compare_cmd->add_option("--seed", seed_flag, "master seed");
    compare_cmd->add_option("--reps", reps, "repetitions per grid value");
    compare_cmd->add_option("--workers", workers, "worker threads");
    compare_cmd->add_option("--out", out_dir, "output directory");

    // netstats
    auto* netstats_cmd = app.add_subcommand(
        "netstats", "network metrics over a parameter grid");
    std::string netstats_axis = "p";
    int netstats_n = 50;
    netstats_cmd->add_option("--axis", netstats_axis,
                             "grid axis: p (ER) or m (BA)");
    netstats_cmd->add_option("--n", netstats_n, "node count");
    auto* netstats_seed =
        netstats_cmd->add_option("--seed", seed_flag, "master seed");
    netstats_cmd->add_option("--reps", reps, "repetitions per grid value");
    netstats_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            GAConfig config = run_base.resolve();
            config.seed = resolve_seed(run_seed, seed_flag, run_base.file_seed);
            config.validate();
            const RunTrace trace = run(config);

            OutputSet outputs{out_dir};
            outputs.add("trace.csv", trace_to_csv(trace));
            std::string manifest = manifest_header("run", config.seed);
            manifest += config_echo(config);
            manifest += "outputs = trace.csv\n";
            outputs.add("manifest.txt", manifest);
            outputs.commit();

            const auto& last = trace.records.back();
            std::cout << "seed = " << config.seed << "\n"
                      << "final_mean_fitness = "
                      << format_double(last.mean_fitness) << "\n"
                      << "final_best_fitness = "
                      << format_double(last.best_fitness) << "\n"
                      << "wrote " << (fs::path(out_dir) / "trace.csv").string()
                      << "\n";
        } else if (panel_cmd->parsed()) {
            GAConfig base = panel_base.resolve();
            const std::uint64_t seed =
                resolve_seed(panel_seed, seed_flag, panel_base.file_seed);
            std::vector<TopologySpec> topologies;
            for (const auto& item : split_list(topologies_flag)) {
                topologies.push_back(TopologySpec::parse(item));
                topologies.back().validate(base.population_size);
            }
            const ObjectiveId function = base.objective.id;
            const auto panel =
                run_topology_panel(function, topologies, reps, seed, base);

            OutputSet outputs{out_dir};
            outputs.add("panel.csv", panel_to_csv(function, panel));
            std::string manifest = manifest_header("panel", seed);
            manifest += config_echo(base);
            manifest += "topologies = " + topologies_flag + "\n";
            manifest += "repetitions = " + std::to_string(reps) + "\n";
            manifest += "outputs = panel.csv\n";
            outputs.add("manifest.txt", manifest);
            outputs.commit();

            std::cout << "seed = " << seed << "\n"
                      << "topologies = " << topologies.size() << "\n"
                      << "wrote " << (fs::path(out_dir) / "panel.csv").string()
                      << "\n";
        } else if (sweep_cmd->parsed()) {
            GAConfig base = sweep_base.resolve();
            const std::uint64_t seed =
                resolve_seed(sweep_seed, seed_flag, sweep_base.file_seed);
            SweepSpec spec = SweepSpec::defaults(
                base.objective.id, sweep_axis_from_string(axis_flag), seed, base);
            spec.repetitions = reps;
            spec.snapshots.clear();
            for (const auto& item : split_list(snapshots_flag)) {
                spec.snapshots.push_back(std::stoi(item));
            }
            const SweepResult result = sweep(spec, workers);

            OutputSet outputs{out_dir};
            outputs.add("sweep.csv", sweep_to_csv(result));
            outputs.add("fits.csv", fits_to_csv(result));
            std::string manifest = manifest_header("sweep", seed);
            manifest += config_echo(base);
            manifest += "axis = " + to_string(spec.axis) + "\n";
            manifest += "repetitions = " + std::to_string(reps) + "\n";
            manifest += "snapshots = " + join_ints(spec.snapshots) + "\n";
            manifest += "workers = " + std::to_string(workers) + "\n";
            manifest += "fit_basis = repetition means per grid value\n";
            manifest += "outputs = sweep.csv, fits.csv\n";
            outputs.add("manifest.txt", manifest);
            outputs.commit();

            std::cout << "seed = " << seed << "\n"
                      << "cells = " << result.cells.size() << "\n"
                      << "wrote " << (fs::path(out_dir) / "sweep.csv").string()
                      << "\n"
                      << "wrote " << (fs::path(out_dir) / "fits.csv").string()
                      << "\n";
        } else if (compare_cmd->parsed()) {
            GAConfig base = compare_base.resolve();
            const std::uint64_t seed =
                resolve_seed(compare_seed, seed_flag, compare_base.file_seed);
            std::vector<int> snapshots;
            for (const auto& item : split_list(compare_snapshots)) {
                snapshots.push_back(std::stoi(item));
            }
            const ObjectiveId function = base.objective.id;

            SweepSpec er_spec = SweepSpec::defaults(
                function, SweepAxis::ErP, derive_seed(seed, kErSweepArm), base);
            er_spec.repetitions = reps;
            er_spec.snapshots = snapshots;
            SweepSpec ba_spec = SweepSpec::defaults(
                function, SweepAxis::BaM, derive_seed(seed, kBaSweepArm), base);
            ba_spec.repetitions = reps;
            ba_spec.snapshots = snapshots;

            const SweepResult er_result = sweep(er_spec, workers);
            const SweepResult ba_result = sweep(ba_spec, workers);
            const BaselineResult baseline = run_standard_baseline(
                function, snapshots, reps, derive_seed(seed, kBaselineArm), base);
            const ComparisonTable table = compare(er_result, ba_result, baseline);

            OutputSet outputs{out_dir};
            outputs.add("er_sweep.csv", sweep_to_csv(er_result));
            outputs.add("er_fits.csv", fits_to_csv(er_result));
            outputs.add("ba_sweep.csv", sweep_to_csv(ba_result));
            outputs.add("ba_fits.csv", fits_to_csv(ba_result));
            outputs.add("comparison.csv", comparison_to_csv(table));
            outputs.add("comparison.txt", comparison_to_text(table));
            std::string manifest = manifest_header("compare", seed);
            manifest += config_echo(base);
            manifest += "repetitions = " + std::to_string(reps) + "\n";
            manifest += "snapshots = " + join_ints(snapshots) + "\n";
            manifest += "workers = " + std::to_string(workers) + "\n";
            manifest += "fit_basis = repetition means per grid value\n";
            manifest += "outputs = er_sweep.csv, er_fits.csv, ba_sweep.csv, "
                        "ba_fits.csv, comparison.csv, comparison.txt\n";
            outputs.add("manifest.txt", manifest);
            outputs.commit();

            std::cout << "seed = " << seed << "\n"
                      << comparison_to_text(table) << "wrote "
                      << (fs::path(out_dir) / "comparison.csv").string() << "\n";
        } else if (netstats_cmd->parsed()) {
            const std::uint64_t seed =
                resolve_seed(netstats_seed, seed_flag, std::nullopt);
            const SweepAxis axis = sweep_axis_from_string(netstats_axis);
            const auto grid = default_grid(axis, netstats_n);
            const auto rows =
                network_stats(axis, grid, netstats_n, reps, seed);

            OutputSet outputs{out_dir};
            outputs.add("netstats.csv", netstats_to_csv(axis, rows));
            std::string manifest = manifest_header("netstats", seed);
            manifest += "axis = " + to_string(axis) + "\n";
            manifest += "n = " + std::to_string(netstats_n) + "\n";
            manifest += "repetitions = " + std::to_string(reps) + "\n";
            manifest += "outputs = netstats.csv\n";
            outputs.add("manifest.txt", manifest);
            outputs.commit();

            std::cout << "seed = " << seed << "\n"
                      << "rows = " << rows.size() << "\n"
                      << "wrote "
                      << (fs::path(out_dir) / "netstats.csv").string() << "\n";
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
