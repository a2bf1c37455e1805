#ifndef NETGA_HARNESS_HPP
#define NETGA_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netga/engine.hpp"

namespace netga {

enum class SweepAxis { ErP, BaM };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

/// Reference grids: p = 0.00..1.00 in steps of 0.01 for the ER axis; integer
/// m = 1..min(49, n-1) for the BA axis.
std::vector<double> default_grid(SweepAxis axis, int population_size);

/// One experiment sweep: a grid of network parameters, repeated runs per grid
/// value, and the generations at which population mean fitness is recorded.
struct SweepSpec {
    ObjectiveId function = ObjectiveId::Ackley;
    SweepAxis axis = SweepAxis::ErP;
    std::vector<double> grid;
    int repetitions = 10;
    std::vector<int> snapshots = {20, 50, 100};
    std::uint64_t master_seed = 0;
    GAConfig base;  // run parameters; topology, objective and seed are set per cell

    static SweepSpec defaults(ObjectiveId function, SweepAxis axis,
                              std::uint64_t master_seed,
                              const GAConfig& base = GAConfig{});

    void validate() const;

    /// Child seed for one sweep cell: derive_seed chained over the grid index
    /// and the repetition index.
    std::uint64_t cell_seed(int grid_index, int repetition) const;

    /// The full run configuration for one cell.
    GAConfig cell_config(int grid_index, int repetition) const;
};

struct SweepCell {
    int grid_index = 0;
    double value = 0.0;
    int repetition = 0;
    std::uint64_t seed = 0;
    std::vector<double> snapshot_mean;  // aligned with SweepSpec::snapshots
    double density = 0.0;
    bool connected = false;
    AveragePathLength avg_path;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;  // grid-major, repetition-minor
    /// grid_means[s][g]: snapshot s fitness averaged over repetitions at grid
    /// point g.
    std::vector<std::vector<double>> grid_means;
    /// Order-4 least-squares fit of grid_means[s] against the grid values,
    /// constant term first; empty when the grid is too small to fit.
    std::vector<std::vector<double>> fit_coefficients;
};

/// Runs every (grid value, repetition) cell, each from its own derived seed.
/// Cells are distributed over `workers` threads; assembly is by cell index,
/// so the result is identical for any worker count.
SweepResult sweep(const SweepSpec& spec, int workers = 1);

/// Averaged fitness-over-time traces for a list of topologies.
struct PanelEntry {
    TopologySpec topology;
    /// mean_fitness_avg[t]: population mean fitness at generation t, averaged
    /// over repetitions. Length tau+1.
    std::vector<double> mean_fitness_avg;
};

std::vector<PanelEntry> run_topology_panel(ObjectiveId function,
                                           const std::vector<TopologySpec>& topologies,
                                           int repetitions,
                                           std::uint64_t master_seed,
                                           const GAConfig& base = GAConfig{});

/// Complete-network (standard GA) reference runs.
struct BaselineResult {
    ObjectiveId function = ObjectiveId::Ackley;
    std::vector<int> snapshots;
    std::vector<double> means;  // per snapshot, averaged over repetitions
    int repetitions = 0;
};

BaselineResult run_standard_baseline(ObjectiveId function,
                                     const std::vector<int>& snapshots,
                                     int repetitions, std::uint64_t master_seed,
                                     const GAConfig& base = GAConfig{});

/// Sub-stream tags for composite commands that run several arms off one
/// master seed (ER sweep, BA sweep, standard baseline).
inline constexpr std::uint64_t kErSweepArm = 1;
inline constexpr std::uint64_t kBaSweepArm = 2;
inline constexpr std::uint64_t kBaselineArm = 3;

enum class ComparisonWinner { GA, ER, AB };

struct ComparisonRow {
    int snapshot = 0;
    double ga = 0.0;
    double er_best = 0.0;
    double er_best_p = 0.0;
    double ab_best = 0.0;
    int ab_best_m = 0;
    ComparisonWinner winner = ComparisonWinner::GA;
};

struct ComparisonTable {
    ObjectiveId function = ObjectiveId::Ackley;
    std::vector<ComparisonRow> rows;  // one per snapshot
};

/// Best-over-grid sweep means against the standard-GA baseline, per snapshot.
/// All inputs must agree on function and snapshot set.
ComparisonTable compare(const SweepResult& er_result,
                        const SweepResult& ba_result,
                        const BaselineResult& standard);

/// Least-squares polynomial fit, constant term first. The abscissa is
/// centered and scaled to [-1, 1] before solving the normal equations and the
/// coefficients are mapped back, which keeps high-order fits on wide grids
/// well conditioned. Requires xs.size() == ys.size() >= order + 1 and at
/// least two distinct xs.
std::vector<double> polyfit(std::span<const double> xs,
                            std::span<const double> ys, int order);

/// Evaluates a constant-first coefficient vector at x.
double polyval(std::span<const double> coefficients, double x);

/// Network metrics over a parameter grid, using the same seed chain as
/// sweep(): row (g, r) describes exactly the network a sweep cell (g, r) with
/// the same master seed would evolve on.
struct NetworkStatsRow {
    int grid_index = 0;
    double value = 0.0;
    int repetition = 0;
    std::uint64_t seed = 0;
    int nodes = 0;
    std::size_t edges = 0;
    double density = 0.0;
    bool connected = false;
    AveragePathLength avg_path;
};

std::vector<NetworkStatsRow> network_stats(SweepAxis axis,
                                           std::span<const double> grid,
                                           int nodes, int repetitions,
                                           std::uint64_t master_seed);

// CSV renderings. All numeric fields use shortest round-trip formatting so
// output bytes are a pure function of the data.
std::string sweep_to_csv(const SweepResult& result);
std::string fits_to_csv(const SweepResult& result);
std::string panel_to_csv(ObjectiveId function, const std::vector<PanelEntry>& entries);
std::string comparison_to_csv(const ComparisonTable& table);
std::string comparison_to_text(const ComparisonTable& table);
std::string netstats_to_csv(SweepAxis axis, const std::vector<NetworkStatsRow>& rows);

}  // namespace netga

#endif
