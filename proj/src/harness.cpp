#include "netga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "netga/csv.hpp"

namespace netga {

namespace {

/// Runs task(0..count-1) on up to `workers` threads. Tasks must write only to
/// their own output slots; the first exception is rethrown on the caller.
void parallel_for(int workers, int count, const std::function<void(int)>& task) {
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    }
    if (error) std::rethrow_exception(error);
}

TopologySpec topology_for(SweepAxis axis, double value) {
    if (axis == SweepAxis::ErP) {
        return TopologySpec::erdos_renyi(value);
    }
    return TopologySpec::barabasi_albert(static_cast<int>(std::lround(value)));
}

std::string snapshot_column(int generation) {
    return "t" + std::to_string(generation);
}

std::string fixed3(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

}  // namespace

std::string to_string(SweepAxis axis) {
    return axis == SweepAxis::ErP ? "p" : "m";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    if (name == "p") return SweepAxis::ErP;
    if (name == "m") return SweepAxis::BaM;
    throw std::invalid_argument("unknown sweep axis \"" + std::string(name) +
                                "\" (expected p|m)");
}

std::vector<double> default_grid(SweepAxis axis, int population_size) {
    std::vector<double> grid;
    if (axis == SweepAxis::ErP) {
        grid.reserve(101);
        for (int i = 0; i <= 100; ++i) {
            grid.push_back(static_cast<double>(i) / 100.0);
        }
    } else {
        const int top = std::min(49, population_size - 1);
        grid.reserve(top);
        for (int m = 1; m <= top; ++m) {
            grid.push_back(static_cast<double>(m));
        }
    }
    return grid;
}

SweepSpec SweepSpec::defaults(ObjectiveId function, SweepAxis axis,
                              std::uint64_t master_seed, const GAConfig& base) {
    SweepSpec spec;
    spec.function = function;
    spec.axis = axis;
    spec.grid = default_grid(axis, base.population_size);
    spec.master_seed = master_seed;
    spec.base = base;
    return spec;
}

void SweepSpec::validate() const {
    if (grid.empty()) {
        throw std::invalid_argument("sweep grid is empty");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("sweep repetitions must be >= 1");
    }
    if (snapshots.empty()) {
        throw std::invalid_argument("sweep snapshot set is empty");
    }
    for (int t : snapshots) {
        if (t < 0 || t > base.generations) {
            throw std::invalid_argument("snapshot generation " +
                                        std::to_string(t) +
                                        " outside [0, tau]");
        }
    }
    GAConfig probe = base;
    probe.objective = ObjectiveSpec::defaults(function, base.objective.dimension);
    for (double value : grid) {
        probe.topology = topology_for(axis, value);
        probe.validate();
    }
}

std::uint64_t SweepSpec::cell_seed(int grid_index, int repetition) const {
    return derive_seed(derive_seed(master_seed, grid_index), repetition);
}

GAConfig SweepSpec::cell_config(int grid_index, int repetition) const {
    GAConfig config = base;
    config.objective = ObjectiveSpec::defaults(function, base.objective.dimension);
    config.topology = topology_for(axis, grid[grid_index]);
    config.seed = cell_seed(grid_index, repetition);
    return config;
}

SweepResult sweep(const SweepSpec& spec, int workers) {
    spec.validate();
    const int grid_size = static_cast<int>(spec.grid.size());
    const int reps = spec.repetitions;

    SweepResult result;
    result.spec = spec;
    result.cells.resize(static_cast<std::size_t>(grid_size) * reps);

    parallel_for(workers, grid_size * reps, [&](int index) {
        const int grid_index = index / reps;
        const int repetition = index % reps;
        const GAConfig config = spec.cell_config(grid_index, repetition);

        SweepCell cell;
        cell.grid_index = grid_index;
        cell.value = spec.grid[grid_index];
        cell.repetition = repetition;
        cell.seed = config.seed;

        const RunTrace trace = run(config);
        cell.snapshot_mean.reserve(spec.snapshots.size());
        for (int t : spec.snapshots) {
            cell.snapshot_mean.push_back(trace.records[t].mean_fitness);
        }

        const PopulationGraph graph = make_population_graph(config);
        cell.density = density(graph);
        cell.connected = is_connected(graph);
        cell.avg_path = average_shortest_path_length(graph);

        result.cells[index] = std::move(cell);
    });

    result.grid_means.assign(spec.snapshots.size(),
                             std::vector<double>(grid_size, 0.0));
    for (int g = 0; g < grid_size; ++g) {
        for (std::size_t s = 0; s < spec.snapshots.size(); ++s) {
            double sum = 0.0;
            for (int r = 0; r < reps; ++r) {
                sum += result.cells[static_cast<std::size_t>(g) * reps + r]
                           .snapshot_mean[s];
            }
            result.grid_means[s][g] = sum / static_cast<double>(reps);
        }
    }

    constexpr int fit_order = 4;
    const bool can_fit =
        grid_size >= fit_order + 1 &&
        *std::min_element(spec.grid.begin(), spec.grid.end()) <
            *std::max_element(spec.grid.begin(), spec.grid.end());
    if (can_fit) {
        result.fit_coefficients.reserve(spec.snapshots.size());
        for (const auto& means : result.grid_means) {
            result.fit_coefficients.push_back(
                polyfit(spec.grid, means, fit_order));
        }
    }
    return result;
}

std::vector<PanelEntry> run_topology_panel(
    ObjectiveId function, const std::vector<TopologySpec>& topologies,
    int repetitions, std::uint64_t master_seed, const GAConfig& base) {
    if (topologies.empty()) {
        throw std::invalid_argument("topology panel is empty");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("panel repetitions must be >= 1");
    }
    std::vector<PanelEntry> panel;
    panel.reserve(topologies.size());
    for (std::size_t i = 0; i < topologies.size(); ++i) {
        GAConfig config = base;
        config.objective =
            ObjectiveSpec::defaults(function, base.objective.dimension);
        config.topology = topologies[i];

        PanelEntry entry;
        entry.topology = topologies[i];
        entry.mean_fitness_avg.assign(base.generations + 1, 0.0);
        for (int r = 0; r < repetitions; ++r) {
            config.seed = derive_seed(derive_seed(master_seed, i), r);
            const RunTrace trace = run(config);
            for (int t = 0; t <= base.generations; ++t) {
                entry.mean_fitness_avg[t] += trace.records[t].mean_fitness;
            }
        }
        for (double& v : entry.mean_fitness_avg) {
            v /= static_cast<double>(repetitions);
        }
        panel.push_back(std::move(entry));
    }
    return panel;
}

BaselineResult run_standard_baseline(ObjectiveId function,
                                     const std::vector<int>& snapshots,
                                     int repetitions, std::uint64_t master_seed,
                                     const GAConfig& base) {
    if (repetitions < 1) {
        throw std::invalid_argument("baseline repetitions must be >= 1");
    }
    BaselineResult baseline;
    baseline.function = function;
    baseline.snapshots = snapshots;
    baseline.repetitions = repetitions;
    baseline.means.assign(snapshots.size(), 0.0);

    GAConfig config = base;
    config.objective = ObjectiveSpec::defaults(function, base.objective.dimension);
    config.topology = TopologySpec::complete();
    for (int r = 0; r < repetitions; ++r) {
        config.seed = derive_seed(derive_seed(master_seed, 0), r);
        const RunTrace trace = run(config);
        for (std::size_t s = 0; s < snapshots.size(); ++s) {
            baseline.means[s] += trace.records[snapshots[s]].mean_fitness;
        }
    }
    for (double& v : baseline.means) {
        v /= static_cast<double>(repetitions);
    }
    return baseline;
}

ComparisonTable compare(const SweepResult& er_result,
                        const SweepResult& ba_result,
                        const BaselineResult& standard) {
    if (er_result.spec.axis != SweepAxis::ErP ||
        ba_result.spec.axis != SweepAxis::BaM) {
        throw std::invalid_argument("compare expects an ER sweep and a BA sweep");
    }
    if (er_result.spec.function != ba_result.spec.function ||
        er_result.spec.function != standard.function) {
        throw std::invalid_argument("compare inputs disagree on the objective");
    }
    if (er_result.spec.snapshots != ba_result.spec.snapshots ||
        er_result.spec.snapshots != standard.snapshots) {
        throw std::invalid_argument("compare inputs disagree on snapshots");
    }

    ComparisonTable table;
    table.function = er_result.spec.function;
    for (std::size_t s = 0; s < standard.snapshots.size(); ++s) {
        const auto& er_means = er_result.grid_means[s];
        const auto& ba_means = ba_result.grid_means[s];
        const auto er_min = std::min_element(er_means.begin(), er_means.end());
        const auto ba_min = std::min_element(ba_means.begin(), ba_means.end());

        ComparisonRow row;
        row.snapshot = standard.snapshots[s];
        row.ga = standard.means[s];
        row.er_best = *er_min;
        row.er_best_p =
            er_result.spec.grid[std::distance(er_means.begin(), er_min)];
        row.ab_best = *ba_min;
        row.ab_best_m = static_cast<int>(std::lround(
            ba_result.spec.grid[std::distance(ba_means.begin(), ba_min)]));
        row.winner = ComparisonWinner::GA;
        if (row.er_best < row.ga && row.er_best <= row.ab_best) {
            row.winner = ComparisonWinner::ER;
        } else if (row.ab_best < row.ga && row.ab_best < row.er_best) {
            row.winner = ComparisonWinner::AB;
        }
        table.rows.push_back(row);
    }
    return table;
}

std::vector<double> polyfit(std::span<const double> xs,
                            std::span<const double> ys, int order) {
    if (order < 0) {
        throw std::invalid_argument("polynomial order must be >= 0");
    }
    const int point_count = static_cast<int>(xs.size());
    if (point_count != static_cast<int>(ys.size())) {
        throw std::invalid_argument("polyfit inputs differ in length");
    }
    if (point_count < order + 1) {
        throw std::invalid_argument("polyfit needs at least order+1 points");
    }
    const auto [min_it, max_it] = std::minmax_element(xs.begin(), xs.end());
    if (*min_it == *max_it) {
        throw std::invalid_argument("polyfit abscissa is degenerate");
    }

    // Center and scale x to [-1, 1].
    const double center = 0.5 * (*max_it + *min_it);
    const double scale = 0.5 * (*max_it - *min_it);
    const int terms = order + 1;

    // Normal equations in the scaled coordinate.
    std::vector<double> gram(static_cast<std::size_t>(terms) * terms, 0.0);
    std::vector<double> rhs(terms, 0.0);
    std::vector<double> powers(terms);
    for (int k = 0; k < point_count; ++k) {
        const double t = (xs[k] - center) / scale;
        powers[0] = 1.0;
        for (int i = 1; i < terms; ++i) powers[i] = powers[i - 1] * t;
        for (int i = 0; i < terms; ++i) {
            rhs[i] += powers[i] * ys[k];
            for (int j = 0; j < terms; ++j) {
                gram[static_cast<std::size_t>(i) * terms + j] +=
                    powers[i] * powers[j];
            }
        }
    }

    // Gaussian elimination with partial pivoting.
    std::vector<double> scaled_coeffs(terms, 0.0);
    for (int col = 0; col < terms; ++col) {
        int pivot = col;
        for (int row = col + 1; row < terms; ++row) {
            if (std::abs(gram[static_cast<std::size_t>(row) * terms + col]) >
                std::abs(gram[static_cast<std::size_t>(pivot) * terms + col])) {
                pivot = row;
            }
        }
        if (gram[static_cast<std::size_t>(pivot) * terms + col] == 0.0) {
            throw std::invalid_argument("polyfit design matrix is singular");
        }
        if (pivot != col) {
            for (int j = 0; j < terms; ++j) {
                std::swap(gram[static_cast<std::size_t>(col) * terms + j],
                          gram[static_cast<std::size_t>(pivot) * terms + j]);
            }
            std::swap(rhs[col], rhs[pivot]);
        }
        for (int row = col + 1; row < terms; ++row) {
            const double factor =
                gram[static_cast<std::size_t>(row) * terms + col] /
                gram[static_cast<std::size_t>(col) * terms + col];
            for (int j = col; j < terms; ++j) {
                gram[static_cast<std::size_t>(row) * terms + j] -=
                    factor * gram[static_cast<std::size_t>(col) * terms + j];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    for (int row = terms - 1; row >= 0; --row) {
        double sum = rhs[row];
        for (int j = row + 1; j < terms; ++j) {
            sum -= gram[static_cast<std::size_t>(row) * terms + j] *
                   scaled_coeffs[j];
        }
        scaled_coeffs[row] =
            sum / gram[static_cast<std::size_t>(row) * terms + row];
    }

    // Map back to the raw axis: accumulate b_k * ((x - center)/scale)^k.
    std::vector<double> coefficients(terms, 0.0);
    std::vector<double> basis{1.0};  // ((x - center)/scale)^k, raw coefficients
    for (int k = 0; k < terms; ++k) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            coefficients[i] += scaled_coeffs[k] * basis[i];
        }
        if (k + 1 < terms) {
            // basis *= (-center/scale) + (1/scale) x
            std::vector<double> next(basis.size() + 1, 0.0);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i] += basis[i] * (-center / scale);
                next[i + 1] += basis[i] / scale;
            }
            basis = std::move(next);
        }
    }
    return coefficients;
}

double polyval(std::span<const double> coefficients, double x) {
    double value = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        value = value * x + coefficients[i];
    }
    return value;
}

std::vector<NetworkStatsRow> network_stats(SweepAxis axis,
                                           std::span<const double> grid,
                                           int nodes, int repetitions,
                                           std::uint64_t master_seed) {
    if (grid.empty()) {
        throw std::invalid_argument("network stats grid is empty");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("network stats repetitions must be >= 1");
    }
    std::vector<NetworkStatsRow> rows;
    rows.reserve(grid.size() * repetitions);
    for (int g = 0; g < static_cast<int>(grid.size()); ++g) {
        const TopologySpec topology = topology_for(axis, grid[g]);
        topology.validate(nodes);
        for (int r = 0; r < repetitions; ++r) {
            NetworkStatsRow row;
            row.grid_index = g;
            row.value = grid[g];
            row.repetition = r;
            row.seed = derive_seed(derive_seed(master_seed, g), r);
            RandomStream graph_rng(derive_seed(row.seed, kGraphStreamId));
            const PopulationGraph graph = generate(topology, nodes, graph_rng);
            row.nodes = nodes;
            row.edges = graph.edge_count();
            row.density = density(graph);
            row.connected = is_connected(graph);
            row.avg_path = average_shortest_path_length(graph);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "function,axis,value,repetition,seed";
    for (int t : result.spec.snapshots) {
        out += "," + snapshot_column(t);
    }
    out += ",density,connected,avg_path\n";
    const std::string function = to_string(result.spec.function);
    const std::string axis = to_string(result.spec.axis);
    for (const auto& cell : result.cells) {
        out += function + "," + axis + "," + format_double(cell.value) + "," +
               std::to_string(cell.repetition) + "," + format_u64(cell.seed);
        for (double v : cell.snapshot_mean) {
            out += "," + format_double(v);
        }
        out += "," + format_double(cell.density) + "," +
               (cell.connected ? "1" : "0") + "," +
               format_optional(cell.avg_path.value) + "\n";
    }
    return out;
}

std::string fits_to_csv(const SweepResult& result) {
    std::string out = "function,axis,snapshot";
    const int terms = result.fit_coefficients.empty()
                          ? 5
                          : static_cast<int>(result.fit_coefficients[0].size());
    for (int i = 0; i < terms; ++i) {
        out += ",c" + std::to_string(i);
    }
    out += "\n";
    const std::string function = to_string(result.spec.function);
    const std::string axis = to_string(result.spec.axis);
    for (std::size_t s = 0; s < result.fit_coefficients.size(); ++s) {
        out += function + "," + axis + "," +
               std::to_string(result.spec.snapshots[s]);
        for (double c : result.fit_coefficients[s]) {
            out += "," + format_double(c);
        }
        out += "\n";
    }
    return out;
}

std::string panel_to_csv(ObjectiveId function,
                         const std::vector<PanelEntry>& entries) {
    std::string out = "function,topology,t,mean_fitness_avg\n";
    const std::string name = to_string(function);
    for (const auto& entry : entries) {
        const std::string topology = entry.topology.to_string();
        for (std::size_t t = 0; t < entry.mean_fitness_avg.size(); ++t) {
            out += name + "," + topology + "," + std::to_string(t) + "," +
                   format_double(entry.mean_fitness_avg[t]) + "\n";
        }
    }
    return out;
}

namespace {

std::string winner_name(ComparisonWinner winner) {
    switch (winner) {
        case ComparisonWinner::GA: return "ga";
        case ComparisonWinner::ER: return "er";
        case ComparisonWinner::AB: return "ab";
    }
    return "ga";
}

}  // namespace

std::string comparison_to_csv(const ComparisonTable& table) {
    std::string out =
        "function,snapshot,ga,er_best,er_best_p,ab_best,ab_best_m,best\n";
    const std::string function = to_string(table.function);
    for (const auto& row : table.rows) {
        out += function + "," + std::to_string(row.snapshot) + "," +
               format_double(row.ga) + "," + format_double(row.er_best) + "," +
               format_double(row.er_best_p) + "," +
               format_double(row.ab_best) + "," +
               std::to_string(row.ab_best_m) + "," + winner_name(row.winner) +
               "\n";
    }
    return out;
}

std::string comparison_to_text(const ComparisonTable& table) {
    std::string out = "function: " + to_string(table.function) + "\n";
    out += "snapshot        GA       ER*      at p       AB*      at m   best\n";
    for (const auto& row : table.rows) {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "t=%-6d %9s %9s %9s %9s %9d   %s\n", row.snapshot,
                      fixed3(row.ga).c_str(), fixed3(row.er_best).c_str(),
                      fixed3(row.er_best_p).c_str(), fixed3(row.ab_best).c_str(),
                      row.ab_best_m, winner_name(row.winner).c_str());
        out += line;
    }
    return out;
}

std::string netstats_to_csv(SweepAxis axis,
                            const std::vector<NetworkStatsRow>& rows) {
    std::string out =
        "axis,value,repetition,seed,nodes,edges,density,connected,avg_path\n";
    const std::string axis_name = to_string(axis);
    for (const auto& row : rows) {
        out += axis_name + "," + format_double(row.value) + "," +
               std::to_string(row.repetition) + "," + format_u64(row.seed) +
               "," + std::to_string(row.nodes) + "," +
               std::to_string(row.edges) + "," + format_double(row.density) +
               "," + (row.connected ? "1" : "0") + "," +
               format_optional(row.avg_path.value) + "\n";
    }
    return out;
}

}  // namespace netga
