#ifndef NETGA_ENGINE_HPP
#define NETGA_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netga/benchmarks.hpp"
#include "netga/netgraph.hpp"
#include "netga/rng.hpp"

namespace netga {

/// Roulette-wheel weighting scheme. LinearDenominator is the standard
/// fitness-proportionate form pi_i = fhat(i) / sum_j fhat(j).
/// SquaredDenominator divides by sum_j fhat(j)^2 instead and renormalises the
/// result to sum to 1; selectable for side-by-side comparisons.
enum class SelectionVariant { LinearDenominator, SquaredDenominator };

std::string to_string(SelectionVariant variant);
SelectionVariant selection_variant_from_string(std::string_view name);

/// Sub-stream ids hung off GAConfig::seed. Every source of randomness in a
/// run is derived as derive_seed(seed, id), so runs that share a master seed
/// but differ in any id never overlap streams.
inline constexpr std::uint64_t kGraphStreamId = 1;
inline constexpr std::uint64_t kInitStreamId = 2;
inline constexpr std::uint64_t kEvolveStreamId = 3;

/// Complete parameterisation of one run. Defaults follow the reference
/// configuration: n=50, rho=0.7, mu=0.05, tau=100.
struct GAConfig {
    int population_size = 50;     // n, must be even
    double crossover_rate = 0.7;  // rho
    double mutation_rate = 0.05;  // mu, per-gene
    int generations = 100;        // tau
    ObjectiveSpec objective = ObjectiveSpec::defaults(ObjectiveId::Rastrigin);
    TopologySpec topology = TopologySpec::complete();
    std::uint64_t seed = 0;
    SelectionVariant selection_variant = SelectionVariant::LinearDenominator;

    void validate() const;

    /// Flat "key = value" text with keys function, dimension, n, rho, mu,
    /// tau, topology, seed, selection_variant.
    std::string to_key_values() const;
    static GAConfig from_key_values(std::string_view text);
};

/// Individuals indexed by population slot (= graph node id) plus their raw
/// objective values.
struct Population {
    std::vector<Genome> individuals;
    std::vector<double> fitness;

    int size() const { return static_cast<int>(individuals.size()); }
};

struct TraceRecord {
    int generation;
    double mean_fitness;  // population mean of raw objective values
    double best_fitness;  // population minimum
    Genome best_genome;
};

/// Per-generation statistics for one run: tau+1 records (t = 0 through tau).
struct RunTrace {
    std::vector<TraceRecord> records;
    Population final_population;
};

/// n genomes sampled coordinate-wise uniformly over the objective domain,
/// fitness cache filled.
Population init_population(const GAConfig& config, RandomStream& rng);

/// fhat = 1 / (1 + f). Strictly decreasing, maps [0, inf) onto (0, 1].
double fitness_transform(double raw_fitness);

/// Roulette weights over `subset` (population slots). Weights are strictly
/// positive and sum to 1. Throws std::invalid_argument on an empty subset.
std::vector<double> selection_weights(const Population& pop,
                                      std::span<const int> subset,
                                      SelectionVariant variant);

/// Fitness-proportionate draw over the full population.
int select_first_parent(const Population& pop, SelectionVariant variant,
                        RandomStream& rng);

/// Fitness-proportionate draw over the neighbors of `first` in the population
/// network; empty neighborhood yields nullopt (the caller clones instead).
std::optional<int> select_mate(const Population& pop, const PopulationGraph& g,
                               int first, SelectionVariant variant,
                               RandomStream& rng);

/// Exchanges coordinates from position `cut` onward: child1 = a[0..cut) +
/// b[cut..d), child2 the mirror. cut = 0 swaps whole genomes, cut = d copies.
std::pair<Genome, Genome> single_point_cross(const Genome& a, const Genome& b,
                                             int cut);

/// With probability `rate` applies single_point_cross at a uniform cut in
/// {0, ..., d}; otherwise the children are exact copies of the parents.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                    double rate, RandomStream& rng);

/// Each coordinate independently gains a standard-normal perturbation with
/// probability `rate`; mutated coordinates are clamped to the domain, others
/// are returned bit-identical.
Genome mutate(const Genome& x, double rate, const ObjectiveSpec& spec,
              RandomStream& rng);

/// One full generational replacement: n/2 mating events, each selecting a
/// first parent from the whole population and a mate from its network
/// neighborhood (an isolated first parent clones itself twice), then
/// crossover and mutation. Event e fills slots 2e and 2e+1 of the new
/// population; the fitness cache is refreshed. No elitism.
Population step_generation(const Population& pop, const PopulationGraph& g,
                           const GAConfig& config, RandomStream& rng);

/// The population network a run with this config draws (from the seed's
/// graph sub-stream). Drawn once per run and held constant.
PopulationGraph make_population_graph(const GAConfig& config);

/// Executes a complete run: graph, initial population, tau generations.
/// Deterministic function of the config including its seed.
RunTrace run(const GAConfig& config);

/// CSV with columns t, mean_fitness, best_fitness.
std::string trace_to_csv(const RunTrace& trace);

}  // namespace netga

#endif
