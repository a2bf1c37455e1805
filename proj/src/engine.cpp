#include "netga/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "netga/csv.hpp"

namespace netga {

namespace {

/// One categorical draw from normalized weights: a single uniform deviate
/// walked through the cumulative distribution.
std::size_t sample_index(std::span<const double> weights, RandomStream& rng) {
    const double u = rng.next_unit();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) return i;
    }
    return weights.size() - 1;  // guards against cumulative rounding < 1
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

std::string to_string(SelectionVariant variant) {
    return variant == SelectionVariant::LinearDenominator ? "linear" : "squared";
}

SelectionVariant selection_variant_from_string(std::string_view name) {
    if (name == "linear") return SelectionVariant::LinearDenominator;
    if (name == "squared") return SelectionVariant::SquaredDenominator;
    throw std::invalid_argument("unknown selection variant \"" +
                                std::string(name) +
                                "\" (expected linear|squared)");
}

void GAConfig::validate() const {
    if (population_size < 2 || population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and >= 2");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw std::invalid_argument("crossover rate must be in [0, 1]");
    }
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw std::invalid_argument("mutation rate must be in [0, 1]");
    }
    if (generations < 0) {
        throw std::invalid_argument("generation count must be >= 0");
    }
    objective.validate();
    topology.validate(population_size);
}

std::string GAConfig::to_key_values() const {
    std::string out;
    out += "function = " + to_string(objective.id) + "\n";
    out += "dimension = " + std::to_string(objective.dimension) + "\n";
    out += "n = " + std::to_string(population_size) + "\n";
    out += "rho = " + format_double(crossover_rate) + "\n";
    out += "mu = " + format_double(mutation_rate) + "\n";
    out += "tau = " + std::to_string(generations) + "\n";
    out += "topology = " + topology.to_string() + "\n";
    out += "seed = " + format_u64(seed) + "\n";
    out += "selection_variant = " + netga::to_string(selection_variant) + "\n";
    return out;
}

GAConfig GAConfig::from_key_values(std::string_view text) {
    GAConfig config;
    ObjectiveId function = config.objective.id;
    int dimension = config.objective.dimension;

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line missing '=': " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "function") {
                function = objective_from_string(value);
            } else if (key == "dimension") {
                dimension = std::stoi(value);
            } else if (key == "n") {
                config.population_size = std::stoi(value);
            } else if (key == "rho") {
                config.crossover_rate = std::stod(value);
            } else if (key == "mu") {
                config.mutation_rate = std::stod(value);
            } else if (key == "tau") {
                config.generations = std::stoi(value);
            } else if (key == "topology") {
                config.topology = TopologySpec::parse(value);
            } else if (key == "seed") {
                config.seed = std::stoull(value);
            } else if (key == "selection_variant") {
                config.selection_variant = selection_variant_from_string(value);
            } else {
                throw std::invalid_argument("unknown config key \"" + key + "\"");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad value for config key \"" + key +
                                        "\": " + value);
        }
    }
    config.objective = ObjectiveSpec::defaults(function, dimension);
    return config;
}

Population init_population(const GAConfig& config, RandomStream& rng) {
    config.validate();
    Population pop;
    pop.individuals.reserve(config.population_size);
    pop.fitness.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        Genome genome(config.objective.dimension);
        for (double& coord : genome) {
            coord = rng.next_uniform(config.objective.lower_bound,
                                     config.objective.upper_bound);
        }
        pop.fitness.push_back(evaluate(config.objective, genome));
        pop.individuals.push_back(std::move(genome));
    }
    return pop;
}

double fitness_transform(double raw_fitness) {
    return 1.0 / (1.0 + raw_fitness);
}

std::vector<double> selection_weights(const Population& pop,
                                      std::span<const int> subset,
                                      SelectionVariant variant) {
    if (subset.empty()) {
        throw std::invalid_argument("selection over an empty subset");
    }
    std::vector<double> weights(subset.size());
    double denominator = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const double transformed = fitness_transform(pop.fitness[subset[i]]);
        weights[i] = transformed;
        denominator += variant == SelectionVariant::LinearDenominator
                           ? transformed
                           : transformed * transformed;
    }
    double total = 0.0;
    for (double& w : weights) {
        w /= denominator;
        total += w;
    }
    if (variant == SelectionVariant::SquaredDenominator) {
        for (double& w : weights) w /= total;
    }
    return weights;
}

int select_first_parent(const Population& pop, SelectionVariant variant,
                        RandomStream& rng) {
    std::vector<int> all(pop.size());
    std::iota(all.begin(), all.end(), 0);
    const auto weights = selection_weights(pop, all, variant);
    return static_cast<int>(sample_index(weights, rng));
}

std::optional<int> select_mate(const Population& pop, const PopulationGraph& g,
                               int first, SelectionVariant variant,
                               RandomStream& rng) {
    const auto& hood = g.neighbors(first);
    if (hood.empty()) return std::nullopt;
    const auto weights = selection_weights(pop, hood, variant);
    return hood[sample_index(weights, rng)];
}

std::pair<Genome, Genome> single_point_cross(const Genome& a, const Genome& b,
                                             int cut) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("crossover parents differ in length");
    }
    if (cut < 0 || cut > static_cast<int>(a.size())) {
        throw std::invalid_argument("crossover cut out of range");
    }
    Genome child1 = a;
    Genome child2 = b;
    for (std::size_t i = cut; i < a.size(); ++i) {
        child1[i] = b[i];
        child2[i] = a[i];
    }
    return {std::move(child1), std::move(child2)};
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                    double rate, RandomStream& rng) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("crossover parents differ in length");
    }
    if (rng.next_unit() < rate) {
        const int cut = static_cast<int>(rng.next_below(a.size() + 1));
        return single_point_cross(a, b, cut);
    }
    return {a, b};
}

Genome mutate(const Genome& x, double rate, const ObjectiveSpec& spec,
              RandomStream& rng) {
    Genome out = x;
    for (double& coord : out) {
        if (rng.next_unit() < rate) {
            coord += rng.next_gaussian();
            if (coord < spec.lower_bound) coord = spec.lower_bound;
            if (coord > spec.upper_bound) coord = spec.upper_bound;
        }
    }
    return out;
}

Population step_generation(const Population& pop, const PopulationGraph& g,
                           const GAConfig& config, RandomStream& rng) {
    const int n = pop.size();
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("population size must be even and >= 2");
    }
    Population next;
    next.individuals.reserve(n);
    next.fitness.reserve(n);
    for (int event = 0; event < n / 2; ++event) {
        const int first =
            select_first_parent(pop, config.selection_variant, rng);
        const auto mate =
            select_mate(pop, g, first, config.selection_variant, rng);
        Genome child1;
        Genome child2;
        if (mate) {
            std::tie(child1, child2) =
                crossover(pop.individuals[first], pop.individuals[*mate],
                          config.crossover_rate, rng);
        } else {
            // Isolated node: both offspring descend from the first parent.
            child1 = pop.individuals[first];
            child2 = pop.individuals[first];
        }
        child1 = mutate(child1, config.mutation_rate, config.objective, rng);
        child2 = mutate(child2, config.mutation_rate, config.objective, rng);
        next.fitness.push_back(evaluate(config.objective, child1));
        next.fitness.push_back(evaluate(config.objective, child2));
        next.individuals.push_back(std::move(child1));
        next.individuals.push_back(std::move(child2));
    }
    return next;
}

PopulationGraph make_population_graph(const GAConfig& config) {
    config.validate();
    RandomStream graph_rng(derive_seed(config.seed, kGraphStreamId));
    return generate(config.topology, config.population_size, graph_rng);
}

namespace {

TraceRecord observe(int generation, const Population& pop) {
    const auto best =
        std::min_element(pop.fitness.begin(), pop.fitness.end());
    const auto best_slot = std::distance(pop.fitness.begin(), best);
    const double mean =
        std::accumulate(pop.fitness.begin(), pop.fitness.end(), 0.0) /
        static_cast<double>(pop.size());
    return TraceRecord{generation, mean, *best, pop.individuals[best_slot]};
}

}  // namespace

RunTrace run(const GAConfig& config) {
    config.validate();
    const PopulationGraph graph = make_population_graph(config);
    RandomStream init_rng(derive_seed(config.seed, kInitStreamId));
    RandomStream evolve_rng(derive_seed(config.seed, kEvolveStreamId));

    RunTrace trace;
    trace.records.reserve(config.generations + 1);
    Population pop = init_population(config, init_rng);
    trace.records.push_back(observe(0, pop));
    for (int t = 1; t <= config.generations; ++t) {
        pop = step_generation(pop, graph, config, evolve_rng);
        trace.records.push_back(observe(t, pop));
    }
    trace.final_population = std::move(pop);
    return trace;
}

std::string trace_to_csv(const RunTrace& trace) {
    std::string out = "t,mean_fitness,best_fitness\n";
    for (const auto& record : trace.records) {
        out += std::to_string(record.generation) + "," +
               format_double(record.mean_fitness) + "," +
               format_double(record.best_fitness) + "\n";
    }
    return out;
}

}  // namespace netga
