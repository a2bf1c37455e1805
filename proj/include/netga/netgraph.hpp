#ifndef NETGA_NETGRAPH_HPP
#define NETGA_NETGRAPH_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netga/rng.hpp"

namespace netga {

/// Which population network to draw, plus its parameter.
struct TopologySpec {
    enum class Kind { ErdosRenyi, BarabasiAlbert, Complete, Empty, Star };

    Kind kind = Kind::Complete;
    double edge_probability = 0.0;  // ER link formation probability p
    int attachment_count = 0;       // BA preferential attachment intensity m

    static TopologySpec erdos_renyi(double p);
    static TopologySpec barabasi_albert(int m);
    static TopologySpec complete() { return TopologySpec{Kind::Complete, 0.0, 0}; }
    static TopologySpec empty() { return TopologySpec{Kind::Empty, 0.0, 0}; }
    static TopologySpec star() { return TopologySpec{Kind::Star, 0.0, 0}; }

    /// Throws std::invalid_argument if the parameters are out of range for a
    /// graph on `node_count` nodes (ER needs p in [0,1], BA needs 1 <= m <= n-1).
    void validate(int node_count) const;

    /// Config syntax: "er:<p>", "ba:<m>", "complete", "empty", "star".
    std::string to_string() const;
    static TopologySpec parse(std::string_view text);
};

/// Undirected simple graph over population slots 0..n-1. Immutable once
/// built; shared read access from concurrent runs is safe.
class PopulationGraph {
public:
    PopulationGraph() = default;

    /// Builds a graph from an explicit edge list. Rejects self-loops,
    /// duplicate edges, and endpoints outside 0..n-1.
    static PopulationGraph from_edges(int node_count,
                                      const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    /// Nodes adjacent to `node`, ascending; never contains `node` itself.
    const std::vector<int>& neighbors(int node) const;

    bool has_edge(int a, int b) const;

    /// All edges as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

private:
    friend PopulationGraph generate(const TopologySpec&, int, RandomStream&);

    explicit PopulationGraph(int node_count) : adjacency_(node_count) {}
    void add_edge(int a, int b);
    void sort_adjacency();

    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Draws a population network. ER visits the n(n-1)/2 node pairs in
/// lexicographic order with one uniform draw each, so the seed alone fixes
/// the edge set. BA grows from a star seed of m+1 nodes (node m linked to
/// nodes 0..m-1); each later node attaches m edges to distinct nodes chosen
/// by degree-proportional draws with duplicate rejection, giving exactly
/// m*(n-m) edges and a connected graph. Complete/Empty/Star ignore the rng;
/// the star hub is node 0.
PopulationGraph generate(const TopologySpec& spec, int node_count, RandomStream& rng);

/// Realised edges over possible edges, 2|E| / (n(n-1)). Requires n >= 2.
double density(const PopulationGraph& g);

/// True iff one component spans all nodes (BFS reachability).
bool is_connected(const PopulationGraph& g);

struct AveragePathLength {
    /// Mean shortest-path distance over connected unordered pairs; empty when
    /// the graph has no connected pairs at all.
    std::optional<double> value;
    /// Set when the graph is disconnected and the mean covers within-component
    /// pairs only.
    bool partial = false;
};

/// Requires n >= 2.
AveragePathLength average_shortest_path_length(const PopulationGraph& g);

/// ER connectedness onset, ln(n)/n. Requires n >= 2.
double er_connectivity_threshold(int node_count);

/// Edge-list text format: first line "<node count> <edge count>", then one
/// "i j" line per edge with i < j, lexicographically sorted.
std::string to_edge_list(const PopulationGraph& g);
PopulationGraph graph_from_edge_list(std::string_view text);

}  // namespace netga

#endif
