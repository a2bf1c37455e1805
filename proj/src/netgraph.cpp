#include "netga/netgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "netga/csv.hpp"

namespace netga {

TopologySpec TopologySpec::erdos_renyi(double p) {
    TopologySpec spec{Kind::ErdosRenyi, p, 0};
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("ER link probability must be in [0, 1]");
    }
    return spec;
}

TopologySpec TopologySpec::barabasi_albert(int m) {
    if (m < 1) {
        throw std::invalid_argument("BA attachment count must be >= 1");
    }
    return TopologySpec{Kind::BarabasiAlbert, 0.0, m};
}

void TopologySpec::validate(int node_count) const {
    if (node_count < 1) {
        throw std::invalid_argument("node count must be >= 1");
    }
    switch (kind) {
        case Kind::ErdosRenyi:
            if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
                throw std::invalid_argument("ER link probability must be in [0, 1]");
            }
            break;
        case Kind::BarabasiAlbert:
            if (attachment_count < 1 || attachment_count > node_count - 1) {
                throw std::invalid_argument(
                    "BA attachment count must be in [1, n-1], got m=" +
                    std::to_string(attachment_count) + " with n=" +
                    std::to_string(node_count));
            }
            break;
        case Kind::Complete:
        case Kind::Empty:
        case Kind::Star:
            break;
    }
}

std::string TopologySpec::to_string() const {
    switch (kind) {
        case Kind::ErdosRenyi: return "er:" + format_double(edge_probability);
        case Kind::BarabasiAlbert: return "ba:" + std::to_string(attachment_count);
        case Kind::Complete: return "complete";
        case Kind::Empty: return "empty";
        case Kind::Star: return "star";
    }
    throw std::invalid_argument("unknown topology kind");
}

TopologySpec TopologySpec::parse(std::string_view text) {
    if (text == "complete") return complete();
    if (text == "empty") return empty();
    if (text == "star") return star();
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const std::string_view head = text.substr(0, colon);
        const std::string arg(text.substr(colon + 1));
        try {
            if (head == "er") return erdos_renyi(std::stod(arg));
            if (head == "ba") return barabasi_albert(std::stoi(arg));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad topology parameter in \"" +
                                        std::string(text) + "\"");
        }
    }
    throw std::invalid_argument("unknown topology \"" + std::string(text) +
                                "\" (expected er:<p>|ba:<m>|complete|empty|star)");
}

void PopulationGraph::add_edge(int a, int b) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    ++edge_count_;
}

void PopulationGraph::sort_adjacency() {
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

PopulationGraph PopulationGraph::from_edges(
    int node_count, const std::vector<std::pair<int, int>>& edges) {
    if (node_count < 1) {
        throw std::invalid_argument("node count must be >= 1");
    }
    PopulationGraph g(node_count);
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (a == b) {
            throw std::invalid_argument("self-loops are not allowed");
        }
        g.add_edge(a, b);
    }
    g.sort_adjacency();
    for (const auto& list : g.adjacency_) {
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
            throw std::invalid_argument("duplicate edge in edge list");
        }
    }
    return g;
}

const std::vector<int>& PopulationGraph::neighbors(int node) const {
    if (node < 0 || node >= node_count()) {
        throw std::out_of_range("node id out of range");
    }
    return adjacency_[node];
}

bool PopulationGraph::has_edge(int a, int b) const {
    if (a < 0 || a >= node_count() || b < 0 || b >= node_count()) {
        throw std::out_of_range("node id out of range");
    }
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<int, int>> PopulationGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int i = 0; i < node_count(); ++i) {
        for (int j : adjacency_[i]) {
            if (j > i) out.emplace_back(i, j);
        }
    }
    return out;
}

namespace {

PopulationGraph generate_erdos_renyi(int n, double p, RandomStream& rng) {
    PopulationGraph g = PopulationGraph::from_edges(n, {});
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_unit() < p) edges.emplace_back(i, j);
        }
    }
    return PopulationGraph::from_edges(n, edges);
}

PopulationGraph generate_barabasi_albert(int n, int m, RandomStream& rng) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::uint64_t> degree(n, 0);
    std::uint64_t total_degree = 0;
    auto link = [&](int a, int b) {
        edges.emplace_back(a, b);
        ++degree[a];
        ++degree[b];
        total_degree += 2;
    };

    // Seed: node m linked to each of 0..m-1, so every seed node has degree >= 1.
    for (int leaf = 0; leaf < m; ++leaf) {
        link(m, leaf);
    }

    std::vector<int> picked;
    picked.reserve(m);
    for (int node = m + 1; node < n; ++node) {
        picked.clear();
        while (static_cast<int>(picked.size()) < m) {
            std::uint64_t ticket = rng.next_below(total_degree);
            int target = 0;
            while (ticket >= degree[target]) {
                ticket -= degree[target];
                ++target;
            }
            if (std::find(picked.begin(), picked.end(), target) == picked.end()) {
                picked.push_back(target);
            }
        }
        for (int target : picked) {
            link(node, target);
        }
    }
    return PopulationGraph::from_edges(n, edges);
}

PopulationGraph generate_complete(int n) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return PopulationGraph::from_edges(n, edges);
}

PopulationGraph generate_star(int n) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int leaf = 1; leaf < n; ++leaf) {
        edges.emplace_back(0, leaf);
    }
    return PopulationGraph::from_edges(n, edges);
}

/// BFS distances from `source`; unreachable nodes stay at -1.
std::vector<int> bfs_distances(const PopulationGraph& g, int source) {
    std::vector<int> dist(g.node_count(), -1);
    std::deque<int> queue;
    dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

}  // namespace

PopulationGraph generate(const TopologySpec& spec, int node_count, RandomStream& rng) {
    spec.validate(node_count);
    switch (spec.kind) {
        case TopologySpec::Kind::ErdosRenyi:
            return generate_erdos_renyi(node_count, spec.edge_probability, rng);
        case TopologySpec::Kind::BarabasiAlbert:
            return generate_barabasi_albert(node_count, spec.attachment_count, rng);
        case TopologySpec::Kind::Complete:
            return generate_complete(node_count);
        case TopologySpec::Kind::Empty:
            return PopulationGraph::from_edges(node_count, {});
        case TopologySpec::Kind::Star:
            return generate_star(node_count);
    }
    throw std::invalid_argument("unknown topology kind");
}

double density(const PopulationGraph& g) {
    const int n = g.node_count();
    if (n < 2) {
        throw std::invalid_argument("density is undefined for n < 2");
    }
    return 2.0 * static_cast<double>(g.edge_count()) /
           (static_cast<double>(n) * (n - 1));
}

bool is_connected(const PopulationGraph& g) {
    if (g.node_count() < 1) {
        throw std::invalid_argument("is_connected requires n >= 1");
    }
    const auto dist = bfs_distances(g, 0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

AveragePathLength average_shortest_path_length(const PopulationGraph& g) {
    const int n = g.node_count();
    if (n < 2) {
        throw std::invalid_argument("average path length requires n >= 2");
    }
    std::uint64_t distance_sum = 0;
    std::uint64_t connected_pairs = 0;
    for (int i = 0; i < n; ++i) {
        const auto dist = bfs_distances(g, i);
        for (int j = i + 1; j < n; ++j) {
            if (dist[j] >= 0) {
                distance_sum += static_cast<std::uint64_t>(dist[j]);
                ++connected_pairs;
            }
        }
    }
    AveragePathLength result;
    const std::uint64_t all_pairs =
        static_cast<std::uint64_t>(n) * (n - 1) / 2;
    // partial only qualifies an actual mean; with no connected pairs the
    // undefined marker already says everything
    result.partial = connected_pairs > 0 && connected_pairs < all_pairs;
    if (connected_pairs > 0) {
        result.value = static_cast<double>(distance_sum) /
                       static_cast<double>(connected_pairs);
    }
    return result;
}

double er_connectivity_threshold(int node_count) {
    if (node_count < 2) {
        throw std::invalid_argument("connectivity threshold requires n >= 2");
    }
    return std::log(static_cast<double>(node_count)) /
           static_cast<double>(node_count);
}

std::string to_edge_list(const PopulationGraph& g) {
    std::string out = std::to_string(g.node_count()) + " " +
                      std::to_string(g.edge_count()) + "\n";
    for (const auto& [i, j] : g.edges()) {
        out += std::to_string(i) + " " + std::to_string(j) + "\n";
    }
    return out;
}

PopulationGraph graph_from_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    int n = 0;
    long long declared = 0;
    if (!(in >> n >> declared) || declared < 0) {
        throw std::invalid_argument(
            "edge list must start with \"<node count> <edge count>\"");
    }
    std::vector<std::pair<int, int>> edges;
    int a = 0;
    int b = 0;
    while (in >> a >> b) {
        if (a >= b) {
            throw std::invalid_argument("edge list pairs must satisfy i < j");
        }
        edges.emplace_back(a, b);
    }
    if (!in.eof()) {
        throw std::invalid_argument("malformed edge list line");
    }
    if (static_cast<long long>(edges.size()) != declared) {
        throw std::invalid_argument("edge list declares " +
                                    std::to_string(declared) + " edges, found " +
                                    std::to_string(edges.size()));
    }
    return PopulationGraph::from_edges(n, edges);
}

}  // namespace netga
