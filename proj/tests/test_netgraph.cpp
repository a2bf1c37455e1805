#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "netga/netgraph.hpp"

using namespace netga;

namespace {

PopulationGraph make(const TopologySpec& spec, int n, std::uint64_t seed) {
    RandomStream rng(seed);
    return generate(spec, n, rng);
}

/// Brute-force all-pairs shortest paths for the metric oracle tests.
struct FloydWarshall {
    std::vector<std::vector<double>> dist;

    explicit FloydWarshall(const PopulationGraph& g) {
        const int n = g.node_count();
        const double inf = std::numeric_limits<double>::infinity();
        dist.assign(n, std::vector<double>(n, inf));
        for (int i = 0; i < n; ++i) dist[i][i] = 0.0;
        for (const auto& [a, b] : g.edges()) {
            dist[a][b] = 1.0;
            dist[b][a] = 1.0;
        }
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
                }
            }
        }
    }

    AveragePathLength average() const {
        const int n = static_cast<int>(dist.size());
        double sum = 0.0;
        long pairs = 0;
        bool all_reachable = true;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (std::isinf(dist[i][j])) {
                    all_reachable = false;
                } else {
                    sum += dist[i][j];
                    ++pairs;
                }
            }
        }
        AveragePathLength result;
        if (pairs > 0) {
            result.value = sum / static_cast<double>(pairs);
            result.partial = !all_reachable;
        }
        return result;
    }
};

}  // namespace

TEST_CASE("topology spec parses and prints its config syntax") {
    CHECK(TopologySpec::parse("er:0.25").kind == TopologySpec::Kind::ErdosRenyi);
    CHECK(TopologySpec::parse("er:0.25").edge_probability == 0.25);
    CHECK(TopologySpec::parse("ba:10").attachment_count == 10);
    CHECK(TopologySpec::parse("complete").kind == TopologySpec::Kind::Complete);
    CHECK(TopologySpec::parse("empty").kind == TopologySpec::Kind::Empty);
    CHECK(TopologySpec::parse("star").kind == TopologySpec::Kind::Star);

    for (const char* text : {"er:0.25", "ba:10", "complete", "empty", "star"}) {
        CHECK(TopologySpec::parse(text).to_string() == text);
    }

    CHECK_THROWS_AS(TopologySpec::parse("ring"), std::invalid_argument);
    CHECK_THROWS_AS(TopologySpec::parse("er:"), std::invalid_argument);
    CHECK_THROWS_AS(TopologySpec::parse("ba:x"), std::invalid_argument);
}

TEST_CASE("topology spec validation") {
    CHECK_THROWS_AS(TopologySpec::erdos_renyi(-0.1).validate(50),
                    std::invalid_argument);
    CHECK_THROWS_AS(TopologySpec::erdos_renyi(1.1).validate(50),
                    std::invalid_argument);
    CHECK_THROWS_AS(TopologySpec::barabasi_albert(0).validate(50),
                    std::invalid_argument);
    CHECK_THROWS_AS(TopologySpec::barabasi_albert(50).validate(50),
                    std::invalid_argument);
    CHECK_NOTHROW(TopologySpec::barabasi_albert(49).validate(50));
    CHECK_NOTHROW(TopologySpec::erdos_renyi(0.0).validate(50));
}

TEST_CASE("erdos-renyi degenerate probabilities") {
    CHECK(make(TopologySpec::erdos_renyi(0.0), 50, 1).edge_count() == 0);
    CHECK(make(TopologySpec::erdos_renyi(1.0), 50, 1).edge_count() == 1225);
}

TEST_CASE("erdos-renyi generation is a pure function of the seed") {
    const auto spec = TopologySpec::erdos_renyi(0.3);
    const auto a = make(spec, 50, 99);
    const auto b = make(spec, 50, 99);
    CHECK(a.edges() == b.edges());
    const auto c = make(spec, 50, 100);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("erdos-renyi p=0.5 edge count concentrates around 612.5") {
    // Binomial(1225, 0.5): mean 612.5, sigma 17.5; 5 sigma band [525, 700].
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = make(TopologySpec::erdos_renyi(0.5), 50, seed);
        CHECK(g.edge_count() >= 525);
        CHECK(g.edge_count() <= 700);
    }
}

TEST_CASE("erdos-renyi per-pair edge frequency matches p") {
    const int seeds = 1000;
    const int n = 12;  // 66 pairs keeps the counting cheap
    for (double p : {0.1, 0.5, 0.9}) {
        std::vector<std::vector<int>> hits(n, std::vector<int>(n, 0));
        for (int seed = 0; seed < seeds; ++seed) {
            const auto g = make(TopologySpec::erdos_renyi(p), n,
                                static_cast<std::uint64_t>(seed));
            for (const auto& [a, b] : g.edges()) ++hits[a][b];
        }
        const double sigma = std::sqrt(seeds * p * (1.0 - p));
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                CHECK(std::abs(hits[a][b] - seeds * p) < 5.0 * sigma);
            }
        }
    }
}

TEST_CASE("barabasi-albert edge counts are exact and graphs connected") {
    for (int m : {1, 5, 10}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g =
                make(TopologySpec::barabasi_albert(m), 50, seed);
            CHECK(g.edge_count() ==
                  static_cast<std::size_t>(m * (50 - m - 1) + m));
            CHECK(is_connected(g));
        }
    }
}

TEST_CASE("barabasi-albert m=1 is a spanning tree") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = make(TopologySpec::barabasi_albert(1), 50, seed);
        // connected with n-1 edges implies acyclic
        CHECK(g.edge_count() == 49);
        CHECK(is_connected(g));
    }
}

TEST_CASE("barabasi-albert m=n-1 degenerates to a star") {
    const auto g = make(TopologySpec::barabasi_albert(49), 50, 3);
    CHECK(g.edge_count() == 49);
    CHECK(g.neighbors(49).size() == 49);
    for (int leaf = 0; leaf < 49; ++leaf) {
        CHECK(g.neighbors(leaf) == std::vector<int>{49});
    }
}

TEST_CASE("neighbors on the fixed topologies") {
    const auto star = make(TopologySpec::star(), 5, 0);
    CHECK(star.neighbors(0) == std::vector<int>{1, 2, 3, 4});
    CHECK(star.neighbors(3) == std::vector<int>{0});

    const auto empty = make(TopologySpec::empty(), 5, 0);
    CHECK(empty.neighbors(2).empty());

    const auto complete = make(TopologySpec::complete(), 4, 0);
    CHECK(complete.neighbors(1) == std::vector<int>{0, 2, 3});

    CHECK_THROWS_AS(star.neighbors(5), std::out_of_range);
    CHECK_THROWS_AS(star.neighbors(-1), std::out_of_range);
}

TEST_CASE("density of the fixed topologies") {
    CHECK(density(make(TopologySpec::complete(), 50, 0)) == 1.0);
    CHECK(density(make(TopologySpec::empty(), 50, 0)) == 0.0);
    CHECK(density(make(TopologySpec::star(), 50, 0)) ==
          doctest::Approx(0.04).epsilon(1e-15));
    CHECK_THROWS_AS(density(make(TopologySpec::empty(), 1, 0)),
                    std::invalid_argument);
}

TEST_CASE("connectivity of the fixed topologies") {
    CHECK(is_connected(make(TopologySpec::star(), 50, 0)));
    CHECK_FALSE(is_connected(make(TopologySpec::empty(), 2, 0)));
    CHECK(is_connected(make(TopologySpec::complete(), 2, 0)));
}

TEST_CASE("average shortest path on the fixed topologies") {
    const auto complete = average_shortest_path_length(
        make(TopologySpec::complete(), 50, 0));
    REQUIRE(complete.value.has_value());
    CHECK(*complete.value == 1.0);
    CHECK_FALSE(complete.partial);

    // star: 49 hub pairs at distance 1, 1176 leaf pairs at distance 2
    const auto star =
        average_shortest_path_length(make(TopologySpec::star(), 50, 0));
    REQUIRE(star.value.has_value());
    CHECK(*star.value == doctest::Approx(1.96).epsilon(1e-12));

    const auto empty =
        average_shortest_path_length(make(TopologySpec::empty(), 50, 0));
    CHECK_FALSE(empty.value.has_value());

    // two disjoint edges: defined only within components, flagged partial
    const auto split = PopulationGraph::from_edges(4, {{0, 1}, {2, 3}});
    const auto partial = average_shortest_path_length(split);
    REQUIRE(partial.value.has_value());
    CHECK(*partial.value == 1.0);
    CHECK(partial.partial);

    CHECK_THROWS_AS(
        average_shortest_path_length(make(TopologySpec::empty(), 1, 0)),
        std::invalid_argument);
}

TEST_CASE("er connectivity threshold formula") {
    CHECK(er_connectivity_threshold(50) ==
          doctest::Approx(0.07824046010856292).epsilon(1e-15));
    CHECK(er_connectivity_threshold(3) ==
          doctest::Approx(0.3662040962227033).epsilon(1e-15));
    CHECK(er_connectivity_threshold(2) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-15));
    CHECK_THROWS_AS(er_connectivity_threshold(1), std::invalid_argument);
}

TEST_CASE("metrics agree with a floyd-warshall oracle on random graphs") {
    RandomStream rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(7));
        const double p = rng.next_unit();
        const auto g = make(TopologySpec::erdos_renyi(p), n, rng.next_u64());

        const double expected_density =
            2.0 * static_cast<double>(g.edge_count()) /
            (static_cast<double>(n) * (n - 1));
        CHECK(density(g) == expected_density);

        const FloydWarshall oracle(g);
        const auto expected = oracle.average();
        const auto actual = average_shortest_path_length(g);
        CHECK(actual.value.has_value() == expected.value.has_value());
        if (actual.value && expected.value) {
            CHECK(*actual.value ==
                  doctest::Approx(*expected.value).epsilon(1e-12));
        }
        CHECK(actual.partial == expected.partial);

        bool oracle_connected = true;
        for (int j = 1; j < n && oracle_connected; ++j) {
            oracle_connected = !std::isinf(oracle.dist[0][j]);
        }
        CHECK(is_connected(g) == oracle_connected);
    }
}

TEST_CASE("edge list serialization round-trips") {
    const auto g = make(TopologySpec::erdos_renyi(0.4), 20, 77);
    const std::string text = to_edge_list(g);
    const auto back = graph_from_edge_list(text);
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edges() == g.edges());

    const auto star = make(TopologySpec::star(), 3, 0);
    CHECK(to_edge_list(star) == "3 2\n0 1\n0 2\n");

    CHECK_THROWS_AS(graph_from_edge_list(""), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 1\n1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 1\n0 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 2\n0 1\n"), std::invalid_argument);
}

TEST_CASE("from_edges rejects malformed edge sets") {
    CHECK_THROWS_AS(PopulationGraph::from_edges(3, {{0, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PopulationGraph::from_edges(3, {{0, 1}, {1, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PopulationGraph::from_edges(3, {{0, 3}}),
                    std::invalid_argument);
    const auto g = PopulationGraph::from_edges(3, {{1, 2}, {0, 1}});
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 2));
}
