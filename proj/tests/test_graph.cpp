#include "kfactor/graph.hpp"
#include "kfactor/rng.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kfactor;

TEST_CASE("graph basics") {
    Graph g(4);
    REQUIRE(g.order() == 4);
    REQUIRE(g.add_edge(0, 1));
    REQUIRE_FALSE(g.add_edge(1, 0));
    REQUIRE(g.adjacent(1, 0));
    REQUIRE(g.edge_count() == 1);
    REQUIRE_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(g.add_edge(0, 4), std::out_of_range);
}

TEST_CASE("degree accounting matches adjacency") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = fixtures::random_graph(rng, 12, 0.4);
        for (int v = 0; v < g.order(); ++v) {
            int d = 0;
            for (int u = 0; u < g.order(); ++u)
                if (u != v && g.adjacent(u, v)) ++d;
            REQUIRE(d == g.degree(v));
        }
    }
}

TEST_CASE("common neighborhood") {
    auto k5 = Graph::complete(5);
    REQUIRE(common_neighborhood(k5, {0, 1}) == std::vector<int>{2, 3, 4});

    auto c5 = fixtures::cycle(5);
    REQUIRE(common_neighborhood(c5, {0, 1}).empty());

    auto k222 = fixtures::complete_multipartite({2, 2, 2});
    // one vertex from each of the first two parts: common neighborhood is the third part
    REQUIRE(common_neighborhood(k222, {0, 2}) == std::vector<int>{4, 5});

    REQUIRE_THROWS_AS(common_neighborhood(k5, {}), std::invalid_argument);
}

TEST_CASE("components and complement components") {
    auto g = fixtures::two_cliques(3, 4);
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 2);
    REQUIRE(comps[0].size() == 3);
    REQUIRE(comps[1].size() == 4);

    auto cm = fixtures::complete_multipartite({2, 3});
    auto blocks = complement_components(cm);
    REQUIRE(blocks.size() == 2);
    REQUIRE(blocks[0] == std::vector<int>{0, 1});
    REQUIRE(blocks[1] == std::vector<int>{2, 3, 4});
}

TEST_CASE("girth") {
    REQUIRE(girth(fixtures::cycle(5)) == 5);
    REQUIRE(girth(fixtures::petersen()) == 5);
    REQUIRE(girth(Graph::complete(4)) == 3);
    Graph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    REQUIRE(girth(path) == std::numeric_limits<int>::max());
}

TEST_CASE("multigraph invariants") {
    Multigraph2 r(4);
    r.set_mult(0, 1, 2);
    r.set_mult(1, 2, 1);
    REQUIRE(r.mult(1, 0) == 2);
    REQUIRE(r.weighted_degree(1) == 3);
    REQUIRE(r.simple_degree(1) == 2);
    REQUIRE(r.double_neighbors(1).test(0));
    REQUIRE_FALSE(r.double_neighbors(1).test(2));
    REQUIRE_THROWS_AS(r.set_mult(0, 0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(r.set_mult(0, 1, 3), std::invalid_argument);
    for (int i = 0; i < r.order(); ++i) REQUIRE(r.weighted_degree(i) <= 2 * (r.order() - 1));
}

TEST_CASE("partition validation") {
    Partition p;
    p.n = 5;
    p.clusters = {{0, 1}, {2, 3}};
    p.exceptional = {4};
    REQUIRE_NOTHROW(p.validate());

    Partition overlap = p;
    overlap.clusters[1] = {1, 2, 3};
    REQUIRE_THROWS_AS(overlap.validate(), std::invalid_argument);

    Partition hole = p;
    hole.exceptional = {};
    REQUIRE_THROWS_AS(hole.validate(), std::invalid_argument);

    Partition empty_cluster = p;
    empty_cluster.clusters.push_back({});
    REQUIRE_THROWS_AS(empty_cluster.validate(), std::invalid_argument);
}

TEST_CASE("index vector definition cases") {
    Partition p;
    p.n = 7;
    p.clusters = {{0, 1, 2, 3, 4}, {5, 6}};
    p.validate();

    REQUIRE(index_vector({0, 1, 5}, p) == IndexVector{2, 1});
    REQUIRE(index_vector({}, p) == IndexVector{0, 0});
    REQUIRE(index_vector({0, 1, 2, 3, 4}, p) == IndexVector{5, 0});
}

TEST_CASE("index vector rejects exceptional vertices") {
    Partition p;
    p.n = 4;
    p.clusters = {{0, 1}, {2}};
    p.exceptional = {3};
    p.validate();
    REQUIRE_THROWS_AS(index_vector({0, 3}, p), std::invalid_argument);
}

TEST_CASE("index vector coordinates sum to set size") {
    Rng rng(11);
    Partition p;
    p.n = 12;
    p.clusters = {{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9, 10, 11}};
    p.validate();
    for (int trial = 0; trial < 50; ++trial) {
        int size = rng.uniform_int(0, 12);
        auto s = rng.sample(12, size);
        auto iv = index_vector(s, p);
        int sum = 0;
        for (int c : iv) sum += c;
        REQUIRE(sum == static_cast<int>(s.size()));
        for (int c : iv) REQUIRE(c >= 0);
    }
}

TEST_CASE("tiling covered and disjointness") {
    auto g = Graph::complete(6);
    Tiling t;
    t.host = &g;
    t.placements.push_back({Shape::K3, {0, 1, 2}, {}, {}});
    t.placements.push_back({Shape::K3, {3, 4, 5}, {}, {}});
    REQUIRE(t.pairwise_disjoint());
    REQUIRE(t.covered().count() == 6);
    REQUIRE(t.uncovered().empty());

    t.placements.push_back({Shape::K3, {0, 3, 4}, {}, {}});
    REQUIRE_FALSE(t.pairwise_disjoint());
}

TEST_CASE("rng determinism and fork independence") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
    Rng c(42);
    auto f1 = c.fork(1), f2 = c.fork(2);
    REQUIRE(f1.next_u64() != f2.next_u64());
}
