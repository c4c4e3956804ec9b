#include "kfactor/cliques.hpp"
#include "kfactor/oracles.hpp"
#include "kfactor/rng.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kfactor;

TEST_CASE("clique enumeration on named graphs") {
    auto k4 = Graph::complete(4);
    auto triangles = enumerate_cliques(k4, 3);
    REQUIRE(triangles.size() == 4);

    auto c5 = fixtures::cycle(5);
    REQUIRE(enumerate_cliques(c5, 3).empty());

    auto pete = fixtures::petersen();
    REQUIRE(enumerate_cliques(pete, 2).size() == 15);
}

TEST_CASE("enumeration is lexicographic and duplicate-free") {
    Rng rng(5);
    auto g = fixtures::random_graph(rng, 10, 0.6);
    auto cliques = enumerate_cliques(g, 3);
    for (std::size_t i = 0; i + 1 < cliques.size(); ++i) REQUIRE(cliques[i] < cliques[i + 1]);
    for (const auto& c : cliques) {
        REQUIRE(std::is_sorted(c.begin(), c.end()));
        REQUIRE(oracle::detail::block_is_clique(g, c));
    }
}

TEST_CASE("enumeration count agrees with the subset-filter oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.uniform_int(1, 10);
        auto g = fixtures::random_graph(rng, n, rng.uniform01());
        int r = rng.uniform_int(1, std::max(1, n));
        auto fast = enumerate_cliques(g, r);
        REQUIRE(static_cast<long long>(fast.size()) == oracle::naive_count_cliques(g, r));
    }
}

TEST_CASE("limit caps the enumeration") {
    auto k6 = Graph::complete(6);
    REQUIRE(enumerate_cliques(k6, 3, 5).size() == 5);
    REQUIRE(enumerate_cliques(k6, 3).size() == 20);
}

TEST_CASE("cliques through a vertex") {
    auto k4 = Graph::complete(4);
    Bits all(4);
    all.set();
    auto through0 = cliques_through(k4, 0, all, 3);
    REQUIRE(through0.size() == 3);
    for (const auto& c : through0) REQUIRE(std::find(c.begin(), c.end(), 0) != c.end());
}

TEST_CASE("find_clique_in returns the lexicographically least clique") {
    auto g = fixtures::complete_multipartite({2, 2, 2});
    Bits all(6);
    all.set();
    auto c = find_clique_in(g, all, 3);
    REQUIRE(c.has_value());
    REQUIRE(*c == std::vector<int>{0, 2, 4});
    REQUIRE_FALSE(find_clique_in(g, all, 4).has_value());
}

TEST_CASE("degeneracy order removes low degree first") {
    Graph g(4);  // triangle plus pendant
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    auto order = degeneracy_order(g);
    REQUIRE(order.size() == 4);
    REQUIRE(order[0] == 3);
}

TEST_CASE("max clique agrees with enumeration") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int n = rng.uniform_int(1, 12);
        auto g = fixtures::random_graph(rng, n, 0.5);
        auto mc = max_clique(g);
        REQUIRE(oracle::detail::block_is_clique(g, mc));
        int w = static_cast<int>(mc.size());
        REQUIRE_FALSE(enumerate_cliques(g, w, 1).empty());
        if (w < n) REQUIRE(enumerate_cliques(g, w + 1, 1).empty());
    }
}
