#include "kfactor/io.hpp"
#include "kfactor/rng.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kfactor;

TEST_CASE("parse triangle") {
    auto g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    REQUIRE(g.order() == 3);
    REQUIRE(g.edge_count() == 3);
    REQUIRE(g.adjacent(0, 2));
}

TEST_CASE("parse edgeless graph") {
    auto g = parse_graph("p edge 2 0\n");
    REQUIRE(g.order() == 2);
    REQUIRE(g.degree(0) == 0);
    REQUIRE(g.degree(1) == 0);
}

TEST_CASE("parse rejects bad input with line numbers") {
    SECTION("vertex out of range") {
        try {
            parse_graph("p edge 3 1\ne 1 4\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line == 2);
            REQUIRE(std::string(e.what()).find("out of range") != std::string::npos);
        }
    }
    SECTION("loop") {
        try {
            parse_graph("p edge 3 1\ne 2 2\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line == 2);
            REQUIRE(std::string(e.what()).find("loop") != std::string::npos);
        }
    }
    SECTION("duplicate edge") {
        REQUIRE_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\ne 2 1\n"), ParseError);
    }
    SECTION("malformed header") {
        REQUIRE_THROWS_AS(parse_graph("p graph 3 1\ne 1 2\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph("e 1 2\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph(""), ParseError);
    }
    SECTION("edge count mismatch") {
        REQUIRE_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\n"), ParseError);
        REQUIRE_THROWS_AS(parse_graph("p edge 3 0\ne 1 2\n"), ParseError);
    }
}

TEST_CASE("comments are skipped") {
    auto g = parse_graph("c a triangle\np edge 3 3\nc body\ne 1 2\ne 2 3\ne 1 3\n");
    REQUIRE(g.edge_count() == 3);
}

TEST_CASE("graph round trip is the identity") {
    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = fixtures::random_graph(rng, rng.uniform_int(0, 14), 0.4);
        auto text = serialize(g);
        auto back = parse_graph(text);
        REQUIRE(back == g);
        REQUIRE(serialize(back) == text);
    }
}

TEST_CASE("multigraph round trip and validation") {
    Multigraph2 r(4);
    r.set_mult(0, 1, 2);
    r.set_mult(0, 2, 1);
    r.set_mult(2, 3, 2);
    auto back = parse_multigraph(serialize(r));
    REQUIRE(back == r);

    REQUIRE_THROWS_AS(parse_multigraph("p multi 3 1\ne 1 2 3\n"), ParseError);
    REQUIRE_THROWS_AS(parse_multigraph("p multi 3 1\ne 1 1 1\n"), ParseError);
}

TEST_CASE("partition round trip") {
    Partition p;
    p.n = 6;
    p.clusters = {{0, 1, 2}, {3, 4}};
    p.exceptional = {5};
    p.validate();
    auto back = parse_partition(serialize(p));
    REQUIRE(back.clusters == p.clusters);
    REQUIRE(back.exceptional == p.exceptional);
    REQUIRE(back.n == 6);

    SECTION("overlap rejected") {
        REQUIRE_THROWS_AS(parse_partition("p part 4 2\n1 2\n2 3 4\n"), ParseError);
    }
    SECTION("uncovered vertex rejected") {
        REQUIRE_THROWS_AS(parse_partition("p part 4 2\n1 2\n3\n"), ParseError);
    }
}

TEST_CASE("tiling file round trip") {
    auto g = Graph::complete(8);
    Tiling t;
    t.host = &g;
    t.placements.push_back({Shape::Kr, {0, 1, 2, 3}, {}, {}});
    t.placements.push_back({Shape::K3, {4, 5, 6}, {}, {}});
    auto text = serialize(t);
    REQUIRE(text == "kr 1 2 3 4\nk3 5 6 7\n");
    auto back = parse_tiling(text, &g);
    REQUIRE(back.placements.size() == 2);
    REQUIRE(back.placements[0].shape == Shape::Kr);
    REQUIRE(back.placements[1].vertices == std::vector<int>{4, 5, 6});
    REQUIRE_THROWS_AS(parse_tiling("blob 1 2\n", &g), ParseError);
}
