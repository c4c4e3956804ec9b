#include "kfactor/tile.hpp"
#include "kfactor/construct.hpp"

#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kfactor;

namespace {

// test instance family: random multiplicities repaired up to the weighted
// degree floor ceil((1+mu)k)
Multigraph2 random_min_degree_multigraph(Rng& rng, int k, double mu) {
    Multigraph2 r(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double roll = rng.uniform01();
            r.set_mult(i, j, roll < 0.3 ? 0 : (roll < 0.65 ? 1 : 2));
        }
    int target = static_cast<int>(std::ceil((1.0 + mu) * k));
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < k; ++i) {
            while (r.weighted_degree(i) < target) {
                int j = rng.uniform_int(0, k - 2);
                if (j >= i) ++j;
                if (r.mult(i, j) < 2) {
                    r.set_mult(i, j, r.mult(i, j) + 1);
                    changed = true;
                }
            }
        }
    }
    return r;
}

long long simple_edges_within(const Multigraph2& r, const std::vector<int>& verts) {
    long long e = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (r.mult(verts[i], verts[j]) >= 1) ++e;
    return e;
}

bool spans_double_or_triangle(const Multigraph2& r, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (r.mult(verts[i], verts[j]) == 2) return true;
            for (std::size_t l = j + 1; l < verts.size(); ++l)
                if (r.mult(verts[i], verts[j]) >= 1 && r.mult(verts[i], verts[l]) >= 1 &&
                    r.mult(verts[j], verts[l]) >= 1)
                    return true;
        }
    return false;
}

}  // namespace

TEST_CASE("exact k2k3 tiling on tiny instances") {
    SECTION("all-double triangle") {
        Multigraph2 r(3);
        r.set_mult(0, 1, 2);
        r.set_mult(0, 2, 2);
        r.set_mult(1, 2, 2);
        auto rep = max_k2k3_tiling(r);
        REQUIRE(rep.uncovered.empty());
        REQUIRE(rep.tiling.placements.size() == 1);
        REQUIRE(rep.tiling.placements[0].shape == Shape::K3);
        REQUIRE(verify_tiling(rep.tiling));
    }
    SECTION("double edge plus isolated vertex") {
        Multigraph2 r(3);
        r.set_mult(0, 1, 2);
        auto rep = max_k2k3_tiling(r);
        REQUIRE(rep.tiling.placements.size() == 1);
        REQUIRE(rep.tiling.placements[0].shape == Shape::K2Double);
        REQUIRE(rep.uncovered == std::vector<int>{2});
    }
    SECTION("triangles may use single edges") {
        Multigraph2 r(3);
        r.set_mult(0, 1, 1);
        r.set_mult(0, 2, 1);
        r.set_mult(1, 2, 1);
        auto rep = max_k2k3_tiling(r);
        REQUIRE(rep.uncovered.empty());
        REQUIRE(rep.tiling.placements[0].shape == Shape::K3);
    }
    SECTION("cap points to the local variant") {
        Multigraph2 r(17);
        REQUIRE_THROWS_AS(max_k2k3_tiling(r), InstanceTooLarge);
    }
}

TEST_CASE("deficiency bound |B| < 1/mu on sampled instances") {
    Rng rng(404);
    for (double mu : {0.3, 0.5}) {
        for (int k = 6; k <= 10; ++k) {
            for (int trial = 0; trial < 20; ++trial) {
                auto r = random_min_degree_multigraph(rng, k, mu);
                auto rep = max_k2k3_tiling(r, mu, 0.5);
                REQUIRE(rep.mu_bound_ok);
                REQUIRE(static_cast<double>(rep.uncovered.size()) * mu < 1.0);
                // uncovered set spans no double-edge and no triangle
                REQUIRE_FALSE(spans_double_or_triangle(r, rep.uncovered));
                long long b = static_cast<long long>(rep.uncovered.size());
                REQUIRE(simple_edges_within(r, rep.uncovered) <= b * b / 4);
            }
        }
    }
}

namespace {

// independent brute force: try every tiling by recursion on the lowest vertex
int brute_max_k2k3_coverage(const Multigraph2& r, std::uint32_t mask) {
    if (mask == 0) return 0;
    int v = __builtin_ctz(mask);
    std::uint32_t rest = mask & (mask - 1);
    int best = brute_max_k2k3_coverage(r, rest);  // leave v out
    for (int u = 0; u < r.order(); ++u) {
        if (!(rest & (1u << u))) continue;
        if (r.mult(v, u) == 2)
            best = std::max(best, 2 + brute_max_k2k3_coverage(r, rest & ~(1u << u)));
        for (int w = u + 1; w < r.order(); ++w) {
            if (!(rest & (1u << w))) continue;
            if (r.mult(v, u) >= 1 && r.mult(v, w) >= 1 && r.mult(u, w) >= 1)
                best = std::max(best,
                                3 + brute_max_k2k3_coverage(r, rest & ~(1u << u) & ~(1u << w)));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("exact tiling coverage matches a brute-force scan at small k") {
    Rng rng(515);
    for (int trial = 0; trial < 40; ++trial) {
        int k = rng.uniform_int(2, 7);
        Multigraph2 r(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double roll = rng.uniform01();
                r.set_mult(i, j, roll < 0.45 ? 0 : (roll < 0.75 ? 1 : 2));
            }
        auto rep = max_k2k3_tiling(r);
        int covered = k - static_cast<int>(rep.uncovered.size());
        REQUIRE(covered == brute_max_k2k3_coverage(r, (1u << k) - 1));
        REQUIRE(verify_tiling(rep.tiling));
    }
}

TEST_CASE("local tiling reaches full coverage on the double-edge path") {
    Multigraph2 r(4);
    r.set_mult(0, 1, 2);
    r.set_mult(1, 2, 2);
    r.set_mult(2, 3, 2);
    auto rep = local_k2k3_tiling(r, 1);
    REQUIRE(rep.uncovered.empty());
    REQUIRE(rep.tiling.placements.size() == 2);
    REQUIRE(k2k3_move_stable(r, rep.tiling));
}

TEST_CASE("local tiling output is always move-stable and disjoint") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int k = rng.uniform_int(4, 12);
        auto r = random_min_degree_multigraph(rng, k, 0.3);
        auto rep = local_k2k3_tiling(r, static_cast<std::uint64_t>(trial));
        REQUIRE(rep.tiling.pairwise_disjoint());
        REQUIRE(verify_tiling(rep.tiling));
        REQUIRE(k2k3_move_stable(r, rep.tiling));
        // paired run: local never beats the exact optimum
        auto exact = max_k2k3_tiling(r);
        REQUIRE(rep.uncovered.size() >= exact.uncovered.size());
    }
}

TEST_CASE("q1 embedding on a complete host") {
    auto g = Graph::complete(8);
    std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7};
    auto em = embed_q1(g, v1, v2, 4, Rational(1, 20));
    REQUIRE(em.ok);
    REQUIRE(check_q1(g, em.gadget, 4));
    // h1 has exactly 2 vertices in v1
    int in_v1 = 0;
    for (int x : em.gadget.h1)
        if (x <= 3) ++in_v1;
    REQUIRE(in_v1 == 2);
    REQUIRE(em.gadget.u1.size() == 4);
    REQUIRE(em.gadget.u2.size() == 4);
}

TEST_CASE("q1 embedding fails at the common-neighborhood step without cross edges") {
    auto g = fixtures::two_cliques(4, 4);
    std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7};
    auto em = embed_q1(g, v1, v2, 4, Rational(1, 20));
    REQUIRE_FALSE(em.ok);
    REQUIRE(em.failed_step == "link-clique-1");
}

TEST_CASE("q1 embedding rejects undersized parts") {
    auto g = Graph::complete(8);
    std::vector<int> v1{0, 1, 2}, v2{4, 5, 6, 7};
    auto em = embed_q1(g, v1, v2, 4, Rational(1, 20));
    REQUIRE_FALSE(em.ok);
    REQUIRE(em.failed_step == "part-too-small");
}

TEST_CASE("q2 embedding needs cliques inside the parts") {
    SECTION("independent parts fail at the in-part clique step") {
        auto g = fixtures::complete_multipartite({4, 4, 4});
        std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7}, v3{8, 9, 10, 11};
        auto em = embed_q2(g, v1, v2, v3, 4, Rational(1, 20));
        REQUIRE_FALSE(em.ok);
        REQUIRE(em.failed_step == "link-clique-1");
    }
    SECTION("clique parts succeed") {
        auto g = Graph::complete(12);
        std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7}, v3{8, 9, 10, 11};
        auto em = embed_q2(g, v1, v2, v3, 4, Rational(1, 20));
        REQUIRE(em.ok);
        REQUIRE(check_q2(g, em.gadget, 4));
        for (const auto* h : {&em.gadget.h1, &em.gadget.h2, &em.gadget.h3})
            REQUIRE(h->size() == 4);
    }
}

TEST_CASE("q2 embedding on seeded dense parts is a stable fixture") {
    // three dense random parts: outcome is deterministic for the fixed seed,
    // and whenever an embedding exists its invariants re-verify
    Rng rng(2024);
    Graph g(15);
    for (int u = 0; u < 15; ++u)
        for (int v = u + 1; v < 15; ++v)
            if (rng.bernoulli(0.8)) g.add_edge(u, v);
    std::vector<int> v1{0, 1, 2, 3, 4}, v2{5, 6, 7, 8, 9}, v3{10, 11, 12, 13, 14};
    auto first = embed_q2(g, v1, v2, v3, 4, Rational(1, 20));
    auto second = embed_q2(g, v1, v2, v3, 4, Rational(1, 20));
    REQUIRE(first.ok == second.ok);
    if (first.ok) {
        REQUIRE(first.gadget.h1 == second.gadget.h1);
        REQUIRE(check_q2(g, first.gadget, 4));
    } else {
        REQUIRE(first.failed_step == second.failed_step);
        REQUIRE_FALSE(first.failed_step.empty());
    }
}

TEST_CASE("gadget checks reject corrupted gadgets") {
    auto g = Graph::complete(8);
    std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7};
    auto em = embed_q1(g, v1, v2, 4, Rational(1, 20));
    REQUIRE(em.ok);

    auto dup = em.gadget;
    dup.h2 = dup.h1;
    REQUIRE_FALSE(check_q1(g, dup, 4));

    auto skew = em.gadget;
    // move one u2 vertex into u1: some |h meet u1| becomes 3
    skew.u1.push_back(skew.u2.back());
    skew.u2.pop_back();
    REQUIRE_FALSE(check_q1(g, skew, 4));
}

TEST_CASE("gadget placements round-trip through verify_tiling") {
    auto g = Graph::complete(8);
    std::vector<int> v1{0, 1, 2, 3}, v2{4, 5, 6, 7};
    auto em = embed_q1(g, v1, v2, 4, Rational(1, 20));
    REQUIRE(em.ok);
    Tiling t;
    t.host = &g;
    t.placements.push_back(to_placement(em.gadget));
    REQUIRE(verify_tiling(t));
    t.placements[0].kr_copies[1] = t.placements[0].kr_copies[0];
    REQUIRE_FALSE(verify_tiling(t));
}

TEST_CASE("pipeline recovers a full factor on a complete host") {
    auto g = Graph::complete(16);
    Partition p;
    p.n = 16;
    p.clusters = {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}};
    ReducedConfig cfg;
    auto res = almost_factor_pipeline(g, p, cfg, 4);
    REQUIRE(res.uncovered.empty());
    REQUIRE(res.tiling.placements.size() == 4);
    REQUIRE(verify_tiling(res.tiling));
    REQUIRE(res.q1_count == 2);
}

TEST_CASE("pipeline drives q2 gadgets through reduced triangles") {
    // three clusters of a complete host reduce to an all-double triangle;
    // the exact tiling picks the K3 and the q2 embedder finishes the factor
    auto g = Graph::complete(12);
    Partition p;
    p.n = 12;
    p.clusters = {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}};
    ReducedConfig cfg;
    auto res = almost_factor_pipeline(g, p, cfg, 4);
    REQUIRE(res.q2_count == 1);
    REQUIRE(res.q1_count == 0);
    REQUIRE(res.uncovered.empty());
    REQUIRE(res.tiling.placements.size() == 3);
    REQUIRE(verify_tiling(res.tiling));
}

TEST_CASE("pipeline leaves unreachable exceptional vertices uncovered") {
    auto g = Graph::disjoint_union(Graph::complete(16), Graph::complete(1));
    Partition p;
    p.n = 17;
    p.clusters = {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}};
    p.exceptional = {16};
    ReducedConfig cfg;
    auto res = almost_factor_pipeline(g, p, cfg, 4);
    REQUIRE(std::find(res.uncovered.begin(), res.uncovered.end(), 16) != res.uncovered.end());
}

TEST_CASE("pipeline on the prop17 instance cannot claim full coverage") {
    auto gen = gen_prop_1_7(5, 35, 3);
    Partition p;
    p.n = 35;
    p.clusters = {*gen.manifest.find_set("V1"), *gen.manifest.find_set("V2"),
                  *gen.manifest.find_set("V3")};
    ReducedConfig cfg;
    auto res = almost_factor_pipeline(gen.graph, p, cfg, 5);
    REQUIRE_FALSE(res.uncovered.empty());
    REQUIRE(verify_tiling(res.tiling));
}
