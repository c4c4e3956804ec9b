#pragma once

#include "kfactor/absorb.hpp"
#include "kfactor/construct.hpp"
#include "kfactor/io.hpp"
#include "kfactor/oracles.hpp"
#include "kfactor/reduce.hpp"
#include "kfactor/report.hpp"
#include "kfactor/tile.hpp"
#include "kfactor/verify.hpp"

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

// The acceptance suite: one function per criterion, each returning a verdict
// with a one-line summary, plus a driver that prints per-criterion results.
namespace kfactor::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Random multigraph with weighted min degree >= ceil((1+mu)k). `sparse`
// starts from the empty multigraph so the floor is met as tightly as
// possible; otherwise a random base is repaired upward.
inline Multigraph2 random_min_degree_multigraph(Rng& rng, int k, double mu, bool sparse = false) {
    Multigraph2 r(k);
    if (!sparse)
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

inline Graph bridged_cliques(int side, int bridge) {
    Graph g = Graph::disjoint_union(Graph::complete(side), Graph::complete(side));
    for (int u = 0; u < bridge; ++u)
        for (int v = 0; v < bridge; ++v) g.add_edge(u, side + v);
    return g;
}

}  // namespace detail

// 1. factor decisions match the all-partitions oracle on 1000 random graphs
inline CriterionResult criterion_factor_oracle() {
    auto start = detail::Clock::now();
    Rng rng(20240601);
    int checked = 0, mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        int r = (i % 2 == 0) ? 3 : 4;
        int n = rng.uniform_int(r, 10);
        if (i % 2 == 0) n -= n % r;  // keep half the instances divisible
        if (n < r) n = r;
        Graph g(n);
        double p = rng.uniform01();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) g.add_edge(u, v);
        auto cert = has_kr_factor(g, r);
        bool naive = oracle::naive_has_kr_factor(g, r);
        ++checked;
        if (cert.found() != naive) ++mismatches;
        if (cert.found() && !verify_tiling(cert.tiling)) ++mismatches;
    }
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << checked << " graphs, " << mismatches << " mismatches, " << secs << "s";
    return {1, "factor decision matches the all-partitions oracle", mismatches == 0 && secs < 60.0,
            d.str(), secs};
}

// 2. the tightness instance: two cliques of orders 7 and 5
inline CriterionResult criterion_tightness() {
    auto start = detail::Clock::now();
    auto res = gen_two_cliques(12, 4);
    bool ok = min_degree(res.graph) == 4 && 4 == 12 / 2 - 2;
    auto cert = has_kr_factor(res.graph, 4);
    ok = ok && cert.outcome == FactorOutcome::NoFactor;
    for (const auto& out : evaluate_manifest(res.graph, res.manifest))
        if (out.claim.kind == ClaimKind::Exact && !out.pass) ok = false;
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << "min degree " << min_degree(res.graph) << ", factor " << to_string(cert.outcome) << ", "
      << secs << "s";
    return {2, "tightness instance (two cliques, n=12, r=4)", ok && secs < 1.0, d.str(), secs};
}

// 3. the deficiency bound |B| < 1/mu for maximum {K2=, K3}-tilings
inline CriterionResult criterion_deficiency() {
    auto start = detail::Clock::now();
    long long instances = 0, violations = 0;
    std::size_t worst_b = 0;
    for (double mu : {0.3, 0.5}) {
        for (int k = 6; k <= 14; ++k) {
            Rng rng(9000 + k + static_cast<int>(mu * 10));
            for (int trial = 0; trial < 200; ++trial) {
                auto r = detail::random_min_degree_multigraph(rng, k, mu, trial % 2 == 1);
                auto rep = max_k2k3_tiling(r, mu);
                ++instances;
                std::size_t b = rep.uncovered.size();
                worst_b = std::max(worst_b, b);
                bool bound = static_cast<double>(b) * mu < 1.0;
                // the uncovered set spans no double-edge and no triangle
                bool independent = true;
                for (std::size_t x = 0; x < rep.uncovered.size() && independent; ++x)
                    for (std::size_t y = x + 1; y < rep.uncovered.size() && independent; ++y) {
                        if (r.mult(rep.uncovered[x], rep.uncovered[y]) == 2) independent = false;
                        for (std::size_t z = y + 1; z < rep.uncovered.size() && independent; ++z)
                            if (r.mult(rep.uncovered[x], rep.uncovered[y]) >= 1 &&
                                r.mult(rep.uncovered[x], rep.uncovered[z]) >= 1 &&
                                r.mult(rep.uncovered[y], rep.uncovered[z]) >= 1)
                                independent = false;
                    }
                if (!bound || !independent) ++violations;
            }
        }
    }
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << instances << " instances, " << violations << " violations, worst |B| " << worst_b << ", "
      << secs << "s";
    return {3, "deficiency bound |B| < 1/mu for exact k2/k3 tilings",
            violations == 0 && secs < 300.0, d.str(), secs};
}

// 4. closed-form evaluators, exact rational equality
inline CriterionResult criterion_evaluators() {
    auto start = detail::Clock::now();
    bool ok = eval_f_rt(5) == Rational(1, 2) && eval_f_rt(6) == Rational(4, 7) &&
              eval_threshold(5) == Rational(4, 7) && eval_threshold(7) == Rational(7, 10) &&
              eval_rt_edge_bound(6, 10) == Rational(200, 7);
    double secs = detail::elapsed(start);
    return {4, "closed-form evaluators", ok, ok ? "all five exact values match" : "mismatch", secs};
}

// 5. the r=5, n=70 construction: K6-free, meets-pattern, no factor, degree
inline CriterionResult criterion_prop17() {
    auto start = detail::Clock::now();
    auto res = gen_prop_1_7(5, 70, 3);
    std::ostringstream d;
    bool ok = true;

    auto k6 = is_ks_free(res.graph, 6);
    if (!k6.free) ok = false;
    d << "k6-free " << (k6.free ? "yes" : "NO");

    // every K5 meets V1 u V2 in exactly 3 vertices
    const auto* v12 = res.manifest.find_set("V12");
    Bits mask = make_bits(70, *v12);
    long long k5_count = 0, meet_violations = 0;
    Bits all(70);
    all.set();
    std::vector<int> scratch;
    kfactor::detail::clique_dfs(res.graph, scratch, all, 5, [&](const std::vector<int>& c) {
        ++k5_count;
        int meet = 0;
        for (int v : c)
            if (mask.test(static_cast<std::size_t>(v))) ++meet;
        if (meet != 3) ++meet_violations;
        return true;
    });
    if (meet_violations > 0 || k5_count == 0) ok = false;
    d << ", k5 count " << k5_count << " (bad meets " << meet_violations << ")";

    auto cert = has_kr_factor(res.graph, 5);
    if (cert.outcome != FactorOutcome::NoFactor) ok = false;
    d << ", factor " << to_string(cert.outcome);

    int delta = min_degree(res.graph);
    // within 0.1*n of (4/7)*70 = 40
    if (delta < 33 || delta > 47) ok = false;
    d << ", min degree " << delta << " (target 40 +- 7)";

    Rational cross = pair_density(res.graph, *res.manifest.find_set("V1"),
                                  *res.manifest.find_set("V2"));
    d << ", cross density " << to_string(cross);

    double secs = detail::elapsed(start);
    d << ", " << secs << "s";
    return {5, "prop17 instance (r=5, n=70)", ok && secs < 600.0, d.str(), secs};
}

// 6. sphere construction: at least one of 20 seeds passes all exact checks
inline CriterionResult criterion_sphere_construction() {
    auto start = detail::Clock::now();
    int passing = 0;
    int first_pass = -1;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto res = gen_bollobas_erdos(30, 8, 0.1, seed);
        const auto& v1 = *res.manifest.find_set("V1");
        const auto& v2 = *res.manifest.find_set("V2");
        auto side1 = res.graph.induced(v1);
        auto side2 = res.graph.induced(v2);
        bool tf = is_ks_free(side1, 3).free && is_ks_free(side2, 3).free;
        bool k4 = is_ks_free(res.graph, 4).free;
        bool dens = pair_density(res.graph, v1, v2) >= Rational(7, 20);
        if (tf && k4 && dens) {
            ++passing;
            if (first_pass < 0) first_pass = static_cast<int>(seed);
        }
    }
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << passing << "/20 seeds pass (first " << first_pass << "), " << secs << "s";
    return {6, "sphere construction sweep (n_half=30, dim=8, theta=0.1)",
            passing >= 1 && secs < 300.0, d.str(), secs};
}

// 7. absorbing-set assembly on K20 with exhaustive verification
inline CriterionResult criterion_absorption() {
    auto start = detail::Clock::now();
    auto k20 = Graph::complete(20);
    auto rep = build_absorbing_set(k20, 4, 0.5, 4.0 / 20.0, 1, 11);
    bool ok = rep.failure_stage.empty() && rep.size_ok;
    for (const auto& rec : rep.family)
        if (!is_absorber(k20, rec.target, rec.body, 4, rec.t)) ok = false;
    auto check = is_absorbing_set(k20, rep.absorbing_set, 4, 4.0 / 20.0);
    if (!(check.exhaustive && check.verdict == AbsorbVerdict::Proven)) ok = false;
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << "|A| = " << rep.absorbing_set.size() << ", verdict " << to_string(check.verdict) << " ("
      << check.checked << " leftovers checked), " << secs << "s";
    return {7, "absorbing set on K20 proven by exhaustive leftovers", ok && secs < 120.0, d.str(),
            secs};
}

// 8. robust vectors and transferrals on the planted bridge instance
inline CriterionResult criterion_transferrals() {
    auto start = detail::Clock::now();
    bool ok = true;
    std::ostringstream d;

    auto bridged = detail::bridged_cliques(10, 4);
    Partition p;
    p.n = 20;
    p.clusters = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11, 12, 13, 14, 15, 16, 17, 18, 19}};
    auto set = robust_vectors(bridged, p, 4, 0.04, RobustMode::Certificate);
    bool have22 = set.contains({2, 2});
    bool have13 = set.contains({1, 3}) || set.contains({3, 1});
    auto tr = find_transferral(set);
    if (!(have22 && have13 && tr.has_value())) ok = false;
    d << "bridge: (2,2) " << (have22 ? "yes" : "NO") << ", (1,3)-type " << (have13 ? "yes" : "NO")
      << ", transferral " << (tr ? "found" : "NONE");

    auto split = Graph::disjoint_union(Graph::complete(10), Graph::complete(10));
    Partition q = p;
    auto none_set = robust_vectors(split, q, 4, 0.04, RobustMode::Certificate);
    if (find_transferral(none_set).has_value()) ok = false;
    d << "; disjoint cliques: transferral "
      << (find_transferral(none_set).has_value() ? "FOUND" : "none");

    // exact-small cross-check at n = 16
    auto small = detail::bridged_cliques(8, 4);
    Partition sp;
    sp.n = 16;
    sp.clusters = {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}};
    auto cert = robust_vectors(small, sp, 4, 0.0625, RobustMode::Certificate);
    auto exact = robust_vectors(small, sp, 4, 0.0625, RobustMode::ExactSmall);
    int unsound = 0;
    for (const auto& vec : cert.vectors())
        if (!exact.contains(vec)) ++unsound;
    if (unsound > 0 || cert.certificates.empty()) ok = false;
    d << "; exact-small cross-check: " << cert.certificates.size() << " certified, " << unsound
      << " unsound";

    double secs = detail::elapsed(start);
    d << ", " << secs << "s";
    return {8, "transferral pipeline on planted instances", ok && secs < 120.0, d.str(), secs};
}

// 9. end-to-end pipeline recovers a verified factor on the clique blow-up
inline CriterionResult criterion_pipeline() {
    auto start = detail::Clock::now();
    // complete 4-partite K_{8,8,8,8} with parts made cliques (n = 32)
    Graph g = Graph::complete(32);
    Partition p;
    p.n = 32;
    for (int c = 0; c < 4; ++c) {
        std::vector<int> cl;
        for (int i = 0; i < 8; ++i) cl.push_back(8 * c + i);
        p.clusters.push_back(cl);
    }
    ReducedConfig cfg;
    auto res = almost_factor_pipeline(g, p, cfg, 4);
    Tiling full = std::move(res.tiling);
    bool ok = true;
    if (!res.uncovered.empty()) {
        // residual exact solve on the leftover vertices
        Bits rest = make_bits(32, res.uncovered);
        auto cert = has_kr_factor_in(g, rest, 4);
        if (cert.found())
            for (const auto& pl : cert.tiling.placements) full.placements.push_back(pl);
        else
            ok = false;
    }
    if (full.covered().count() != 32) ok = false;
    if (!verify_tiling(full)) ok = false;
    double secs = detail::elapsed(start);
    std::ostringstream d;
    d << "pipeline covered " << 32 - res.uncovered.size() << "/32, q1 gadgets " << res.q1_count
      << ", residual " << res.uncovered.size() << ", factor verified "
      << (ok ? "yes" : "NO") << ", " << secs << "s";
    return {9, "end-to-end pipeline on the clique blow-up (n=32, r=4)", ok && secs < 120.0,
            d.str(), secs};
}

// 10. repeated seeded runs are byte-identical
inline CriterionResult criterion_determinism() {
    auto start = detail::Clock::now();
    bool ok = true;
    std::ostringstream d;

    auto er1 = gen_er_like(40, 0.4, 0.3, 5);
    auto er2 = gen_er_like(40, 0.4, 0.3, 5);
    if (serialize(er1.graph) != serialize(er2.graph) ||
        serialize(er1.manifest) != serialize(er2.manifest))
        ok = false;

    auto be1 = gen_bollobas_erdos(20, 8, 0.1, 5);
    auto be2 = gen_bollobas_erdos(20, 8, 0.1, 5);
    if (serialize(be1.graph) != serialize(be2.graph)) ok = false;

    auto p171 = gen_prop_1_7(5, 35, 4);
    auto p172 = gen_prop_1_7(5, 35, 4);
    if (serialize(p171.graph) != serialize(p172.graph)) ok = false;

    Rng rng(77);
    auto r = detail::random_min_degree_multigraph(rng, 12, 0.3);
    auto t1 = local_k2k3_tiling(r, 9);
    auto t2 = local_k2k3_tiling(r, 9);
    if (serialize(t1.tiling) != serialize(t2.tiling)) ok = false;

    auto k20 = Graph::complete(20);
    auto a1 = build_absorbing_set(k20, 4, 0.5, 0.2, 1, 13);
    auto a2 = build_absorbing_set(k20, 4, 0.5, 0.2, 1, 13);
    if (a1.absorbing_set != a2.absorbing_set || a1.family.size() != a2.family.size()) ok = false;

    double secs = detail::elapsed(start);
    d << "generators, tilings and absorbing sets replayed bit-identically: "
      << (ok ? "yes" : "NO") << ", " << secs << "s";
    return {10, "determinism of every seeded path", ok, d.str(), secs};
}

inline std::vector<CriterionResult> run_acceptance(std::ostream& progress, int only = 0) {
    std::vector<CriterionResult> results;
    auto add = [&](CriterionResult r) {
        progress << "acceptance " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL")
                 << " -- " << r.detail << "\n";
        results.push_back(std::move(r));
    };
    auto want = [&](int id) { return only == 0 || only == id; };
    if (want(1)) add(criterion_factor_oracle());
    if (want(2)) add(criterion_tightness());
    if (want(3)) add(criterion_deficiency());
    if (want(4)) add(criterion_evaluators());
    if (want(5)) add(criterion_prop17());
    if (want(6)) add(criterion_sphere_construction());
    if (want(7)) add(criterion_absorption());
    if (want(8)) add(criterion_transferrals());
    if (want(9)) add(criterion_pipeline());
    if (want(10)) add(criterion_determinism());
    return results;
}

}  // namespace kfactor::acceptance
