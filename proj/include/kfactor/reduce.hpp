#pragma once

#include "kfactor/graph.hpp"
#include "kfactor/rational.hpp"
#include "kfactor/rng.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

// Density / degree constants for the reduced multigraph. beta and eps must
// stay below mu/10 when the degree facts are checked.
struct ReducedConfig {
    Rational beta{1, 20};
    Rational eps{1, 20};
    Rational mu{1, 2};
};

inline long long edges_between(const Graph& g, const Bits& a, const Bits& b) {
    long long count = 0;
    for (auto u = a.find_first(); u != Bits::npos; u = a.find_next(u))
        count += static_cast<long long>((g.neighbors(static_cast<int>(u)) & b).count());
    return count;
}

// Exact pair density e(A,B) / (|A|*|B|). A and B must be nonempty and disjoint.
inline Rational pair_density(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("pair_density: empty part");
    Bits am = make_bits(g.order(), a);
    Bits bm = make_bits(g.order(), b);
    if (am.intersects(bm)) throw std::invalid_argument("pair_density: parts overlap");
    long long e = edges_between(g, am, bm);
    return {e, static_cast<long long>(a.size()) * static_cast<long long>(b.size())};
}

// Reduced multigraph over the partition's clusters: double-edge when the pair
// density reaches 1/2 + beta, single-edge when it is at least beta (both
// boundaries closed on the left, per the displayed thresholds).
inline Multigraph2 build_reduced(const Graph& g, const Partition& p, const ReducedConfig& cfg) {
    if (p.cluster_count() < 2) throw std::invalid_argument("build_reduced: need at least 2 clusters");
    p.validate();
    Multigraph2 r(p.cluster_count());
    Rational half_plus = Rational(1, 2) + cfg.beta;
    for (int i = 0; i < p.cluster_count(); ++i)
        for (int j = i + 1; j < p.cluster_count(); ++j) {
            Rational d = pair_density(g, p.clusters[static_cast<std::size_t>(i)],
                                      p.clusters[static_cast<std::size_t>(j)]);
            int mult = 0;
            if (d >= half_plus)
                mult = 2;
            else if (d >= cfg.beta)
                mult = 1;
            r.set_mult(i, j, mult);
        }
    return r;
}

enum class DegreeFact { Multi, Simple };

struct DegreeFactReport {
    DegreeFact which;
    Rational bound;              // required degree, exact
    std::vector<int> violating;  // reduced-graph vertices below the bound
    bool pass;
};

// Multi: weighted degree >= (1+mu)k at every vertex. Simple: plain degree
// >= (1/2 + mu/2)k. Hypotheses 0 < beta,eps <= mu/10 are enforced.
inline DegreeFactReport check_fact_degree(const Multigraph2& r, const ReducedConfig& cfg,
                                          DegreeFact which) {
    if (cfg.beta <= 0 || cfg.eps <= 0 || cfg.beta > cfg.mu / 10 || cfg.eps > cfg.mu / 10)
        throw std::invalid_argument("check_fact_degree: need 0 < beta, eps <= mu/10");
    DegreeFactReport report;
    report.which = which;
    long long k = r.order();
    report.bound = which == DegreeFact::Multi ? (Rational(1) + cfg.mu) * k
                                              : (Rational(1, 2) + cfg.mu / 2) * k;
    for (int v = 0; v < r.order(); ++v) {
        long long degree = which == DegreeFact::Multi ? r.weighted_degree(v) : r.simple_degree(v);
        if (Rational(degree) < report.bound) report.violating.push_back(v);
    }
    report.pass = report.violating.empty();
    return report;
}

struct DefectEstimate {
    Rational base_density;
    Rational defect;  // max observed |d(X,Y) - d(A,B)|
    bool exhaustive;
    long long pairs_checked;
    std::vector<int> worst_x, worst_y;
};

// Largest density deviation over sub-pairs (X,Y) with |X| >= eps|A| and
// |Y| >= eps|B|. Exhaustive for parts of size <= 12; otherwise samples
// minimum-size subsets (the adversarially strongest scale) under a budget.
// Always a lower bound on the true regularity defect.
inline DefectEstimate regularity_defect(const Graph& g, const std::vector<int>& a,
                                        const std::vector<int>& b, const Rational& eps,
                                        long long sample_budget = 10000, std::uint64_t seed = 0) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("regularity_defect: parts too small");
    DefectEstimate est;
    est.base_density = pair_density(g, a, b);
    est.defect = 0;
    est.pairs_checked = 0;

    auto min_size = [&](std::size_t part) {
        Rational need = eps * static_cast<long long>(part);
        long long lo = need.numerator() / need.denominator();
        if (Rational(lo) < need) ++lo;
        return std::max<long long>(1, lo);
    };
    long long min_a = min_size(a.size());
    long long min_b = min_size(b.size());

    // per-vertex adjacency into b, in b-index space for popcount counting
    std::vector<std::uint64_t> into_b(a.size(), 0);
    bool words_ok = b.size() <= 64;
    if (words_ok)
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (g.adjacent(a[i], b[j])) into_b[i] |= (1ULL << j);

    auto record = [&](const Rational& d, std::uint64_t xmask, std::uint64_t ymask) {
        Rational dev = d > est.base_density ? d - est.base_density : est.base_density - d;
        ++est.pairs_checked;
        if (dev > est.defect) {
            est.defect = dev;
            est.worst_x.clear();
            est.worst_y.clear();
            for (std::size_t i = 0; i < a.size(); ++i)
                if (xmask & (1ULL << i)) est.worst_x.push_back(a[i]);
            for (std::size_t j = 0; j < b.size(); ++j)
                if (ymask & (1ULL << j)) est.worst_y.push_back(b[j]);
        }
    };

    if (a.size() <= 12 && b.size() <= 12) {
        est.exhaustive = true;
        std::vector<std::uint32_t> ys;
        for (std::uint32_t m = 1; m < (1u << b.size()); ++m)
            if (__builtin_popcount(m) >= min_b) ys.push_back(m);
        for (std::uint32_t mx = 1; mx < (1u << a.size()); ++mx) {
            int xc = __builtin_popcount(mx);
            if (xc < min_a) continue;
            std::vector<int> xi;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (mx & (1u << i)) xi.push_back(static_cast<int>(i));
            for (std::uint32_t my : ys) {
                long long e = 0;
                for (int i : xi) e += __builtin_popcountll(into_b[static_cast<std::size_t>(i)] & my);
                record(Rational(e, static_cast<long long>(xc) * __builtin_popcount(my)), mx, my);
            }
        }
    } else {
        est.exhaustive = false;
        Rng rng(seed);
        for (long long it = 0; it < sample_budget; ++it) {
            auto xi = rng.sample(static_cast<int>(a.size()), static_cast<int>(min_a));
            auto yi = rng.sample(static_cast<int>(b.size()), static_cast<int>(min_b));
            long long e = 0;
            for (int i : xi)
                for (int j : yi)
                    if (g.adjacent(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)])) ++e;
            Rational d(e, static_cast<long long>(xi.size()) * static_cast<long long>(yi.size()));
            Rational dev = d > est.base_density ? d - est.base_density : est.base_density - d;
            ++est.pairs_checked;
            if (dev > est.defect) {
                est.defect = dev;
                est.worst_x.clear();
                est.worst_y.clear();
                for (int i : xi) est.worst_x.push_back(a[static_cast<std::size_t>(i)]);
                for (int j : yi) est.worst_y.push_back(b[static_cast<std::size_t>(j)]);
            }
        }
    }
    (void)words_ok;
    return est;
}

}  // namespace kfactor
