#pragma once

#include "kfactor/graph.hpp"
#include "kfactor/rational.hpp"
#include "kfactor/reduce.hpp"
#include "kfactor/rng.hpp"
#include "kfactor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Closed-form evaluators

// (s-3)/(s-1) for odd s, (3s-10)/(3s-4) for even s.
inline Rational eval_f_rt(long long s) {
    if (s < 3) throw std::invalid_argument("f_rt needs s >= 3");
    if (s % 2 == 1) return {s - 3, s - 1};
    return {3 * s - 10, 3 * s - 4};
}

// 1 - 6/(3r-1), the degree threshold for odd r >= 5.
inline Rational eval_threshold(long long r) {
    if (r < 5 || r % 2 == 0) throw std::invalid_argument("threshold needs odd r >= 5");
    return Rational(1) - Rational(6, 3 * r - 1);
}

// Leading term (3l-10)/(6l-8) * n^2 of the edge bound, even l >= 4.
inline Rational eval_rt_edge_bound(long long ell, long long n) {
    if (ell < 4 || ell % 2 == 1) throw std::invalid_argument("rt_edge_bound needs even ell >= 4");
    return Rational(3 * ell - 10, 6 * ell - 8) * (n * n);
}

// ---------------------------------------------------------------------------
// Construction manifests

enum class ClaimKind { Exact, Stat, Report };

inline std::string to_string(ClaimKind k) {
    switch (k) {
        case ClaimKind::Exact: return "exact";
        case ClaimKind::Stat: return "stat";
        case ClaimKind::Report: return "report";
    }
    return "?";
}

struct ManifestClaim {
    ClaimKind kind;
    std::string op;                  // verify-module operation
    std::vector<std::string> args;   // op-specific arguments
};

struct ConstructionManifest {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::vector<int>>> sets;  // named vertex sets
    std::vector<ManifestClaim> claims;

    void add_param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void add_param(const std::string& key, long long value) { params.emplace_back(key, std::to_string(value)); }
    void add_set(const std::string& name_, std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        sets.emplace_back(name_, std::move(verts));
    }
    void claim(ClaimKind kind, const std::string& op, std::vector<std::string> args) {
        claims.push_back({kind, op, std::move(args)});
    }
    const std::vector<int>* find_set(const std::string& name_) const {
        for (const auto& [k, v] : sets)
            if (k == name_) return &v;
        return nullptr;
    }
};

inline std::string serialize(const ConstructionManifest& m) {
    std::ostringstream out;
    out << "manifest 1\n";
    out << "name " << m.name << "\n";
    for (const auto& [k, v] : m.params) out << "param " << k << " " << v << "\n";
    for (const auto& [k, verts] : m.sets) {
        out << "set " << k;
        for (int v : verts) out << " " << v + 1;
        out << "\n";
    }
    for (const auto& c : m.claims) {
        out << "claim " << to_string(c.kind) << " " << c.op;
        for (const auto& a : c.args) out << " " << a;
        out << "\n";
    }
    return out.str();
}

ConstructionManifest parse_manifest(const std::string& text);  // defined below

// ---------------------------------------------------------------------------
// Claim evaluation (the verify module is the authority; generators are not)

struct EvalOptions {
    int alpha_cap = 60;              // report-alpha computed only up to this order
    std::uint64_t factor_nodes = 0;  // node budget for factor claims (0 = unbounded)
};

struct ClaimOutcome {
    ManifestClaim claim;
    bool applicable = true;  // false when skipped (e.g. alpha over cap)
    bool pass = true;        // report claims always pass
    std::string observed;
};

namespace detail {

inline int claim_int(const ManifestClaim& c, std::size_t i) {
    if (i >= c.args.size()) throw std::invalid_argument("claim " + c.op + ": missing argument");
    return std::stoi(c.args[i]);
}

inline const std::vector<int>& claim_set(const ConstructionManifest& m, const ManifestClaim& c,
                                         std::size_t i) {
    if (i >= c.args.size()) throw std::invalid_argument("claim " + c.op + ": missing set argument");
    auto* s = m.find_set(c.args[i]);
    if (!s) throw std::invalid_argument("claim " + c.op + ": unknown set '" + c.args[i] + "'");
    return *s;
}

inline bool compare(const std::string& cmp, const Rational& lhs, const Rational& rhs) {
    if (cmp == "eq") return lhs == rhs;
    if (cmp == "ge") return lhs >= rhs;
    if (cmp == "le") return lhs <= rhs;
    throw std::invalid_argument("unknown comparator '" + cmp + "'");
}

}  // namespace detail

inline ClaimOutcome evaluate_claim(const Graph& g, const ConstructionManifest& m,
                                   const ManifestClaim& c, const EvalOptions& opt = {}) {
    ClaimOutcome out;
    out.claim = c;
    if (c.op == "min-degree") {
        // min-degree <cmp> <value>
        int observed = min_degree(g);
        out.observed = std::to_string(observed);
        out.pass = detail::compare(c.args.at(0), observed, std::stoll(c.args.at(1)));
    } else if (c.op == "ks-free") {
        // ks-free <s> <true|false>
        auto res = is_ks_free(g, detail::claim_int(c, 0));
        out.observed = res.free ? "true" : "false";
        out.pass = (out.observed == c.args.at(1));
    } else if (c.op == "triangle-free-in") {
        // triangle-free-in <set>
        const auto& verts = detail::claim_set(m, c, 0);
        auto sub = g.induced(verts);
        bool free = is_ks_free(sub, 3).free;
        out.observed = free ? "true" : "false";
        out.pass = free;
    } else if (c.op == "factor") {
        // factor <r> <factor-found|no-factor>
        FactorOptions fopt;
        fopt.max_nodes = opt.factor_nodes;
        auto cert = has_kr_factor(g, detail::claim_int(c, 0), fopt);
        out.observed = to_string(cert.outcome);
        out.pass = (out.observed == c.args.at(1));
    } else if (c.op == "kr-meets") {
        // kr-meets <r> <set> <cmp> <t>: every K_r meets the set per <cmp> <t>
        int r = detail::claim_int(c, 0);
        const auto& verts = detail::claim_set(m, c, 1);
        const std::string& cmp = c.args.at(2);
        int target = detail::claim_int(c, 3);
        Bits mask = make_bits(g.order(), verts);
        long long violations = 0, total = 0;
        Bits all(static_cast<std::size_t>(g.order()));
        all.set();
        std::vector<int> scratch;
        detail::clique_dfs(g, scratch, all, r, [&](const std::vector<int>& clique) {
            ++total;
            int meet = 0;
            for (int v : clique)
                if (mask.test(static_cast<std::size_t>(v))) ++meet;
            if (!detail::compare(cmp, meet, target)) ++violations;
            return true;
        });
        out.observed = "cliques " + std::to_string(total) + ", violations " + std::to_string(violations);
        out.pass = (violations == 0);
    } else if (c.op == "cross-density") {
        // cross-density <setA> <setB> <cmp> <rational>
        Rational d = pair_density(g, detail::claim_set(m, c, 0), detail::claim_set(m, c, 1));
        out.observed = to_string(d);
        out.pass = detail::compare(c.args.at(2), d, parse_rational(c.args.at(3)));
    } else if (c.op == "girth-gt") {
        // girth-gt <g>
        int got = girth(g);
        out.observed = got == std::numeric_limits<int>::max() ? "acyclic" : std::to_string(got);
        out.pass = got > detail::claim_int(c, 0);
    } else if (c.op == "degree-window") {
        // degree-window <lo> <hi>
        int lo = detail::claim_int(c, 0), hi = detail::claim_int(c, 1);
        int dmin = g.order() ? g.min_degree() : 0;
        int dmax = 0;
        for (int v = 0; v < g.order(); ++v) dmax = std::max(dmax, g.degree(v));
        out.observed = "[" + std::to_string(dmin) + "," + std::to_string(dmax) + "]";
        out.pass = dmin >= lo && dmax <= hi;
    } else if (c.op == "alpha") {
        // alpha <ell>: report-only
        int ell = detail::claim_int(c, 0);
        if (g.order() > opt.alpha_cap) {
            out.applicable = false;
            out.observed = "skipped (order " + std::to_string(g.order()) + " over cap " +
                           std::to_string(opt.alpha_cap) + ")";
        } else {
            AlphaOptions aopt;
            aopt.cap = opt.alpha_cap;
            out.observed = std::to_string(alpha_ell(g, ell, aopt).value);
        }
        out.pass = true;
    } else {
        throw std::invalid_argument("unknown claim op '" + c.op + "'");
    }
    return out;
}

inline std::vector<ClaimOutcome> evaluate_manifest(const Graph& g, const ConstructionManifest& m,
                                                   const EvalOptions& opt = {}) {
    std::vector<ClaimOutcome> outs;
    outs.reserve(m.claims.size());
    for (const auto& c : m.claims) outs.push_back(evaluate_claim(g, m, c, opt));
    return outs;
}

// ---------------------------------------------------------------------------
// Generators

struct GenResult {
    Graph graph;
    ConstructionManifest manifest;
};

// Two disjoint complete graphs of orders n/2+1 and n/2-1.
inline GenResult gen_two_cliques(int n, int r) {
    if (n % 2 != 0) throw std::invalid_argument("gen_two_cliques: n must be even");
    if (r < 2) throw std::invalid_argument("gen_two_cliques: r must be >= 2");
    if (n < 6) throw std::invalid_argument("gen_two_cliques: need n >= 6");
    int big = n / 2 + 1, small = n / 2 - 1;
    if (big % r == 0 || small % r == 0)
        throw std::invalid_argument("gen_two_cliques: r divides a clique order (" +
                                    std::to_string(big) + " or " + std::to_string(small) +
                                    "), the no-factor claim would fail");
    GenResult res{Graph::disjoint_union(Graph::complete(big), Graph::complete(small)), {}};
    auto& m = res.manifest;
    m.name = "two-cliques";
    m.add_param("n", n);
    m.add_param("r", r);
    std::vector<int> a, b;
    for (int v = 0; v < big; ++v) a.push_back(v);
    for (int v = big; v < n; ++v) b.push_back(v);
    m.add_set("A", a);
    m.add_set("B", b);
    m.claim(ClaimKind::Exact, "min-degree", {"eq", std::to_string(n / 2 - 2)});
    m.claim(ClaimKind::Exact, "factor", {std::to_string(r), "no-factor"});
    return res;
}

namespace detail {

// Random greedy triangle-free growth with degree caps. Passes raise a degree
// ceiling one step at a time so degrees stay balanced; a pair is added only
// when it closes no triangle. Validity is monotone, so each pass is final.
inline Graph triangle_free_process(Rng& rng, int n, int hi) {
    Graph g(n);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (int ceiling = 1; ceiling <= hi; ++ceiling) {
        rng.shuffle(pairs);
        for (auto [u, v] : pairs) {
            if (g.degree(u) >= ceiling || g.degree(v) >= ceiling) continue;
            if (g.adjacent(u, v)) continue;
            if ((g.neighbors(u) & g.neighbors(v)).any()) continue;
            g.add_edge(u, v);
        }
    }
    return g;
}

// Random greedy growth keeping girth > girth_min: an edge joins endpoints at
// distance >= girth_min only. Distances only shrink, so skipped pairs stay
// invalid and each pass is final.
inline Graph high_girth_process(Rng& rng, int n, int girth_min, int hi) {
    Graph g(n);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    auto dist_at_least = [&](int s, int t, int bound) {
        // BFS from s, early exit past bound
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::vector<int> queue{s};
        dist[static_cast<std::size_t>(s)] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            if (dist[static_cast<std::size_t>(v)] >= bound) return true;
            const Bits& nb = g.neighbors(v);
            for (auto u = nb.find_first(); u != Bits::npos; u = nb.find_next(u)) {
                if (dist[u] != -1) continue;
                dist[u] = dist[static_cast<std::size_t>(v)] + 1;
                if (static_cast<int>(u) == t) return dist[u] >= bound;
                queue.push_back(static_cast<int>(u));
            }
        }
        return true;  // unreachable counts as infinite distance
    };
    for (int ceiling = 1; ceiling <= hi; ++ceiling) {
        rng.shuffle(pairs);
        for (auto [u, v] : pairs) {
            if (g.degree(u) >= ceiling || g.degree(v) >= ceiling) continue;
            if (g.adjacent(u, v)) continue;
            if (!dist_at_least(u, v, girth_min)) continue;
            g.add_edge(u, v);
        }
    }
    return g;
}

}  // namespace detail

struct ErOptions {
    int retries = 40;
};

// Triangle-free graph with every degree inside [eps*n/2, 3*eps*n/2].
inline GenResult gen_er_like(int n, double alpha_target, double eps, std::uint64_t seed,
                             ErOptions opts = {}) {
    if (!(eps > 0.0 && eps < 2.0 / 3.0)) throw std::invalid_argument("gen_er_like: need 0 < eps < 2/3");
    if (n < 1) throw std::invalid_argument("gen_er_like: empty graph");
    int lo = static_cast<int>(std::ceil(eps * n / 2.0));
    int hi = static_cast<int>(std::floor(3.0 * eps * n / 2.0));
    if (hi < lo) throw std::invalid_argument("gen_er_like: empty degree window");
    Rng base(seed);
    int best_min = -1;
    Graph best;
    int attempt_used = -1;
    for (int attempt = 0; attempt < opts.retries; ++attempt) {
        Rng rng = base.fork(static_cast<std::uint64_t>(attempt));
        Graph g = detail::triangle_free_process(rng, n, hi);
        int dmin = g.min_degree();
        if (dmin > best_min) {
            best_min = dmin;
            best = g;
            attempt_used = attempt;
        }
        if (dmin >= lo) break;
    }
    if (best_min < lo)
        throw GenerationFailed("gen_er_like: best attempt has min degree " + std::to_string(best_min) +
                               " below window floor " + std::to_string(lo) + " after " +
                               std::to_string(opts.retries) + " attempts");
    GenResult res{std::move(best), {}};
    auto& m = res.manifest;
    m.name = "er";
    m.add_param("n", n);
    m.add_param("alpha-target", std::to_string(alpha_target));
    m.add_param("eps", std::to_string(eps));
    m.add_param("seed", static_cast<long long>(seed));
    m.add_param("attempt", attempt_used);
    m.claim(ClaimKind::Exact, "ks-free", {"3", "true"});
    m.claim(ClaimKind::Exact, "degree-window", {std::to_string(lo), std::to_string(hi)});
    m.claim(ClaimKind::Report, "alpha", {"2"});
    return res;
}

// Graph of girth > girth_min with alpha reported.
inline GenResult gen_high_girth(int n, double alpha_target, int girth_min, std::uint64_t seed) {
    if (girth_min < 4) throw std::invalid_argument("gen_high_girth: need girth_min >= 4");
    if (n < 1) throw std::invalid_argument("gen_high_girth: empty graph");
    Rng rng = Rng(seed).fork(0);
    Graph g = detail::high_girth_process(rng, n, girth_min, n - 1);
    GenResult res{std::move(g), {}};
    auto& m = res.manifest;
    m.name = "girth";
    m.add_param("n", n);
    m.add_param("alpha-target", std::to_string(alpha_target));
    m.add_param("girth-min", girth_min);
    m.add_param("seed", static_cast<long long>(seed));
    m.claim(ClaimKind::Exact, "girth-gt", {std::to_string(girth_min)});
    m.claim(ClaimKind::Report, "alpha", {"2"});
    return res;
}

// Sphere construction: two point clouds on S^{dim-1}; near-antipodal pairs
// join inside a side (forcing triangle-free sides), near-orthogonal-or-closer
// pairs join across sides. K_4-freeness is checker-established per seed.
inline GenResult gen_bollobas_erdos(int n_half, int dim, double theta, std::uint64_t seed) {
    if (n_half < 4) throw std::invalid_argument("gen_bollobas_erdos: need n_half >= 4");
    if (dim < 2) throw std::invalid_argument("gen_bollobas_erdos: need dim >= 2");
    if (!(theta > 0.0 && theta < 0.5))
        throw std::invalid_argument("gen_bollobas_erdos: need 0 < theta < 1/2");
    int n = 2 * n_half;
    Rng rng = Rng(seed).fork(0);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& p : pts) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& x : p) {
                x = rng.normal();
                norm2 += x * x;
            }
        } while (norm2 == 0.0);
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : p) x *= inv;
    }
    auto dot = [&](int i, int j) {
        double s = 0.0;
        for (int d = 0; d < dim; ++d)
            s += pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] *
                 pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
        return s;
    };
    Graph g(n);
    double same_side = -(0.5 + theta);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool same = (u < n_half) == (v < n_half);
            double d = dot(u, v);
            if (same ? d <= same_side : d >= theta) g.add_edge(u, v);
        }
    GenResult res{std::move(g), {}};
    auto& m = res.manifest;
    m.name = "be";
    m.add_param("n-half", n_half);
    m.add_param("dim", dim);
    m.add_param("theta", std::to_string(theta));
    m.add_param("seed", static_cast<long long>(seed));
    std::vector<int> v1, v2;
    for (int v = 0; v < n_half; ++v) v1.push_back(v);
    for (int v = n_half; v < n; ++v) v2.push_back(v);
    m.add_set("V1", v1);
    m.add_set("V2", v2);
    m.claim(ClaimKind::Exact, "triangle-free-in", {"V1"});
    m.claim(ClaimKind::Exact, "triangle-free-in", {"V2"});
    m.claim(ClaimKind::Exact, "ks-free", {"4", "true"});
    m.claim(ClaimKind::Stat, "cross-density", {"V1", "V2", "ge", "7/20"});
    m.claim(ClaimKind::Report, "alpha", {"2"});
    return res;
}

namespace detail {

inline void fill_with_triangle_free(Graph& g, const std::vector<int>& part, Rng& rng, double eps_fill) {
    if (part.size() < 2) return;
    int size = static_cast<int>(part.size());
    int hi = std::max(1, static_cast<int>(std::floor(3.0 * eps_fill * size / 2.0)));
    Graph inner = triangle_free_process(rng, size, hi);
    for (auto [u, v] : inner.edges())
        g.add_edge(part[static_cast<std::size_t>(u)], part[static_cast<std::size_t>(v)]);
}

inline std::vector<std::vector<int>> consecutive_parts(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> parts;
    int next = 0;
    for (int s : sizes) {
        std::vector<int> part;
        for (int i = 0; i < s; ++i) part.push_back(next++);
        parts.push_back(std::move(part));
    }
    return parts;
}

inline void complete_between(Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
    for (int u : a)
        for (int v : b) g.add_edge(u, v);
}

}  // namespace detail

// Complete multipartite skeleton with triangle-free fills; the distinguished
// oversized part blocks any K_r-factor by counting.
inline GenResult gen_prop_1_6(int r, int n, std::uint64_t seed) {
    if (r < 3) throw std::invalid_argument("gen_prop_1_6: need r >= 3");
    if (n % r != 0) throw std::invalid_argument("gen_prop_1_6: r must divide n");
    const double eps_fill = 0.3;
    std::vector<int> sizes;
    if (r % 2 == 1) {
        int v0 = n / r - 1;
        if (v0 < 1) throw std::invalid_argument("gen_prop_1_6: n too small, the n/r-1 part vanishes");
        sizes.push_back(v0);
        sizes.push_back(2 * n / r + 1);
        for (int i = 0; i < (r - 3) / 2; ++i) sizes.push_back(2 * n / r);
    } else {
        if (2 * n / r - 1 < 1) throw std::invalid_argument("gen_prop_1_6: n too small");
        sizes.push_back(2 * n / r + 1);
        sizes.push_back(2 * n / r - 1);
        for (int i = 0; i < r / 2 - 2; ++i) sizes.push_back(2 * n / r);
    }
    auto parts = detail::consecutive_parts(sizes);
    Graph g(n);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) detail::complete_between(g, parts[i], parts[j]);
    Rng base(seed);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Rng rng = base.fork(i);
        detail::fill_with_triangle_free(g, parts[i], rng, eps_fill);
    }
    GenResult res{std::move(g), {}};
    auto& m = res.manifest;
    m.name = "prop16";
    m.add_param("r", r);
    m.add_param("n", n);
    m.add_param("seed", static_cast<long long>(seed));
    // the distinguished oversized part is V1 for odd r (second in order), the
    // first part for even r
    std::size_t big_index = (r % 2 == 1) ? 1 : 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
        m.add_set("V" + std::to_string(i + (r % 2 == 1 ? 0 : 1)), parts[i]);
    std::string big_name = "V" + std::to_string(big_index + (r % 2 == 1 ? 0 : 1));
    int s_free = (r % 2 == 1) ? r + 2 : r + 1;
    m.claim(ClaimKind::Exact, "ks-free", {std::to_string(s_free), "true"});
    m.claim(ClaimKind::Exact, "kr-meets", {std::to_string(r), big_name, "le", "2"});
    m.claim(ClaimKind::Exact, "factor", {std::to_string(r), "no-factor"});
    // skeleton degree plus the fill's window floor on the big part
    long long big = sizes[big_index];
    long long floor_fill = static_cast<long long>(std::floor(eps_fill * big / 2.0));
    m.claim(ClaimKind::Stat, "min-degree", {"ge", std::to_string(n - big + floor_fill)});
    m.claim(ClaimKind::Report, "alpha", {"2"});
    return res;
}

struct Prop17Options {
    int retries = 50;
    double theta = 0.1;
};

// (r+1)/2 parts: V1, V2 carry a sphere construction, the rest carry girth-5
// fills; complete bipartite everywhere except inside {V1, V2}. Every K_r
// meets V1 u V2 in exactly 3 vertices, which kills any factor by counting.
inline GenResult gen_prop_1_7(int r, int n, std::uint64_t seed, Prop17Options opts = {}) {
    if (r < 5 || r % 2 == 0) throw std::invalid_argument("gen_prop_1_7: need odd r >= 5");
    long long denom = 3LL * r - 1;
    if ((4LL * n) % denom != 0 || (6LL * n) % denom != 0)
        throw std::invalid_argument("gen_prop_1_7: part sizes 4n/(3r-1), 6n/(3r-1) must be integers");
    int a = static_cast<int>(4LL * n / denom);
    int b = static_cast<int>(6LL * n / denom);
    if (a < 8) throw std::invalid_argument("gen_prop_1_7: side parts too small");
    int spare_parts = (r + 1) / 2 - 2;
    std::vector<int> sizes{a, a};
    for (int i = 0; i < spare_parts; ++i) sizes.push_back(b);
    auto parts = detail::consecutive_parts(sizes);

    // degree floor the acceptance tolerance asks for: (1 - 6/(3r-1) - 1/10) n
    Rational target = (eval_threshold(r) - Rational(1, 10)) * n;
    long long floor_target = target.numerator() / target.denominator();
    if (Rational(floor_target) < target) ++floor_target;

    Rng base(seed);
    Graph best;
    bool found = false;
    int attempt_used = -1;
    int best_delta = -1;
    for (int attempt = 0; attempt < opts.retries; ++attempt) {
        Graph g(n);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                if (!(i == 0 && j == 1)) detail::complete_between(g, parts[i], parts[j]);
        // sphere block across V1 u V2
        Rng block = base.fork(static_cast<std::uint64_t>(attempt) * 2 + 1);
        auto be = gen_bollobas_erdos(a, 8, opts.theta,
                                     block.next_u64());
        std::vector<int> v12(parts[0]);
        v12.insert(v12.end(), parts[1].begin(), parts[1].end());
        for (auto [u, v] : be.graph.edges())
            g.add_edge(v12[static_cast<std::size_t>(u)], v12[static_cast<std::size_t>(v)]);
        // girth-5 fills elsewhere
        for (std::size_t i = 2; i < parts.size(); ++i) {
            Rng fill = base.fork(static_cast<std::uint64_t>(attempt) * 17 + 3 + i);
            Graph inner = detail::high_girth_process(fill, static_cast<int>(parts[i].size()), 4,
                                                     static_cast<int>(parts[i].size()) - 1);
            for (auto [u, v] : inner.edges())
                g.add_edge(parts[i][static_cast<std::size_t>(u)], parts[i][static_cast<std::size_t>(v)]);
        }
        // exact block checks: the whole construction is K_{r+1}-free iff these hold
        Bits v12_mask = make_bits(n, v12);
        bool block_k4_free = !has_clique_in(g, v12_mask, 4);
        int dmin = g.min_degree();
        if (dmin > best_delta) {
            best_delta = dmin;
            best = g;
            attempt_used = attempt;
        }
        if (block_k4_free && dmin >= floor_target) {
            best = std::move(g);
            attempt_used = attempt;
            found = true;
            break;
        }
    }
    if (!found)
        throw GenerationFailed("gen_prop_1_7: no attempt met the exact block checks (best min degree " +
                               std::to_string(best_delta) + ", needed " + std::to_string(floor_target) +
                               ")");
    GenResult res{std::move(best), {}};
    auto& m = res.manifest;
    m.name = "prop17";
    m.add_param("r", r);
    m.add_param("n", n);
    m.add_param("seed", static_cast<long long>(seed));
    m.add_param("attempt", attempt_used);
    m.add_param("theta", std::to_string(opts.theta));
    std::vector<int> v12(parts[0]);
    v12.insert(v12.end(), parts[1].begin(), parts[1].end());
    for (std::size_t i = 0; i < parts.size(); ++i) m.add_set("V" + std::to_string(i + 1), parts[i]);
    m.add_set("V12", v12);
    m.claim(ClaimKind::Exact, "ks-free", {std::to_string(r + 1), "true"});
    m.claim(ClaimKind::Exact, "kr-meets", {std::to_string(r), "V12", "eq", "3"});
    m.claim(ClaimKind::Exact, "factor", {std::to_string(r), "no-factor"});
    m.claim(ClaimKind::Stat, "min-degree", {"ge", std::to_string(floor_target)});
    m.claim(ClaimKind::Stat, "cross-density", {"V1", "V2", "ge", "7/20"});
    m.claim(ClaimKind::Report, "alpha", {"2"});
    return res;
}

// ---------------------------------------------------------------------------
// Manifest parsing (the checker side of the gen/check round trip)

inline ConstructionManifest parse_manifest(const std::string& text) {
    ConstructionManifest m;
    std::istringstream in(text);
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty() || tok[0] == "c" || tok[0] == "manifest") continue;
        if (tok[0] == "name" && tok.size() >= 2) {
            m.name = tok[1];
        } else if (tok[0] == "param" && tok.size() >= 3) {
            m.add_param(tok[1], tok[2]);
        } else if (tok[0] == "set" && tok.size() >= 2) {
            std::vector<int> verts;
            for (std::size_t i = 2; i < tok.size(); ++i) verts.push_back(std::stoi(tok[i]) - 1);
            m.add_set(tok[1], verts);
        } else if (tok[0] == "claim" && tok.size() >= 3) {
            ClaimKind kind;
            if (tok[1] == "exact")
                kind = ClaimKind::Exact;
            else if (tok[1] == "stat")
                kind = ClaimKind::Stat;
            else if (tok[1] == "report")
                kind = ClaimKind::Report;
            else
                throw std::invalid_argument("manifest line " + std::to_string(line_number) +
                                            ": unknown claim kind '" + tok[1] + "'");
            ManifestClaim c;
            c.kind = kind;
            c.op = tok[2];
            for (std::size_t i = 3; i < tok.size(); ++i) c.args.push_back(tok[i]);
            m.claims.push_back(std::move(c));
        } else {
            throw std::invalid_argument("manifest line " + std::to_string(line_number) +
                                        ": unrecognized directive '" + tok[0] + "'");
        }
    }
    return m;
}

}  // namespace kfactor
