#pragma once

#include "kfactor/cliques.hpp"
#include "kfactor/graph.hpp"
#include "kfactor/reduce.hpp"
#include "kfactor/rng.hpp"
#include "kfactor/verify.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

// ---------------------------------------------------------------------------
// {K2=, K3}-tilings of the reduced multigraph

struct TilingReport {
    Tiling tiling;               // multi_host points at the tiled multigraph
    std::vector<int> uncovered;  // B
    std::optional<double> mu, eta;
    bool mu_bound_ok = true;   // |B| < 1/mu, when mu is given
    bool eta_bound_ok = true;  // |B| <= eta * k, when eta is given
    bool exact = false;
};

namespace detail {

inline void finish_report(TilingReport& rep, const Multigraph2& r) {
    rep.tiling.multi_host = &r;
    Bits cov = rep.tiling.covered();
    rep.uncovered.clear();
    for (int v = 0; v < r.order(); ++v)
        if (!cov.test(static_cast<std::size_t>(v))) rep.uncovered.push_back(v);
    std::size_t b = rep.uncovered.size();
    if (rep.mu) rep.mu_bound_ok = static_cast<double>(b) * *rep.mu < 1.0;
    if (rep.eta) rep.eta_bound_ok = static_cast<double>(b) <= *rep.eta * r.order();
}

struct K2K3Dp {
    const Multigraph2& r;
    std::vector<int> memo;  // -1 unknown; else best coverage of the mask

    explicit K2K3Dp(const Multigraph2& rr) : r(rr), memo(1u << rr.order(), -1) {}

    int best(std::uint32_t mask) {
        if (mask == 0) return 0;
        int& slot = memo[mask];
        if (slot >= 0) return slot;
        int v = __builtin_ctz(mask);
        std::uint32_t rest = mask & (mask - 1);  // clear lowest bit
        int value = best(rest);                  // leave v uncovered
        for (int u = 0; u < r.order(); ++u) {
            if (!(rest & (1u << u))) continue;
            if (r.mult(v, u) == 2) value = std::max(value, 2 + best(rest & ~(1u << u)));
        }
        for (int u = 0; u < r.order(); ++u) {
            if (!(rest & (1u << u)) || r.mult(v, u) < 1) continue;
            for (int w = u + 1; w < r.order(); ++w) {
                if (!(rest & (1u << w)) || r.mult(v, w) < 1 || r.mult(u, w) < 1) continue;
                value = std::max(value, 3 + best(rest & ~(1u << u) & ~(1u << w)));
            }
        }
        slot = value;
        return value;
    }

    // Deterministic reconstruction: covering options first (doubles by partner
    // index, then triangles lexicographically), skipping last.
    void rebuild(std::uint32_t mask, std::vector<Placement>& out) {
        if (mask == 0) return;
        int target = best(mask);
        int v = __builtin_ctz(mask);
        std::uint32_t rest = mask & (mask - 1);
        for (int u = 0; u < r.order(); ++u) {
            if (!(rest & (1u << u))) continue;
            if (r.mult(v, u) == 2 && 2 + best(rest & ~(1u << u)) == target) {
                out.push_back({Shape::K2Double, {v, u}, {}, {}});
                std::sort(out.back().vertices.begin(), out.back().vertices.end());
                rebuild(rest & ~(1u << u), out);
                return;
            }
        }
        for (int u = 0; u < r.order(); ++u) {
            if (!(rest & (1u << u)) || r.mult(v, u) < 1) continue;
            for (int w = u + 1; w < r.order(); ++w) {
                if (!(rest & (1u << w)) || r.mult(v, w) < 1 || r.mult(u, w) < 1) continue;
                if (3 + best(rest & ~(1u << u) & ~(1u << w)) == target) {
                    out.push_back({Shape::K3, {v, u, w}, {}, {}});
                    std::sort(out.back().vertices.begin(), out.back().vertices.end());
                    rebuild(rest & ~(1u << u) & ~(1u << w), out);
                    return;
                }
            }
        }
        rebuild(rest, out);  // v stays uncovered
    }
};

}  // namespace detail

// Maximum-coverage {K2=, K3}-tiling by exact subset dynamic programming.
// K3 tiles may ride on any multiplicity >= 1 edges; K2= needs multiplicity 2.
inline TilingReport max_k2k3_tiling(const Multigraph2& r, std::optional<double> mu = {},
                                    std::optional<double> eta = {}, int cap = 16) {
    if (r.order() > cap)
        throw InstanceTooLarge("max_k2k3_tiling: order " + std::to_string(r.order()) +
                               " exceeds exact-search cap " + std::to_string(cap) +
                               "; use local_k2k3_tiling");
    TilingReport rep;
    rep.mu = mu;
    rep.eta = eta;
    rep.exact = true;
    if (r.order() > 0) {
        detail::K2K3Dp dp(r);
        std::uint32_t all = (r.order() == 32) ? ~0u : ((1u << r.order()) - 1);
        dp.rebuild(all, rep.tiling.placements);
    }
    detail::finish_report(rep, r);
    return rep;
}

namespace detail {

struct K2K3Greedy {
    const Multigraph2& r;
    std::vector<std::pair<int, int>> pair_order;
    std::vector<std::array<int, 3>> triple_order;
    std::vector<int> vertex_order;

    explicit K2K3Greedy(const Multigraph2& rr) : r(rr) {
        for (int u = 0; u < r.order(); ++u) {
            vertex_order.push_back(u);
            for (int v = u + 1; v < r.order(); ++v) {
                pair_order.emplace_back(u, v);
                for (int w = v + 1; w < r.order(); ++w) triple_order.push_back({u, v, w});
            }
        }
    }

    void shuffle(Rng& rng) {
        rng.shuffle(pair_order);
        rng.shuffle(triple_order);
        rng.shuffle(vertex_order);
    }

    // Applies the proof moves until none fires: add a free double-edge or
    // triangle, or upgrade a tiled double-edge uv with an uncovered common
    // neighbor w to the triangle uvw.
    std::vector<Placement> run() const {
        std::vector<Placement> tiles;
        Bits covered(static_cast<std::size_t>(r.order()));
        auto take = [&](std::initializer_list<int> verts, Shape shape) {
            Placement p{shape, {}, {}, {}};
            for (int v : verts) {
                covered.set(static_cast<std::size_t>(v));
                p.vertices.push_back(v);
            }
            std::sort(p.vertices.begin(), p.vertices.end());
            tiles.push_back(std::move(p));
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto [u, v] : pair_order) {
                if (covered.test(static_cast<std::size_t>(u)) ||
                    covered.test(static_cast<std::size_t>(v)))
                    continue;
                if (r.mult(u, v) == 2) {
                    take({u, v}, Shape::K2Double);
                    changed = true;
                }
            }
            for (const auto& t : triple_order) {
                if (covered.test(static_cast<std::size_t>(t[0])) ||
                    covered.test(static_cast<std::size_t>(t[1])) ||
                    covered.test(static_cast<std::size_t>(t[2])))
                    continue;
                if (r.mult(t[0], t[1]) >= 1 && r.mult(t[0], t[2]) >= 1 && r.mult(t[1], t[2]) >= 1) {
                    take({t[0], t[1], t[2]}, Shape::K3);
                    changed = true;
                }
            }
            for (auto& tile : tiles) {
                if (tile.shape != Shape::K2Double) continue;
                int u = tile.vertices[0], v = tile.vertices[1];
                for (int w : vertex_order) {
                    if (covered.test(static_cast<std::size_t>(w))) continue;
                    if (r.mult(u, w) >= 1 && r.mult(v, w) >= 1) {
                        tile.shape = Shape::K3;
                        tile.vertices = {u, v, w};
                        std::sort(tile.vertices.begin(), tile.vertices.end());
                        covered.set(static_cast<std::size_t>(w));
                        changed = true;
                        break;
                    }
                }
            }
        }
        return tiles;
    }
};

}  // namespace detail

// True when neither an addition nor a double-to-triangle upgrade applies.
inline bool k2k3_move_stable(const Multigraph2& r, const Tiling& t) {
    Bits covered = t.covered();
    for (int u = 0; u < r.order(); ++u) {
        if (covered.test(static_cast<std::size_t>(u))) continue;
        for (int v = u + 1; v < r.order(); ++v) {
            if (covered.test(static_cast<std::size_t>(v))) continue;
            if (r.mult(u, v) == 2) return false;
            for (int w = v + 1; w < r.order(); ++w) {
                if (covered.test(static_cast<std::size_t>(w))) continue;
                if (r.mult(u, v) >= 1 && r.mult(u, w) >= 1 && r.mult(v, w) >= 1) return false;
            }
        }
    }
    for (const auto& p : t.placements) {
        if (p.shape != Shape::K2Double) continue;
        for (int w = 0; w < r.order(); ++w) {
            if (covered.test(static_cast<std::size_t>(w))) continue;
            if (r.mult(p.vertices[0], w) >= 1 && r.mult(p.vertices[1], w) >= 1) return false;
        }
    }
    return true;
}

// Greedy start plus augmentation moves, restarted under shuffled scan orders;
// the first restart is the deterministic lexicographic one. Returns the best
// move-stable tiling found. Coverage is measured, not guaranteed.
inline TilingReport local_k2k3_tiling(const Multigraph2& r, std::uint64_t seed,
                                      std::optional<double> mu = {}, std::optional<double> eta = {},
                                      int restarts = 4) {
    detail::K2K3Greedy greedy(r);
    std::vector<Placement> best = greedy.run();
    auto coverage = [](const std::vector<Placement>& ps) {
        std::size_t c = 0;
        for (const auto& p : ps) c += p.vertices.size();
        return c;
    };
    std::size_t best_cov = coverage(best);
    Rng base(seed);
    for (int i = 1; i < restarts; ++i) {
        Rng rng = base.fork(static_cast<std::uint64_t>(i));
        detail::K2K3Greedy shuffled(r);
        shuffled.shuffle(rng);
        auto tiles = shuffled.run();
        if (coverage(tiles) > best_cov) {
            best_cov = coverage(tiles);
            best = std::move(tiles);
        }
    }
    TilingReport rep;
    rep.mu = mu;
    rep.eta = eta;
    rep.exact = false;
    rep.tiling.placements = std::move(best);
    detail::finish_report(rep, r);
    return rep;
}

// ---------------------------------------------------------------------------
// Q1 / Q2 gadgets and their greedy embeddings

struct GadgetQ1 {
    std::vector<int> u1, u2;  // the two parts, r vertices each
    std::vector<int> h1, h2;  // the two K_r copies
};

struct GadgetQ2 {
    std::vector<int> u1, u2, u3;
    std::vector<int> h1, h2, h3;
};

inline bool check_q1(const Graph& g, const GadgetQ1& q, int r) {
    auto parts = std::vector<std::vector<int>>{q.u1, q.u2};
    auto hs = std::vector<std::vector<int>>{q.h1, q.h2};
    for (auto& x : parts) std::sort(x.begin(), x.end());
    for (auto& x : hs) std::sort(x.begin(), x.end());
    std::vector<int> all;
    for (const auto& h : hs) all.insert(all.end(), h.begin(), h.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    if (static_cast<int>(all.size()) != 2 * r) return false;
    return detail::check_gadget_pattern(g, parts, hs, {{2, r - 2}, {r - 2, 2}}, all);
}

inline bool check_q2(const Graph& g, const GadgetQ2& q, int r) {
    auto parts = std::vector<std::vector<int>>{q.u1, q.u2, q.u3};
    auto hs = std::vector<std::vector<int>>{q.h1, q.h2, q.h3};
    for (auto& x : parts) std::sort(x.begin(), x.end());
    for (auto& x : hs) std::sort(x.begin(), x.end());
    std::vector<int> all;
    for (const auto& h : hs) all.insert(all.end(), h.begin(), h.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    if (static_cast<int>(all.size()) != 3 * r) return false;
    return detail::check_gadget_pattern(g, parts, hs,
                                        {{1, 1, r - 2}, {r - 2, 1, 1}, {1, r - 2, 1}}, all);
}

struct Q1Embed {
    bool ok = false;
    GadgetQ1 gadget;
    std::string failed_step;  // first search that came up empty
};

struct Q2Embed {
    bool ok = false;
    GadgetQ2 gadget;
    std::string failed_step;
};

namespace detail {

// Vertices of `part` with at least (density - eps) * |other| neighbors in
// `other`; the degree filter standing in for the regularity argument.
inline std::vector<int> dense_core(const Graph& g, const std::vector<int>& part,
                                   const std::vector<int>& other, const Rational& eps) {
    Rational d = pair_density(g, part, other);
    Rational need = (d - eps) * static_cast<long long>(other.size());
    Bits omask = make_bits(g.order(), other);
    std::vector<int> core;
    for (int x : part) {
        long long deg = static_cast<long long>((g.neighbors(x) & omask).count());
        if (Rational(deg) >= need) core.push_back(x);
    }
    return core;
}

inline std::vector<int> without(const std::vector<int>& pool, const std::vector<int>& used) {
    std::vector<int> out;
    for (int v : pool)
        if (std::find(used.begin(), used.end(), v) == used.end()) out.push_back(v);
    return out;
}

// One K_r with 2 vertices in `a` (an edge of a K_{r-2} found in the dense
// core) and r-2 in `b` (a K_{r-2} in the edge's common neighborhood).
inline std::optional<std::vector<int>> cross_kr_2(const Graph& g, const std::vector<int>& a,
                                                  const std::vector<int>& b, int r,
                                                  const Rational& eps, std::string& step,
                                                  const char* tag) {
    auto core = dense_core(g, a, b, eps);
    auto anchor = find_clique_in(g, make_bits(g.order(), core), r - 2);
    if (!anchor) {
        step = std::string("core-clique-") + tag;
        return std::nullopt;
    }
    int u = (*anchor)[0], v = (*anchor)[1];
    Bits link = g.neighbors(u) & g.neighbors(v) & make_bits(g.order(), b);
    auto fill = find_clique_in(g, link, r - 2);
    if (!fill) {
        step = std::string("link-clique-") + tag;
        return std::nullopt;
    }
    std::vector<int> kr{u, v};
    kr.insert(kr.end(), fill->begin(), fill->end());
    std::sort(kr.begin(), kr.end());
    return kr;
}

}  // namespace detail

// Embedding a Q1 across a dense pair: one K_r with 2 vertices in v1, then the
// mirrored K_r on the residues. Failure names the first empty search.
inline Q1Embed embed_q1(const Graph& g, const std::vector<int>& v1, const std::vector<int>& v2,
                        int r, const Rational& eps) {
    Q1Embed out;
    if (r < 4) throw std::invalid_argument("embed_q1: r must be >= 4");
    if (static_cast<int>(v1.size()) < r || static_cast<int>(v2.size()) < r) {
        out.failed_step = "part-too-small";
        return out;
    }
    std::string step;
    auto first = detail::cross_kr_2(g, v1, v2, r, eps, step, "1");
    if (!first) {
        out.failed_step = step;
        return out;
    }
    auto v1rest = detail::without(v1, *first);
    auto v2rest = detail::without(v2, *first);
    auto second = detail::cross_kr_2(g, v2rest, v1rest, r, eps, step, "2");
    if (!second) {
        out.failed_step = step;
        return out;
    }
    GadgetQ1 q;
    q.h1 = *first;
    q.h2 = *second;
    Bits v1mask = make_bits(g.order(), v1);
    for (int x : q.h1) (v1mask.test(static_cast<std::size_t>(x)) ? q.u1 : q.u2).push_back(x);
    for (int x : q.h2) (v1mask.test(static_cast<std::size_t>(x)) ? q.u1 : q.u2).push_back(x);
    std::sort(q.u1.begin(), q.u1.end());
    std::sort(q.u2.begin(), q.u2.end());
    out.ok = check_q1(g, q, r);
    if (!out.ok) {
        out.failed_step = "gadget-check";
        return out;
    }
    out.gadget = std::move(q);
    return out;
}

// Embedding a Q2 across a dense triple: three K_r's with the cyclic
// (1, 1, r-2) split. Failure names the first empty search.
inline Q2Embed embed_q2(const Graph& g, const std::vector<int>& v1, const std::vector<int>& v2,
                        const std::vector<int>& v3, int r, const Rational& eps) {
    Q2Embed out;
    if (r < 4) throw std::invalid_argument("embed_q2: r must be >= 4");
    if (static_cast<int>(v1.size()) < r || static_cast<int>(v2.size()) < r ||
        static_cast<int>(v3.size()) < r) {
        out.failed_step = "part-too-small";
        return out;
    }
    std::vector<std::vector<int>> pools{v1, v2, v3};
    std::vector<std::vector<int>> hs;
    for (int i = 0; i < 3; ++i) {
        const auto& pa = pools[static_cast<std::size_t>(i)];
        const auto& pb = pools[static_cast<std::size_t>((i + 1) % 3)];
        const auto& pc = pools[static_cast<std::size_t>((i + 2) % 3)];
        std::string tag = std::to_string(i + 1);
        Rational dab = pair_density(g, pa, pb);
        Rational dac = pair_density(g, pa, pc);
        Bits bmask = make_bits(g.order(), pb);
        Bits cmask = make_bits(g.order(), pc);
        Rational need_b = (dab - eps) * static_cast<long long>(pb.size());
        Rational need_c = (dac - eps) * static_cast<long long>(pc.size());
        // anchor in part i, adjacent into both partner parts
        int anchor = -1;
        for (int x : pa) {
            long long db = static_cast<long long>((g.neighbors(x) & bmask).count());
            long long dc = static_cast<long long>((g.neighbors(x) & cmask).count());
            if (Rational(db) >= need_b && Rational(dc) >= need_c) {
                anchor = x;
                break;
            }
        }
        if (anchor < 0) {
            out.failed_step = "anchor-" + tag;
            return out;
        }
        Bits nb = g.neighbors(anchor) & bmask;
        Bits nc = g.neighbors(anchor) & cmask;
        // link vertex in part i+1 seeing enough of N(anchor) in part i+2
        Rational dbc = pair_density(g, pb, pc);
        long long nc_size = static_cast<long long>(nc.count());
        Rational need_link = (dbc - eps) * nc_size;
        int link = -1;
        for (auto x = nb.find_first(); x != Bits::npos; x = nb.find_next(x)) {
            long long deg = static_cast<long long>((g.neighbors(static_cast<int>(x)) & nc).count());
            if (Rational(deg) >= need_link) {
                link = static_cast<int>(x);
                break;
            }
        }
        if (link < 0) {
            out.failed_step = "link-vertex-" + tag;
            return out;
        }
        auto fill = find_clique_in(g, g.neighbors(link) & nc, r - 2);
        if (!fill) {
            out.failed_step = "link-clique-" + tag;
            return out;
        }
        std::vector<int> kr{anchor, link};
        kr.insert(kr.end(), fill->begin(), fill->end());
        std::sort(kr.begin(), kr.end());
        hs.push_back(kr);
        for (auto& pool : pools) pool = detail::without(pool, kr);
    }
    GadgetQ2 q;
    q.h1 = hs[0];
    q.h2 = hs[1];
    q.h3 = hs[2];
    Bits m1 = make_bits(g.order(), v1), m2 = make_bits(g.order(), v2);
    for (const auto& h : hs)
        for (int x : h) {
            if (m1.test(static_cast<std::size_t>(x)))
                q.u1.push_back(x);
            else if (m2.test(static_cast<std::size_t>(x)))
                q.u2.push_back(x);
            else
                q.u3.push_back(x);
        }
    std::sort(q.u1.begin(), q.u1.end());
    std::sort(q.u2.begin(), q.u2.end());
    std::sort(q.u3.begin(), q.u3.end());
    out.ok = check_q2(g, q, r);
    if (!out.ok) {
        out.failed_step = "gadget-check";
        return out;
    }
    out.gadget = std::move(q);
    return out;
}

inline Placement to_placement(const GadgetQ1& q) {
    Placement p{Shape::Q1, {}, {q.u1, q.u2}, {q.h1, q.h2}};
    p.vertices = q.h1;
    p.vertices.insert(p.vertices.end(), q.h2.begin(), q.h2.end());
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

inline Placement to_placement(const GadgetQ2& q) {
    Placement p{Shape::Q2, {}, {q.u1, q.u2, q.u3}, {q.h1, q.h2, q.h3}};
    p.vertices = q.h1;
    p.vertices.insert(p.vertices.end(), q.h2.begin(), q.h2.end());
    p.vertices.insert(p.vertices.end(), q.h3.begin(), q.h3.end());
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

// ---------------------------------------------------------------------------
// Almost-perfect K_r-tiling pipeline

struct PipelineOptions {
    int exact_cap = 16;     // reduced orders above this use the local tiling
    std::uint64_t seed = 0; // scan order seed for the local tiling
};

struct PipelineResult {
    std::unique_ptr<Multigraph2> reduced;
    TilingReport reduced_tiling;
    Tiling tiling;  // K_r placements in the host graph
    std::vector<int> uncovered;
    int q1_count = 0, q2_count = 0;
    std::vector<std::string> pair_log;  // per reduced tile: embeds and stop reason
};

// build_reduced -> {K2=, K3}-tiling -> per double-edge repeated Q1 embeddings,
// per triangle repeated Q2 embeddings; each gadget contributes its K_r copies.
// Coverage is reported, never promised.
inline PipelineResult almost_factor_pipeline(const Graph& g, const Partition& p,
                                             const ReducedConfig& cfg, int r,
                                             PipelineOptions opt = {}) {
    if (r < 4) throw std::invalid_argument("almost_factor_pipeline: r must be >= 4");
    p.validate();
    PipelineResult res;
    res.reduced = std::make_unique<Multigraph2>(build_reduced(g, p, cfg));
    const Multigraph2& red = *res.reduced;
    res.reduced_tiling = red.order() <= opt.exact_cap
                             ? max_k2k3_tiling(red)
                             : local_k2k3_tiling(red, opt.seed);
    res.tiling.host = &g;
    for (const auto& tile : res.reduced_tiling.tiling.placements) {
        if (tile.shape == Shape::K2Double) {
            auto pool1 = p.clusters[static_cast<std::size_t>(tile.vertices[0])];
            auto pool2 = p.clusters[static_cast<std::size_t>(tile.vertices[1])];
            int rounds = 0;
            std::string stop = "pool-exhausted";
            while (static_cast<int>(pool1.size()) >= r && static_cast<int>(pool2.size()) >= r) {
                auto em = embed_q1(g, pool1, pool2, r, cfg.eps);
                if (!em.ok) {
                    stop = em.failed_step;
                    break;
                }
                res.tiling.placements.push_back({Shape::Kr, em.gadget.h1, {}, {}});
                res.tiling.placements.push_back({Shape::Kr, em.gadget.h2, {}, {}});
                ++res.q1_count;
                ++rounds;
                auto used = em.gadget.h1;
                used.insert(used.end(), em.gadget.h2.begin(), em.gadget.h2.end());
                pool1 = detail::without(pool1, used);
                pool2 = detail::without(pool2, used);
            }
            res.pair_log.push_back("k2= (" + std::to_string(tile.vertices[0] + 1) + "," +
                                   std::to_string(tile.vertices[1] + 1) + "): " +
                                   std::to_string(rounds) + " q1, stop " + stop);
        } else if (tile.shape == Shape::K3) {
            auto pool1 = p.clusters[static_cast<std::size_t>(tile.vertices[0])];
            auto pool2 = p.clusters[static_cast<std::size_t>(tile.vertices[1])];
            auto pool3 = p.clusters[static_cast<std::size_t>(tile.vertices[2])];
            int rounds = 0;
            std::string stop = "pool-exhausted";
            while (static_cast<int>(pool1.size()) >= r && static_cast<int>(pool2.size()) >= r &&
                   static_cast<int>(pool3.size()) >= r) {
                auto em = embed_q2(g, pool1, pool2, pool3, r, cfg.eps);
                if (!em.ok) {
                    stop = em.failed_step;
                    break;
                }
                res.tiling.placements.push_back({Shape::Kr, em.gadget.h1, {}, {}});
                res.tiling.placements.push_back({Shape::Kr, em.gadget.h2, {}, {}});
                res.tiling.placements.push_back({Shape::Kr, em.gadget.h3, {}, {}});
                ++res.q2_count;
                ++rounds;
                auto used = em.gadget.h1;
                used.insert(used.end(), em.gadget.h2.begin(), em.gadget.h2.end());
                used.insert(used.end(), em.gadget.h3.begin(), em.gadget.h3.end());
                pool1 = detail::without(pool1, used);
                pool2 = detail::without(pool2, used);
                pool3 = detail::without(pool3, used);
            }
            res.pair_log.push_back("k3 (" + std::to_string(tile.vertices[0] + 1) + "," +
                                   std::to_string(tile.vertices[1] + 1) + "," +
                                   std::to_string(tile.vertices[2] + 1) + "): " +
                                   std::to_string(rounds) + " q2, stop " + stop);
        }
    }
    res.uncovered = res.tiling.uncovered();
    return res;
}

}  // namespace kfactor
