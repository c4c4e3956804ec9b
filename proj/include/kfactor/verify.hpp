#pragma once

#include "kfactor/cliques.hpp"
#include "kfactor/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

struct InstanceTooLarge : std::runtime_error {
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

inline int min_degree(const Graph& g) {
    if (g.order() < 1) throw std::invalid_argument("min_degree: empty graph");
    return g.min_degree();
}

// ---------------------------------------------------------------------------
// K_s-freeness

struct KsFreeResult {
    bool free;
    std::vector<int> witness;  // one K_s when not free
};

inline KsFreeResult is_ks_free(const Graph& g, int s) {
    if (s < 2) throw std::invalid_argument("clique order must be >= 2");
    if (s > g.order()) return {true, {}};
    auto found = enumerate_cliques(g, s, 1);
    if (found.empty()) return {true, {}};
    return {false, found[0]};
}

// ---------------------------------------------------------------------------
// K_l-independence number

struct AlphaOptions {
    int cap = 60;       // refuse larger instances unless forced
    bool force = false;
};

struct AlphaResult {
    int value;
    std::vector<int> witness;  // a K_l-free set of that size
};

namespace detail {

// Greedy clique partition of `cand`; a K_l-free set takes at most min(|C|, l-1)
// vertices from each clique of the partition.
inline int alpha_bound(const Graph& g, const Bits& cand, int ell) {
    int total = 0;
    Bits rest = cand;
    while (rest.any()) {
        auto v = rest.find_first();
        rest.reset(v);
        Bits common = rest & g.neighbors(static_cast<int>(v));
        int size = 1;
        while (common.any()) {
            auto u = common.find_first();
            rest.reset(u);
            common &= g.neighbors(static_cast<int>(u));
            ++size;
        }
        total += std::min(size, ell - 1);
    }
    return total;
}

struct AlphaSearch {
    const Graph& g;
    int ell;
    std::vector<int> best;
    static constexpr std::size_t kPressureCap = 400;

    void run(Bits chosen, Bits cand) {
        // greedy start: extend by every vertex that keeps the set K_l-free
        Bits seed = chosen;
        for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v))
            if (!has_clique_in(g, seed & g.neighbors(static_cast<int>(v)), ell - 1))
                seed.set(v);
        best = bits_to_vector(seed);
        rec(chosen, cand);
    }

    void rec(const Bits& chosen, const Bits& cand) {
        int chosen_count = static_cast<int>(chosen.count());
        if (chosen_count + alpha_bound(g, cand, ell) <= static_cast<int>(best.size())) return;
        Bits uni = chosen | cand;
        // K_l-pressure of candidate vertices, over a capped enumeration
        std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
        std::size_t seen = 0;
        std::vector<int> scratch;
        detail::clique_dfs(g, scratch, uni, ell, [&](const std::vector<int>& c) {
            ++seen;
            for (int v : c)
                if (cand.test(static_cast<std::size_t>(v))) ++counts[static_cast<std::size_t>(v)];
            return seen < kPressureCap;
        });
        if (seen == 0) {
            // no K_l anywhere: take everything
            if (uni.count() > best.size()) best = bits_to_vector(uni);
            return;
        }
        int branch = -1, branch_count = -1;
        for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v))
            if (counts[v] > branch_count) {
                branch_count = counts[v];
                branch = static_cast<int>(v);
            }
        if (branch < 0) return;  // cand empty but a K_l sits inside chosen: unreachable
        Bits cand2 = cand;
        cand2.reset(static_cast<std::size_t>(branch));
        // include branch first: v joins unless it completes a K_l within chosen
        if (!has_clique_in(g, chosen & g.neighbors(branch), ell - 1)) {
            Bits chosen2 = chosen;
            chosen2.set(static_cast<std::size_t>(branch));
            if (chosen2.count() > best.size()) best = bits_to_vector(chosen2);
            rec(chosen2, cand2);
        }
        rec(chosen, cand2);
    }
};

}  // namespace detail

// Maximum size of a K_l-free vertex set, with witness. l=2 rides on the
// maximum-clique solver applied to the complement; l>=3 uses branch-and-bound
// on K_l-pressure with the clique-partition bound.
inline AlphaResult alpha_ell(const Graph& g, int ell, AlphaOptions opt = {}) {
    if (ell < 2) throw std::invalid_argument("ell must be >= 2");
    if (g.order() > opt.cap && !opt.force)
        throw InstanceTooLarge("alpha_ell: " + std::to_string(g.order()) + " vertices exceed cap " +
                               std::to_string(opt.cap) + " (use force to override)");
    if (g.order() == 0) return {0, {}};
    if (ell == 2) {
        auto witness = max_clique(g.complement());
        return {static_cast<int>(witness.size()), witness};
    }
    detail::AlphaSearch search{g, ell, {}};
    Bits all(static_cast<std::size_t>(g.order()));
    all.set();
    search.run(Bits(static_cast<std::size_t>(g.order())), all);
    return {static_cast<int>(search.best.size()), search.best};
}

// ---------------------------------------------------------------------------
// K_r-factor decision (exact cover over r-cliques)

enum class FactorOutcome { FactorFound, NoFactor, Timeout };
enum class NoFactorReason { None, Divisibility, ComponentSize, CountingObstruction, ExhaustedSearch };

inline std::string to_string(FactorOutcome o) {
    switch (o) {
        case FactorOutcome::FactorFound: return "factor-found";
        case FactorOutcome::NoFactor: return "no-factor";
        case FactorOutcome::Timeout: return "timeout";
    }
    return "?";
}

inline std::string to_string(NoFactorReason r) {
    switch (r) {
        case NoFactorReason::None: return "none";
        case NoFactorReason::Divisibility: return "divisibility";
        case NoFactorReason::ComponentSize: return "component-size";
        case NoFactorReason::CountingObstruction: return "counting-obstruction";
        case NoFactorReason::ExhaustedSearch: return "exhausted-search";
    }
    return "?";
}

struct FactorOptions {
    std::uint64_t max_nodes = 0;  // 0 = unbounded
    bool counting_prune = true;
};

struct FactorCertificate {
    FactorOutcome outcome;
    NoFactorReason reason = NoFactorReason::None;
    Tiling tiling;  // populated when a factor is found
    std::string detail;
    std::uint64_t nodes = 0;

    bool found() const { return outcome == FactorOutcome::FactorFound; }
};

namespace detail {

inline std::vector<std::vector<int>> components_in(const Graph& g, const Bits& mask) {
    std::vector<std::vector<int>> comps;
    Bits unseen = mask;
    while (unseen.any()) {
        auto s = unseen.find_first();
        unseen.reset(s);
        std::vector<int> comp;
        std::vector<int> stack{static_cast<int>(s)};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            Bits reach = unseen & g.neighbors(v);
            for (auto u = reach.find_first(); u != Bits::npos; u = reach.find_next(u)) {
                unseen.reset(u);
                stack.push_back(static_cast<int>(u));
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline std::vector<std::vector<int>> complement_components_in(const Graph& g, const Bits& mask) {
    std::vector<std::vector<int>> comps;
    Bits unseen = mask;
    while (unseen.any()) {
        auto s = unseen.find_first();
        unseen.reset(s);
        std::vector<int> comp;
        std::vector<int> stack{static_cast<int>(s)};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            Bits reach = unseen - g.neighbors(v);
            for (auto u = reach.find_first(); u != Bits::npos; u = reach.find_next(u)) {
                unseen.reset(u);
                stack.push_back(static_cast<int>(u));
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Any K_r-factor of the masked vertices uses exactly count/r cliques, and each
// complement-connected block T receives exactly |T| clique slots. When the
// per-clique intersection range with T cannot reach |T|, no factor exists.
struct CountingObstruction {
    std::vector<int> block;
    int min_meet, max_meet;
    long long needed_cliques;
};

inline std::optional<CountingObstruction> find_counting_obstruction(
    const Graph& g, const Bits& mask, int r, const std::vector<std::vector<int>>& cliques) {
    long long total = static_cast<long long>(mask.count()) / r;
    for (auto& block : complement_components_in(g, mask)) {
        if (static_cast<int>(block.size()) == static_cast<int>(mask.count())) continue;
        Bits bmask = make_bits(g.order(), block);
        int mn = r + 1, mx = -1;
        for (const auto& c : cliques) {
            int meet = 0;
            for (int v : c)
                if (bmask.test(static_cast<std::size_t>(v))) ++meet;
            mn = std::min(mn, meet);
            mx = std::max(mx, meet);
        }
        if (cliques.empty()) {
            mn = 0;
            mx = 0;
        }
        long long size = static_cast<long long>(block.size());
        if (static_cast<long long>(mx) * total < size || static_cast<long long>(mn) * total > size)
            return CountingObstruction{block, mn, mx, total};
    }
    return std::nullopt;
}

struct CoverSearch {
    const Graph& g;
    const Bits& mask;
    std::vector<std::vector<int>> cliques;
    std::vector<Bits> clique_masks;
    std::vector<std::vector<int>> through;  // clique ids per vertex
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;
    std::vector<int> chosen;

    enum class Status { Found, None, Timeout };

    Status run() {
        through.assign(static_cast<std::size_t>(g.order()), {});
        clique_masks.reserve(cliques.size());
        for (std::size_t c = 0; c < cliques.size(); ++c) {
            clique_masks.push_back(make_bits(g.order(), cliques[c]));
            for (int v : cliques[c]) through[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
        }
        Bits covered(static_cast<std::size_t>(g.order()));
        return dfs(covered);
    }

    Status dfs(Bits& covered) {
        ++nodes;
        if (max_nodes && nodes > max_nodes) return Status::Timeout;
        Bits open = mask - covered;
        if (!open.any()) return Status::Found;
        // fail-first: the open vertex lying in the fewest still-usable cliques
        int pick = -1;
        std::size_t pick_count = std::numeric_limits<std::size_t>::max();
        for (auto v = open.find_first(); v != Bits::npos; v = open.find_next(v)) {
            std::size_t usable = 0;
            for (int c : through[v])
                if (!clique_masks[static_cast<std::size_t>(c)].intersects(covered)) ++usable;
            if (usable < pick_count) {
                pick_count = usable;
                pick = static_cast<int>(v);
                if (usable == 0) break;
            }
        }
        if (pick_count == 0) return Status::None;
        for (int c : through[static_cast<std::size_t>(pick)]) {
            const Bits& cm = clique_masks[static_cast<std::size_t>(c)];
            if (cm.intersects(covered)) continue;
            covered |= cm;
            chosen.push_back(c);
            Status st = dfs(covered);
            if (st != Status::None) return st;
            chosen.pop_back();
            covered -= cm;
        }
        return Status::None;
    }
};

}  // namespace detail

// Exact K_r-factor decision on the induced subgraph G[subset].
inline FactorCertificate has_kr_factor_in(const Graph& g, const Bits& subset, int r,
                                          FactorOptions opt = {}) {
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    FactorCertificate cert;
    cert.tiling.host = &g;
    long long count = static_cast<long long>(subset.count());
    if (count == 0) {
        cert.outcome = FactorOutcome::FactorFound;
        return cert;
    }
    if (count % r != 0) {
        cert.outcome = FactorOutcome::NoFactor;
        cert.reason = NoFactorReason::Divisibility;
        cert.detail = std::to_string(r) + " does not divide " + std::to_string(count);
        return cert;
    }
    auto comps = detail::components_in(g, subset);
    if (comps.size() > 1) {
        for (const auto& comp : comps) {
            if (static_cast<long long>(comp.size()) % r != 0) {
                cert.outcome = FactorOutcome::NoFactor;
                cert.reason = NoFactorReason::ComponentSize;
                cert.detail = "component of size " + std::to_string(comp.size()) +
                              " not divisible by " + std::to_string(r);
                return cert;
            }
        }
    }
    auto cliques = enumerate_cliques_in(g, subset, r);
    for (auto v = subset.find_first(); v != Bits::npos; v = subset.find_next(v)) {
        bool in_any = false;
        for (const auto& c : cliques)
            if (std::binary_search(c.begin(), c.end(), static_cast<int>(v))) {
                in_any = true;
                break;
            }
        if (!in_any) {
            cert.outcome = FactorOutcome::NoFactor;
            cert.reason = NoFactorReason::ExhaustedSearch;
            cert.detail = "vertex " + std::to_string(v + 1) + " lies in no K_" + std::to_string(r);
            return cert;
        }
    }
    if (opt.counting_prune) {
        if (auto obs = detail::find_counting_obstruction(g, subset, r, cliques)) {
            cert.outcome = FactorOutcome::NoFactor;
            cert.reason = NoFactorReason::CountingObstruction;
            std::ostringstream d;
            d << "block of size " << obs->block.size() << " meets every K_" << r << " in ["
              << obs->min_meet << "," << obs->max_meet << "] vertices, factor needs "
              << obs->needed_cliques << " cliques";
            cert.detail = d.str();
            return cert;
        }
    }
    detail::CoverSearch search{g, subset, std::move(cliques), {}, {}, opt.max_nodes, 0, {}};
    auto status = search.run();
    cert.nodes = search.nodes;
    if (status == detail::CoverSearch::Status::Found) {
        cert.outcome = FactorOutcome::FactorFound;
        for (int c : search.chosen)
            cert.tiling.placements.push_back(
                Placement{Shape::Kr, search.cliques[static_cast<std::size_t>(c)], {}, {}});
    } else if (status == detail::CoverSearch::Status::Timeout) {
        cert.outcome = FactorOutcome::Timeout;
        cert.detail = "node budget " + std::to_string(opt.max_nodes) + " exhausted";
    } else {
        cert.outcome = FactorOutcome::NoFactor;
        cert.reason = NoFactorReason::ExhaustedSearch;
        cert.detail = "exact cover search exhausted";
    }
    return cert;
}

inline FactorCertificate has_kr_factor(const Graph& g, int r, FactorOptions opt = {}) {
    Bits all(static_cast<std::size_t>(g.order()));
    all.set();
    return has_kr_factor_in(g, all, r, opt);
}

// ---------------------------------------------------------------------------
// Maximum K_r-tiling (exact branch-and-bound)

struct TilingOptions {
    int cap = 60;
    bool force = false;
};

namespace detail {

struct MaxTilingSearch {
    const Graph& g;
    int r;
    std::vector<std::vector<int>> best;
    std::vector<std::vector<int>> current;

    void rec(const Bits& remaining) {
        if (current.size() > best.size()) best = current;
        int possible = static_cast<int>(remaining.count()) / r;
        if (current.size() + static_cast<std::size_t>(possible) <= best.size()) return;
        auto v = remaining.find_first();
        if (v == Bits::npos) return;
        // place a clique through the lowest remaining vertex, or skip it
        for (auto& c : cliques_through(g, static_cast<int>(v), remaining, r)) {
            Bits next = remaining;
            for (int u : c) next.reset(static_cast<std::size_t>(u));
            current.push_back(c);
            rec(next);
            current.pop_back();
        }
        Bits skip = remaining;
        skip.reset(v);
        rec(skip);
    }
};

}  // namespace detail

inline Tiling max_kr_tiling(const Graph& g, int r, TilingOptions opt = {}) {
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    if (g.order() > opt.cap && !opt.force)
        throw InstanceTooLarge("max_kr_tiling: " + std::to_string(g.order()) +
                               " vertices exceed cap " + std::to_string(opt.cap));
    detail::MaxTilingSearch search{g, r, {}, {}};
    Bits all(static_cast<std::size_t>(g.order()));
    all.set();
    search.rec(all);
    Tiling t;
    t.host = &g;
    for (auto& c : search.best) t.placements.push_back(Placement{Shape::Kr, c, {}, {}});
    return t;
}

// ---------------------------------------------------------------------------
// Tiling verification

namespace detail {

inline bool is_complete_on(const Graph& g, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (!g.adjacent(verts[i], verts[j])) return false;
    return true;
}

// Gadget pattern for q1/q2 placements carrying full structure: `hs` must be
// disjoint K_r's covering the placement, and hs[i] must meet parts[j] in
// pattern[i][j] vertices.
inline bool check_gadget_pattern(const Graph& g, const std::vector<std::vector<int>>& parts,
                                 const std::vector<std::vector<int>>& hs,
                                 const std::vector<std::vector<int>>& pattern,
                                 const std::vector<int>& all_vertices) {
    if (parts.size() != pattern[0].size() || hs.size() != pattern.size()) return false;
    std::vector<int> hs_union;
    for (const auto& h : hs) {
        if (!is_complete_on(g, h)) return false;
        hs_union.insert(hs_union.end(), h.begin(), h.end());
    }
    std::sort(hs_union.begin(), hs_union.end());
    if (std::adjacent_find(hs_union.begin(), hs_union.end()) != hs_union.end()) return false;
    if (hs_union != all_vertices) return false;
    std::vector<int> parts_union;
    for (const auto& u : parts) parts_union.insert(parts_union.end(), u.begin(), u.end());
    std::sort(parts_union.begin(), parts_union.end());
    if (std::adjacent_find(parts_union.begin(), parts_union.end()) != parts_union.end()) return false;
    if (parts_union != all_vertices) return false;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            int meet = 0;
            for (int v : hs[i])
                if (std::binary_search(parts[j].begin(), parts[j].end(), v)) ++meet;
            if (meet != pattern[i][j]) return false;
        }
    return true;
}

inline bool check_q_placement(const Graph& g, const Placement& p, int copies) {
    if (p.vertices.empty() || static_cast<int>(p.vertices.size()) % copies != 0) return false;
    int r = static_cast<int>(p.vertices.size()) / copies;
    if (r < 3) return false;
    if (!p.kr_copies.empty() && !p.parts.empty()) {
        std::vector<std::vector<int>> pattern;
        if (copies == 2)
            pattern = {{2, r - 2}, {r - 2, 2}};
        else
            pattern = {{1, 1, r - 2}, {r - 2, 1, 1}, {1, r - 2, 1}};
        auto parts = p.parts;
        auto hs = p.kr_copies;
        for (auto& x : parts) std::sort(x.begin(), x.end());
        for (auto& x : hs) std::sort(x.begin(), x.end());
        return check_gadget_pattern(g, parts, hs, pattern, p.vertices);
    }
    // bare placement: a valid part split exists iff the vertices decompose
    // into `copies` disjoint K_r's
    Bits mask = make_bits(g.order(), p.vertices);
    return has_kr_factor_in(g, mask, r).found();
}

}  // namespace detail

struct TilingCheck {
    bool ok;
    std::string reason;
};

inline TilingCheck check_tiling(const Tiling& t) {
    if (!t.host && !t.multi_host) return {false, "tiling has no host"};
    if (!t.pairwise_disjoint()) return {false, "placements overlap or leave the host"};
    for (std::size_t i = 0; i < t.placements.size(); ++i) {
        const auto& p = t.placements[i];
        auto fail = [&](const std::string& why) {
            return TilingCheck{false, "placement " + std::to_string(i + 1) + ": " + why};
        };
        if (t.host) {
            const Graph& g = *t.host;
            switch (p.shape) {
                case Shape::Kr:
                    if (p.vertices.empty()) return fail("empty K_r placement");
                    if (!detail::is_complete_on(g, p.vertices)) return fail("K_r placement not complete");
                    break;
                case Shape::K3:
                    if (p.vertices.size() != 3) return fail("K_3 placement needs 3 vertices");
                    if (!detail::is_complete_on(g, p.vertices)) return fail("K_3 placement not a triangle");
                    break;
                case Shape::K2Double:
                    return fail("double-edge placement on a simple-graph host");
                case Shape::Q1:
                    if (!detail::check_q_placement(g, p, 2)) return fail("invalid Q_1 placement");
                    break;
                case Shape::Q2:
                    if (!detail::check_q_placement(g, p, 3)) return fail("invalid Q_2 placement");
                    break;
            }
        } else {
            const Multigraph2& r = *t.multi_host;
            switch (p.shape) {
                case Shape::K2Double:
                    if (p.vertices.size() != 2) return fail("double-edge placement needs 2 vertices");
                    if (r.mult(p.vertices[0], p.vertices[1]) != 2)
                        return fail("pair is not a double-edge");
                    break;
                case Shape::K3:
                case Shape::Kr: {
                    if (p.shape == Shape::K3 && p.vertices.size() != 3)
                        return fail("K_3 placement needs 3 vertices");
                    for (std::size_t a = 0; a < p.vertices.size(); ++a)
                        for (std::size_t b = a + 1; b < p.vertices.size(); ++b)
                            if (r.mult(p.vertices[a], p.vertices[b]) < 1)
                                return fail("placement not complete in the underlying graph");
                    break;
                }
                default:
                    return fail("gadget placement on a multigraph host");
            }
        }
    }
    return {true, ""};
}

inline bool verify_tiling(const Tiling& t) { return check_tiling(t).ok; }

}  // namespace kfactor
