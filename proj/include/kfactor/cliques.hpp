#pragma once

#include "kfactor/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kfactor {

// Smallest-last (degeneracy) ordering; ties broken by vertex index.
inline std::vector<int> degeneracy_order(const Graph& g) {
    int n = g.order();
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    Bits alive(static_cast<std::size_t>(n));
    alive.set();
    for (int step = 0; step < n; ++step) {
        int best = -1, best_deg = std::numeric_limits<int>::max();
        for (auto v = alive.find_first(); v != Bits::npos; v = alive.find_next(v)) {
            int d = static_cast<int>((g.neighbors(static_cast<int>(v)) & alive).count());
            if (d < best_deg) {
                best_deg = d;
                best = static_cast<int>(v);
            }
        }
        order.push_back(best);
        alive.reset(static_cast<std::size_t>(best));
    }
    return order;
}

namespace detail {

// Ascending-index DFS over intersection masks. Emits r-cliques in
// lexicographic order; `limit` 0 means exhaustive.
template <class Sink>
bool clique_dfs(const Graph& g, std::vector<int>& chosen, const Bits& cand, int need,
                Sink&& sink) {
    if (need == 0) return sink(chosen);
    if (static_cast<int>(cand.count()) < need) return true;
    Bits rest = cand;
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
        rest.reset(v);
        chosen.push_back(static_cast<int>(v));
        Bits next = rest & g.neighbors(static_cast<int>(v));
        if (!clique_dfs(g, chosen, next, need - 1, sink)) {
            chosen.pop_back();
            return false;
        }
        chosen.pop_back();
    }
    return true;
}

}  // namespace detail

// All r-cliques with vertices drawn from `allowed`, in lexicographic order.
inline std::vector<std::vector<int>> enumerate_cliques_in(const Graph& g, const Bits& allowed,
                                                          int r, std::size_t limit = 0) {
    if (r < 1) throw std::invalid_argument("clique order must be >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(r));
    detail::clique_dfs(g, chosen, allowed, r, [&](const std::vector<int>& c) {
        out.push_back(c);
        return limit == 0 || out.size() < limit;
    });
    return out;
}

inline std::vector<std::vector<int>> enumerate_cliques(const Graph& g, int r,
                                                       std::size_t limit = 0) {
    if (r < 1 || r > std::max(g.order(), 1))
        throw std::invalid_argument("clique order out of range: " + std::to_string(r));
    Bits all(static_cast<std::size_t>(g.order()));
    all.set();
    return enumerate_cliques_in(g, all, r, limit);
}

// Lexicographically least r-clique inside `allowed`, if any.
inline std::optional<std::vector<int>> find_clique_in(const Graph& g, const Bits& allowed, int r) {
    if (r == 0) return std::vector<int>{};
    auto found = enumerate_cliques_in(g, allowed, r, 1);
    if (found.empty()) return std::nullopt;
    return found[0];
}

inline bool has_clique_in(const Graph& g, const Bits& allowed, int r) {
    if (r == 0) return true;
    return !enumerate_cliques_in(g, allowed, r, 1).empty();
}

// r-cliques through v, restricted to `allowed` (v need not lie in `allowed`).
inline std::vector<std::vector<int>> cliques_through(const Graph& g, int v, const Bits& allowed,
                                                     int r, std::size_t limit = 0) {
    if (r < 1) throw std::invalid_argument("clique order must be >= 1");
    Bits cand = allowed & g.neighbors(v);
    std::vector<std::vector<int>> out;
    std::vector<int> chosen{v};
    detail::clique_dfs(g, chosen, cand, r - 1, [&](const std::vector<int>& c) {
        auto sorted = c;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        return limit == 0 || out.size() < limit;
    });
    return out;
}

// Maximum clique, branch-and-bound with a greedy-coloring bound. This is the
// workhorse behind alpha_2 (complement route) and stays exact at desk scale.
namespace detail {

inline void color_sort(const Graph& g, const std::vector<int>& cand, std::vector<int>& ordered,
                       std::vector<int>& bounds) {
    ordered.clear();
    bounds.clear();
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
        bool placed = false;
        for (auto& cls : classes) {
            bool clash = false;
            for (int u : cls)
                if (g.adjacent(u, v)) {
                    clash = true;
                    break;
                }
            if (!clash) {
                cls.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({v});
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int v : classes[c]) {
            ordered.push_back(v);
            bounds.push_back(static_cast<int>(c) + 1);
        }
}

inline void max_clique_rec(const Graph& g, std::vector<int>& current, std::vector<int>& cand,
                           std::vector<int>& best) {
    std::vector<int> ordered, bounds;
    color_sort(g, cand, ordered, bounds);
    for (int i = static_cast<int>(ordered.size()) - 1; i >= 0; --i) {
        if (current.size() + static_cast<std::size_t>(bounds[static_cast<std::size_t>(i)]) <=
            best.size())
            return;
        int v = ordered[static_cast<std::size_t>(i)];
        current.push_back(v);
        std::vector<int> next;
        for (int j = 0; j < i; ++j) {
            int u = ordered[static_cast<std::size_t>(j)];
            if (g.adjacent(u, v)) next.push_back(u);
        }
        if (current.size() + next.size() > best.size()) {
            if (next.empty()) {
                if (current.size() > best.size()) best = current;
            } else {
                max_clique_rec(g, current, next, best);
            }
        }
        current.pop_back();
    }
}

}  // namespace detail

inline std::vector<int> max_clique(const Graph& g) {
    if (g.order() == 0) return {};
    std::vector<int> cand(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) cand[static_cast<std::size_t>(v)] = v;
    std::stable_sort(cand.begin(), cand.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<int> current, best;
    detail::max_clique_rec(g, current, cand, best);
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace kfactor
