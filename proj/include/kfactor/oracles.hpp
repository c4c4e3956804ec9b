#pragma once

#include "kfactor/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

// Naive reference implementations, deliberately independent of the search
// code in verify.hpp/cliques.hpp. They exist to cross-check the fast paths
// and are only usable at very small n.
namespace kfactor::oracle {

namespace detail {

inline bool block_is_clique(const Graph& g, const std::vector<int>& block) {
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j)
            if (!g.adjacent(block[i], block[j])) return false;
    return true;
}

// Enumerates every partition of `rest` into r-blocks; calls visit(blocks) per
// partition, stopping when visit returns false.
template <class Visit>
bool partitions_into_r_sets(std::vector<int>& rest, int r, std::vector<std::vector<int>>& blocks,
                            Visit&& visit) {
    if (rest.empty()) return visit(blocks);
    int anchor = rest[0];
    std::vector<int> pool(rest.begin() + 1, rest.end());
    std::vector<int> pick(static_cast<std::size_t>(r - 1));
    std::vector<int> idx(static_cast<std::size_t>(r - 1));
    // choose r-1 companions for the anchor, in ascending index order
    auto choose = [&](auto&& self, int start, int depth) -> bool {
        if (depth == r - 1) {
            std::vector<int> block{anchor};
            for (int i = 0; i < r - 1; ++i) block.push_back(pick[static_cast<std::size_t>(i)]);
            std::vector<int> remaining;
            for (int v : pool)
                if (std::find(block.begin(), block.end(), v) == block.end()) remaining.push_back(v);
            blocks.push_back(block);
            bool go_on = partitions_into_r_sets(remaining, r, blocks, visit);
            blocks.pop_back();
            return go_on;
        }
        for (int i = start; i < static_cast<int>(pool.size()); ++i) {
            pick[static_cast<std::size_t>(depth)] = pool[static_cast<std::size_t>(i)];
            if (!self(self, i + 1, depth + 1)) return false;
        }
        return true;
    };
    (void)idx;
    return choose(choose, 0, 0);
}

}  // namespace detail

// Decides a K_r-factor by enumerating all partitions of V into r-sets.
inline bool naive_has_kr_factor(const Graph& g, int r) {
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    if (g.order() % r != 0) return false;
    if (g.order() == 0) return true;
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) all[static_cast<std::size_t>(v)] = v;
    bool found = false;
    std::vector<std::vector<int>> blocks;
    detail::partitions_into_r_sets(all, r, blocks, [&](const std::vector<std::vector<int>>& bs) {
        for (const auto& b : bs)
            if (!detail::block_is_clique(g, b)) return true;  // keep searching
        found = true;
        return false;
    });
    return found;
}

// Counts r-cliques by filtering all r-subsets.
inline long long naive_count_cliques(const Graph& g, int r) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    long long count = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == r) {
            if (detail::block_is_clique(g, pick)) ++count;
            return;
        }
        for (int v = start; v < g.order(); ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

// Maximum K_l-free subset size by scanning all vertex subsets (n <= 24).
inline int naive_alpha_ell(const Graph& g, int ell) {
    if (ell < 2) throw std::invalid_argument("ell must be >= 2");
    if (g.order() > 24) throw std::invalid_argument("naive_alpha_ell: n too large");
    int n = g.order();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) verts.push_back(v);
        // contains a K_l?
        bool has = false;
        std::vector<int> pick;
        auto rec = [&](auto&& self, int start) -> void {
            if (has) return;
            if (static_cast<int>(pick.size()) == ell) {
                if (detail::block_is_clique(g, pick)) has = true;
                return;
            }
            for (std::size_t i = static_cast<std::size_t>(start); i < verts.size(); ++i) {
                pick.push_back(verts[i]);
                self(self, static_cast<int>(i) + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        if (!has) best = size;
    }
    return best;
}

// Maximum number of vertex-disjoint r-cliques, by complete branch on the
// lowest vertex (cover it with any r-subset clique, or discard it).
inline int naive_max_kr_tiling_size(const Graph& g, int r) {
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    auto rec = [&](auto&& self, std::vector<int> rest) -> int {
        if (static_cast<int>(rest.size()) < r) return 0;
        int anchor = rest[0];
        std::vector<int> pool(rest.begin() + 1, rest.end());
        int best = self(self, pool);  // discard the anchor
        std::vector<int> pick;
        auto choose = [&](auto&& chooser, int start) -> void {
            if (static_cast<int>(pick.size()) == r - 1) {
                std::vector<int> block{anchor};
                block.insert(block.end(), pick.begin(), pick.end());
                if (!detail::block_is_clique(g, block)) return;
                std::vector<int> remaining;
                for (int v : pool)
                    if (std::find(pick.begin(), pick.end(), v) == pick.end()) remaining.push_back(v);
                best = std::max(best, 1 + self(self, remaining));
                return;
            }
            for (int i = start; i < static_cast<int>(pool.size()); ++i) {
                pick.push_back(pool[static_cast<std::size_t>(i)]);
                chooser(chooser, i + 1);
                pick.pop_back();
            }
        };
        choose(choose, 0);
        return best;
    };
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) all[static_cast<std::size_t>(v)] = v;
    return rec(rec, all);
}

}  // namespace kfactor::oracle
