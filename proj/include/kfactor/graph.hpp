#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

using Bits = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<int> bits_to_vector(const Bits& b) {
    std::vector<int> out;
    out.reserve(b.count());
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

inline Bits make_bits(int n, std::span<const int> verts) {
    Bits b(static_cast<std::size_t>(n));
    for (int v : verts) {
        if (v < 0 || v >= n) throw std::out_of_range("vertex out of range: " + std::to_string(v));
        b.set(static_cast<std::size_t>(v));
    }
    return b;
}

inline Bits make_bits(int n, const std::vector<int>& verts) {
    return make_bits(n, std::span<const int>(verts));
}

// Simple undirected graph on vertices 0..n-1, adjacency as bitset rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        adj_.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
    }

    int order() const { return n_; }
    std::int64_t edge_count() const { return m_; }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    // Returns false when the edge was already present.
    bool add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
        if (adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v))) return false;
        adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
        ++m_;
        return true;
    }

    const Bits& neighbors(int u) const {
        check_vertex(u);
        return adj_[static_cast<std::size_t>(u)];
    }

    int degree(int u) const { return static_cast<int>(neighbors(u).count()); }

    int min_degree() const {
        if (n_ == 0) return 0;
        int best = std::numeric_limits<int>::max();
        for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
        return best;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (auto v = adj_[static_cast<std::size_t>(u)].find_next(static_cast<std::size_t>(u));
                 v != Bits::npos; v = adj_[static_cast<std::size_t>(u)].find_next(v))
                out.emplace_back(u, static_cast<int>(v));
        return out;
    }

    Graph complement() const {
        Graph g(n_);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (!adjacent(u, v)) g.add_edge(u, v);
        return g;
    }

    // Induced subgraph; vertex i of the result is verts[i].
    Graph induced(std::span<const int> verts) const {
        Graph g(static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (adjacent(verts[i], verts[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }
    Graph induced(const std::vector<int>& verts) const { return induced(std::span<const int>(verts)); }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static Graph disjoint_union(const Graph& a, const Graph& b) {
        Graph g(a.order() + b.order());
        for (auto [u, v] : a.edges()) g.add_edge(u, v);
        for (auto [u, v] : b.edges()) g.add_edge(a.order() + u, a.order() + v);
        return g;
    }

    bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range: " + std::to_string(v));
    }

    int n_ = 0;
    std::int64_t m_ = 0;
    std::vector<Bits> adj_;
};

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    Bits seen(static_cast<std::size_t>(g.order()));
    for (int s = 0; s < g.order(); ++s) {
        if (seen.test(static_cast<std::size_t>(s))) continue;
        std::vector<int> comp;
        std::vector<int> stack{s};
        seen.set(static_cast<std::size_t>(s));
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            const Bits& nb = g.neighbors(v);
            for (auto u = nb.find_first(); u != Bits::npos; u = nb.find_next(u)) {
                if (!seen.test(u)) {
                    seen.set(u);
                    stack.push_back(static_cast<int>(u));
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Components of the complement graph, without materializing it.
inline std::vector<std::vector<int>> complement_components(const Graph& g) {
    int n = g.order();
    std::vector<std::vector<int>> comps;
    Bits unseen(static_cast<std::size_t>(n));
    unseen.set();
    while (unseen.any()) {
        int s = static_cast<int>(unseen.find_first());
        unseen.reset(static_cast<std::size_t>(s));
        std::vector<int> comp;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            Bits reach = unseen & ~g.neighbors(v);
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

// Intersection of the neighborhoods of S, excluding S itself. S must be nonempty.
inline Bits common_neighborhood_mask(const Graph& g, std::span<const int> s) {
    if (s.empty()) throw std::invalid_argument("common_neighborhood: empty set");
    Bits acc = g.neighbors(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) acc &= g.neighbors(s[i]);
    for (int v : s) acc.reset(static_cast<std::size_t>(v));
    return acc;
}

inline std::vector<int> common_neighborhood(const Graph& g, const std::vector<int>& s) {
    return bits_to_vector(common_neighborhood_mask(g, std::span<const int>(s)));
}

// Length of a shortest cycle; INT_MAX when the graph is a forest.
inline int girth(const Graph& g) {
    int best = std::numeric_limits<int>::max();
    int n = g.order();
    std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        q.push(s);
        dist[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            const Bits& nb = g.neighbors(v);
            for (auto uu = nb.find_first(); uu != Bits::npos; uu = nb.find_next(uu)) {
                int u = static_cast<int>(uu);
                if (dist[static_cast<std::size_t>(u)] == -1) {
                    dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                    parent[static_cast<std::size_t>(u)] = v;
                    q.push(u);
                } else if (u != parent[static_cast<std::size_t>(v)]) {
                    best = std::min(best, dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(u)] + 1);
                }
            }
        }
    }
    return best;
}

// Multiplicity-{0,1,2} multigraph; the reduced-graph object.
class Multigraph2 {
public:
    Multigraph2() = default;
    explicit Multigraph2(int k) : k_(k) {
        if (k < 0) throw std::invalid_argument("negative vertex count");
        mult_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
        simple_.assign(static_cast<std::size_t>(k), Bits(static_cast<std::size_t>(k)));
        dbl_.assign(static_cast<std::size_t>(k), Bits(static_cast<std::size_t>(k)));
    }

    int order() const { return k_; }

    int mult(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        if (i == j) return 0;
        return mult_[idx(i, j)];
    }

    void set_mult(int i, int j, int m) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::invalid_argument("loop in multigraph");
        if (m < 0 || m > 2) throw std::invalid_argument("multiplicity must be 0, 1 or 2");
        mult_[idx(i, j)] = static_cast<std::uint8_t>(m);
        mult_[idx(j, i)] = static_cast<std::uint8_t>(m);
        simple_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j), m >= 1);
        simple_[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i), m >= 1);
        dbl_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j), m == 2);
        dbl_[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i), m == 2);
    }

    // Weighted degree: doubles count twice.
    int weighted_degree(int i) const {
        check_vertex(i);
        int d = 0;
        for (int j = 0; j < k_; ++j)
            if (j != i) d += mult_[idx(i, j)];
        return d;
    }

    int simple_degree(int i) const { return static_cast<int>(simple_neighbors(i).count()); }

    const Bits& simple_neighbors(int i) const {
        check_vertex(i);
        return simple_[static_cast<std::size_t>(i)];
    }
    const Bits& double_neighbors(int i) const {
        check_vertex(i);
        return dbl_[static_cast<std::size_t>(i)];
    }

    std::int64_t edge_count() const {
        std::int64_t m = 0;
        for (int i = 0; i < k_; ++i)
            for (int j = i + 1; j < k_; ++j)
                if (mult_[idx(i, j)] > 0) ++m;
        return m;
    }

    bool operator==(const Multigraph2& other) const { return k_ == other.k_ && mult_ == other.mult_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= k_) throw std::out_of_range("vertex out of range: " + std::to_string(v));
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j);
    }

    int k_ = 0;
    std::vector<std::uint8_t> mult_;
    std::vector<Bits> simple_;
    std::vector<Bits> dbl_;
};

// Ordered disjoint clusters over 0..n-1, plus an optional exceptional set.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> clusters;
    std::vector<int> exceptional;

    int cluster_count() const { return static_cast<int>(clusters.size()); }

    // cluster index per vertex; -1 marks the exceptional set.
    std::vector<int> membership() const {
        std::vector<int> mem(static_cast<std::size_t>(n), -2);
        for (int c = 0; c < cluster_count(); ++c)
            for (int v : clusters[static_cast<std::size_t>(c)]) mem[static_cast<std::size_t>(v)] = c;
        for (int v : exceptional) mem[static_cast<std::size_t>(v)] = -1;
        return mem;
    }

    void validate() const {
        Bits seen(static_cast<std::size_t>(n));
        auto take = [&](int v, const char* what) {
            if (v < 0 || v >= n)
                throw std::invalid_argument(std::string(what) + ": vertex out of range: " + std::to_string(v));
            if (seen.test(static_cast<std::size_t>(v)))
                throw std::invalid_argument(std::string(what) + ": vertex repeated: " + std::to_string(v));
            seen.set(static_cast<std::size_t>(v));
        };
        for (const auto& cluster : clusters) {
            if (cluster.empty()) throw std::invalid_argument("empty cluster");
            for (int v : cluster) take(v, "cluster");
        }
        for (int v : exceptional) take(v, "exceptional set");
        if (static_cast<int>(seen.count()) != n)
            throw std::invalid_argument("partition does not cover all vertices");
    }
};

// Cluster-wise intersection counts of a vertex set.
using IndexVector = std::vector<int>;

inline IndexVector index_vector(const std::vector<int>& s, const Partition& p) {
    IndexVector coords(static_cast<std::size_t>(p.cluster_count()), 0);
    auto mem = p.membership();
    for (int v : s) {
        if (v < 0 || v >= p.n) throw std::out_of_range("vertex out of range: " + std::to_string(v));
        int c = mem[static_cast<std::size_t>(v)];
        if (c == -1)
            throw std::invalid_argument("vertex " + std::to_string(v) + " lies in the exceptional set");
        if (c < 0) throw std::invalid_argument("vertex " + std::to_string(v) + " not covered by the partition");
        ++coords[static_cast<std::size_t>(c)];
    }
    return coords;
}

inline IndexVector unit_vector(int k, int j) {
    IndexVector u(static_cast<std::size_t>(k), 0);
    u[static_cast<std::size_t>(j)] = 1;
    return u;
}

enum class Shape { Kr, K2Double, K3, Q1, Q2 };

inline std::string shape_tag(Shape s) {
    switch (s) {
        case Shape::Kr: return "kr";
        case Shape::K2Double: return "k2=";
        case Shape::K3: return "k3";
        case Shape::Q1: return "q1";
        case Shape::Q2: return "q2";
    }
    return "?";
}

inline std::optional<Shape> shape_from_tag(const std::string& t) {
    if (t == "kr") return Shape::Kr;
    if (t == "k2=") return Shape::K2Double;
    if (t == "k3") return Shape::K3;
    if (t == "q1") return Shape::Q1;
    if (t == "q2") return Shape::Q2;
    return std::nullopt;
}

struct Placement {
    Shape shape;
    std::vector<int> vertices;  // ascending
    // For q1/q2 placements found by the embedders: the part split (U_i) and the
    // K_r decomposition (H_i). Empty for placements read back from files.
    std::vector<std::vector<int>> parts;
    std::vector<std::vector<int>> kr_copies;
};

struct Tiling {
    const Graph* host = nullptr;
    const Multigraph2* multi_host = nullptr;
    std::vector<Placement> placements;

    int host_order() const {
        if (host) return host->order();
        if (multi_host) return multi_host->order();
        return 0;
    }

    Bits covered() const {
        Bits c(static_cast<std::size_t>(host_order()));
        for (const auto& p : placements)
            for (int v : p.vertices)
                if (v >= 0 && v < host_order()) c.set(static_cast<std::size_t>(v));
        return c;
    }

    bool pairwise_disjoint() const {
        Bits c(static_cast<std::size_t>(host_order()));
        for (const auto& p : placements)
            for (int v : p.vertices) {
                if (v < 0 || v >= host_order()) return false;
                if (c.test(static_cast<std::size_t>(v))) return false;
                c.set(static_cast<std::size_t>(v));
            }
        return true;
    }

    std::vector<int> uncovered() const {
        Bits c = covered();
        c.flip();
        return bits_to_vector(c);
    }
};

}  // namespace kfactor
