#pragma once

#include "kfactor/graph.hpp"
#include "kfactor/rng.hpp"

namespace fixtures {

inline kfactor::Graph petersen() {
    kfactor::Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);            // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5);    // inner pentagram
        g.add_edge(i, 5 + i);                  // spokes
    }
    return g;
}

inline kfactor::Graph cycle(int n) {
    kfactor::Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline kfactor::Graph two_cliques(int a, int b) {
    return kfactor::Graph::disjoint_union(kfactor::Graph::complete(a),
                                          kfactor::Graph::complete(b));
}

inline kfactor::Graph complete_multipartite(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    kfactor::Graph g(n);
    int offset_u = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        int offset_v = offset_u + sizes[i];
        for (std::size_t j = i + 1; j < sizes.size(); ++j) {
            for (int u = 0; u < sizes[i]; ++u)
                for (int v = 0; v < sizes[j]; ++v) g.add_edge(offset_u + u, offset_v + v);
            offset_v += sizes[j];
        }
        offset_u += sizes[i];
    }
    return g;
}

inline kfactor::Graph random_graph(kfactor::Rng& rng, int n, double p) {
    kfactor::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

}  // namespace fixtures
