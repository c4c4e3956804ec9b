#pragma once

#include "kfactor/graph.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfactor {

struct ParseError : std::runtime_error {
    ParseError(int line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
    int line;
};

namespace detail {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// Splits into whitespace-separated tokens, dropping blank and `c` comment lines.
inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0] == "c") continue;
        lines.push_back({number, std::move(tokens)});
    }
    return lines;
}

inline long long parse_int(const Line& line, std::size_t pos, const char* what) {
    if (pos >= line.tokens.size()) throw ParseError(line.number, std::string("missing ") + what);
    try {
        std::size_t used = 0;
        long long v = std::stoll(line.tokens[pos], &used);
        if (used != line.tokens[pos].size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, std::string("bad ") + what + ": '" + line.tokens[pos] + "'");
    }
}

// 1-indexed vertex token -> 0-indexed vertex.
inline int parse_vertex(const Line& line, std::size_t pos, int n) {
    long long v = parse_int(line, pos, "vertex");
    if (v < 1 || v > n)
        throw ParseError(line.number, "vertex index out of range: " + std::to_string(v) +
                                          " (graph has " + std::to_string(n) + " vertices)");
    return static_cast<int>(v - 1);
}

}  // namespace detail

// Graph file: `c` comments, `p edge <n> <m>`, then exactly m lines `e <u> <v>`.
inline Graph parse_graph(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 'p edge' header");
    const auto& header = lines[0];
    if (header.tokens[0] != "p" || header.tokens.size() < 4 || header.tokens[1] != "edge")
        throw ParseError(header.number, "malformed header, expected 'p edge <n> <m>'");
    long long n = detail::parse_int(header, 2, "vertex count");
    long long m = detail::parse_int(header, 3, "edge count");
    if (n < 0 || m < 0) throw ParseError(header.number, "negative count in header");
    Graph g(static_cast<int>(n));
    std::size_t edge_lines = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.tokens[0] != "e")
            throw ParseError(line.number, "expected edge line 'e <u> <v>', got '" + line.tokens[0] + "'");
        int u = detail::parse_vertex(line, 1, g.order());
        int v = detail::parse_vertex(line, 2, g.order());
        if (u == v) throw ParseError(line.number, "loop edge at vertex " + std::to_string(u + 1));
        if (!g.add_edge(u, v)) throw ParseError(line.number, "duplicate edge");
        ++edge_lines;
    }
    if (edge_lines != static_cast<std::size_t>(m))
        throw ParseError(lines.back().number,
                         "header declares " + std::to_string(m) + " edges but " +
                             std::to_string(edge_lines) + " were given");
    return g;
}

inline std::string serialize(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.order() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

// Multigraph file: `p multi <k> <m>`, then m lines `e <u> <v> <mult>` with mult in {1,2}.
inline Multigraph2 parse_multigraph(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 'p multi' header");
    const auto& header = lines[0];
    if (header.tokens[0] != "p" || header.tokens.size() < 4 || header.tokens[1] != "multi")
        throw ParseError(header.number, "malformed header, expected 'p multi <k> <m>'");
    long long k = detail::parse_int(header, 2, "vertex count");
    long long m = detail::parse_int(header, 3, "edge count");
    if (k < 0 || m < 0) throw ParseError(header.number, "negative count in header");
    Multigraph2 r(static_cast<int>(k));
    std::size_t edge_lines = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.tokens[0] != "e")
            throw ParseError(line.number, "expected edge line 'e <u> <v> <mult>'");
        int u = detail::parse_vertex(line, 1, r.order());
        int v = detail::parse_vertex(line, 2, r.order());
        long long mult = detail::parse_int(line, 3, "multiplicity");
        if (u == v) throw ParseError(line.number, "loop edge at vertex " + std::to_string(u + 1));
        if (mult < 1 || mult > 2)
            throw ParseError(line.number, "multiplicity must be 1 or 2, got " + std::to_string(mult));
        if (r.mult(u, v) != 0) throw ParseError(line.number, "duplicate edge");
        r.set_mult(u, v, static_cast<int>(mult));
        ++edge_lines;
    }
    if (edge_lines != static_cast<std::size_t>(m))
        throw ParseError(lines.back().number,
                         "header declares " + std::to_string(m) + " edges but " +
                             std::to_string(edge_lines) + " were given");
    return r;
}

inline std::string serialize(const Multigraph2& r) {
    std::ostringstream out;
    out << "p multi " << r.order() << " " << r.edge_count() << "\n";
    for (int i = 0; i < r.order(); ++i)
        for (int j = i + 1; j < r.order(); ++j)
            if (r.mult(i, j) > 0) out << "e " << i + 1 << " " << j + 1 << " " << r.mult(i, j) << "\n";
    return out.str();
}

// Partition file: `p part <n> <k>`, then k cluster lines of 1-indexed vertices,
// then an optional `x <list>` line for the exceptional set.
inline Partition parse_partition(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 'p part' header");
    const auto& header = lines[0];
    if (header.tokens[0] != "p" || header.tokens.size() < 4 || header.tokens[1] != "part")
        throw ParseError(header.number, "malformed header, expected 'p part <n> <k>'");
    long long n = detail::parse_int(header, 2, "vertex count");
    long long k = detail::parse_int(header, 3, "cluster count");
    if (n < 0 || k < 0) throw ParseError(header.number, "negative count in header");
    Partition p;
    p.n = static_cast<int>(n);
    std::size_t i = 1;
    for (long long c = 0; c < k; ++c, ++i) {
        if (i >= lines.size())
            throw ParseError(lines.back().number, "expected " + std::to_string(k) + " cluster lines");
        const auto& line = lines[i];
        if (line.tokens[0] == "x") throw ParseError(line.number, "exceptional line before all clusters");
        std::vector<int> cluster;
        for (std::size_t pos = 0; pos < line.tokens.size(); ++pos)
            cluster.push_back(detail::parse_vertex(line, pos, p.n));
        std::sort(cluster.begin(), cluster.end());
        p.clusters.push_back(std::move(cluster));
    }
    if (i < lines.size()) {
        const auto& line = lines[i];
        if (line.tokens[0] != "x")
            throw ParseError(line.number, "unexpected trailing line (only 'x <list>' allowed)");
        for (std::size_t pos = 1; pos < line.tokens.size(); ++pos)
            p.exceptional.push_back(detail::parse_vertex(line, pos, p.n));
        std::sort(p.exceptional.begin(), p.exceptional.end());
        ++i;
    }
    if (i < lines.size()) throw ParseError(lines[i].number, "unexpected trailing line");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(header.number, e.what());
    }
    return p;
}

inline std::string serialize(const Partition& p) {
    std::ostringstream out;
    out << "p part " << p.n << " " << p.cluster_count() << "\n";
    for (const auto& cluster : p.clusters) {
        for (std::size_t i = 0; i < cluster.size(); ++i) out << (i ? " " : "") << cluster[i] + 1;
        out << "\n";
    }
    if (!p.exceptional.empty()) {
        out << "x";
        for (int v : p.exceptional) out << " " << v + 1;
        out << "\n";
    }
    return out.str();
}

// Tiling file: one placement per line, `<shape-tag> <v1> <v2> ...` (1-indexed).
inline Tiling parse_tiling(const std::string& text, const Graph* host = nullptr,
                           const Multigraph2* multi_host = nullptr) {
    Tiling t;
    t.host = host;
    t.multi_host = multi_host;
    int n = host ? host->order() : (multi_host ? multi_host->order() : std::numeric_limits<int>::max());
    for (const auto& line : detail::tokenize(text)) {
        auto shape = shape_from_tag(line.tokens[0]);
        if (!shape) throw ParseError(line.number, "unknown shape tag '" + line.tokens[0] + "'");
        Placement p;
        p.shape = *shape;
        for (std::size_t pos = 1; pos < line.tokens.size(); ++pos)
            p.vertices.push_back(detail::parse_vertex(line, pos, n));
        std::sort(p.vertices.begin(), p.vertices.end());
        t.placements.push_back(std::move(p));
    }
    return t;
}

inline std::string serialize(const Tiling& t) {
    std::ostringstream out;
    for (const auto& p : t.placements) {
        out << shape_tag(p.shape);
        for (int v : p.vertices) out << " " << v + 1;
        out << "\n";
    }
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace kfactor
