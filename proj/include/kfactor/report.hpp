#pragma once

#include "kfactor/rational.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace kfactor {

// Line-oriented `key: value` report. The first line always replays the full
// run configuration; no timestamps or other nondeterministic content belong
// here, so identical configurations produce byte-identical reports.
class Report {
public:
    explicit Report(const std::string& config) { lines_.push_back("config: " + config); }

    void kv(const std::string& key, const std::string& value) {
        lines_.push_back(key + ": " + value);
    }
    void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, std::size_t value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, bool value) { kv(key, value ? std::string("true") : "false"); }
    void kv(const std::string& key, const Rational& value) { kv(key, to_string(value)); }

    void raw(const std::string& line) { lines_.push_back(line); }

    std::string str() const {
        std::ostringstream out;
        for (const auto& line : lines_) out << line << "\n";
        return out.str();
    }

private:
    std::vector<std::string> lines_;
};

// 1-indexed, space-separated vertex list for reports and CLI round trips.
inline std::string format_vertices(const std::vector<int>& verts) {
    std::ostringstream out;
    for (std::size_t i = 0; i < verts.size(); ++i) out << (i ? " " : "") << verts[i] + 1;
    return out.str();
}

inline std::vector<int> parse_vertex_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> out;
    long long v;
    while (in >> v) {
        if (v < 1) throw std::invalid_argument("vertex lists are 1-indexed, got " + std::to_string(v));
        out.push_back(static_cast<int>(v - 1));
    }
    return out;
}

}  // namespace kfactor
