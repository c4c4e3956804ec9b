#pragma once

#include <boost/rational.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kfactor {

// Exact rational arithmetic for densities, thresholds and closed-form bounds.
// int64 components are plenty: the largest products here are n^2-scale.
using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Accepts "p/q", plain integers, and finite decimals ("0.25" -> 1/4).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return {num, den};
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return {std::stoll(text), 1};
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    if (tail.size() > 15) tail.resize(15);
    for (char c : tail)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad decimal literal: " + text);
    bool neg = !head.empty() && head[0] == '-';
    long long whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    long long den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    long long frac = tail.empty() ? 0 : std::stoll(tail);
    Rational r(std::llabs(whole), 1);
    r += Rational(frac, den);
    return neg ? -r : r;
}

inline double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace kfactor
