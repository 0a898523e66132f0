#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "factgraph/errors.hpp"

namespace fg {

// Vertex labels live in a single global namespace: the same integer in two
// base graphs denotes the same vertex, which is what gives graph union its
// meaning.
using VertexLabel = std::uint32_t;

// A vertex of a factored graph: the flattened tuple of per-leaf labels.
using FactoredVertex = std::vector<VertexLabel>;

enum class Ordering { LT, EQ, GT };

// Dimension-major, then coordinatewise by label value. Tuples of different
// length are distinct objects and the shorter one sorts first.
inline Ordering vertex_order(const FactoredVertex& a, const FactoredVertex& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? Ordering::LT : Ordering::GT;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ordering::LT : Ordering::GT;
    }
    return Ordering::EQ;
}

inline bool vertex_less(const FactoredVertex& a, const FactoredVertex& b) {
    return vertex_order(a, b) == Ordering::LT;
}

struct VertexLess {
    bool operator()(const FactoredVertex& a, const FactoredVertex& b) const {
        return vertex_less(a, b);
    }
};

struct VertexHash {
    std::size_t operator()(const FactoredVertex& v) const {
        std::size_t h = v.size();
        for (VertexLabel x : v) h ^= x + 0x9e3779b9u + (h << 6) + (h >> 2);
        return h;
    }
};

// Tuple literal: "[3,0,7]".
inline std::string format_vertex(const FactoredVertex& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    s += ']';
    return s;
}

inline FactoredVertex parse_vertex(const std::string& text) {
    FactoredVertex out;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
    skip_ws();
    if (i >= text.size() || text[i] != '[')
        throw ValidationError("bad vertex tuple '" + text + "': expected '['");
    ++i;
    skip_ws();
    if (i < text.size() && text[i] == ']') throw ValidationError("empty vertex tuple");
    while (true) {
        skip_ws();
        if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
            throw ValidationError("bad vertex tuple '" + text + "': expected label");
        std::uint64_t val = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
            val = val * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (val > 0xffffffffULL) throw ValidationError("vertex label out of range in '" + text + "'");
            ++i;
        }
        out.push_back(static_cast<VertexLabel>(val));
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        if (i < text.size() && text[i] == ']') { ++i; break; }
        throw ValidationError("bad vertex tuple '" + text + "': expected ',' or ']'");
    }
    skip_ws();
    if (i != text.size()) throw ValidationError("trailing characters in vertex tuple '" + text + "'");
    if (out.empty()) throw ValidationError("empty vertex tuple");
    return out;
}

}  // namespace fg
