#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "factgraph/adjacency.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/materialize.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

enum class ReachMethod { Implicit, Explicit, Auto };

namespace detail {

inline bool base_reach(const BaseGraph& g, VertexLabel src, VertexLabel dst) {
    if (!g.has_vertex(src) || !g.has_vertex(dst)) return false;
    std::unordered_set<VertexLabel> seen{src};
    std::deque<VertexLabel> frontier{src};
    while (!frontier.empty()) {
        VertexLabel v = frontier.front();
        frontier.pop_front();
        if (v == dst) return true;
        for (VertexLabel w : g.out(v))
            if (seen.insert(w).second) frontier.push_back(w);
    }
    return false;
}

inline bool explicit_reach(const ExplicitGraph& g, const FactoredVertex& src,
                           const FactoredVertex& dst) {
    auto si = g.index_of(src);
    auto di = g.index_of(dst);
    if (!si || !di) return false;
    std::vector<std::vector<std::uint32_t>> out(g.size());
    for (auto [u, v] : g.edges()) out[u].push_back(v);
    std::vector<bool> seen(g.size(), false);
    std::deque<std::uint32_t> frontier{*si};
    seen[*si] = true;
    while (!frontier.empty()) {
        std::uint32_t v = frontier.front();
        frontier.pop_front();
        if (v == *di) return true;
        for (std::uint32_t w : out[v])
            if (!seen[w]) {
                seen[w] = true;
                frontier.push_back(w);
            }
    }
    return false;
}

// BFS over the implicit graph. Tuples are packed into 64-bit keys whenever
// the label width allows it, which keeps the visited set and queue compact on
// large compiled instances.
inline bool implicit_reach(const FormulaView& view, const FactoredVertex& src,
                           const FactoredVertex& dst, std::size_t state_cap) {
    if (src == dst) return true;
    VertexLabel max_label = 0;
    for (const BaseGraph& g : view.doc().graphs())
        for (VertexLabel v : g.vertices()) max_label = std::max(max_label, v);
    unsigned label_bits = std::max(1u, static_cast<unsigned>(std::bit_width(max_label)));
    std::size_t dim = src.size();

    auto expand_guard = [&](std::size_t visited) {
        if (visited > state_cap)
            throw CapExceeded("BFS state cap exceeded (" + std::to_string(state_cap) + ")");
    };

    if (label_bits * dim <= 64) {
        auto pack = [&](const FactoredVertex& v) {
            std::uint64_t key = 0;
            for (VertexLabel x : v) key = (key << label_bits) | x;
            return key;
        };
        std::uint64_t goal = pack(dst);
        std::unordered_set<std::uint64_t> seen{pack(src)};
        std::deque<FactoredVertex> frontier{src};
        while (!frontier.empty()) {
            FactoredVertex v = std::move(frontier.front());
            frontier.pop_front();
            for (FactoredVertex& w : view.out_neighbors(v)) {
                std::uint64_t key = pack(w);
                if (key == goal) return true;
                if (seen.insert(key).second) {
                    expand_guard(seen.size());
                    frontier.push_back(std::move(w));
                }
            }
        }
        return false;
    }

    std::unordered_set<FactoredVertex, VertexHash> seen{src};
    std::deque<FactoredVertex> frontier{src};
    while (!frontier.empty()) {
        FactoredVertex v = std::move(frontier.front());
        frontier.pop_front();
        for (FactoredVertex& w : view.out_neighbors(v)) {
            if (w == dst) return true;
            if (seen.insert(w).second) {
                expand_guard(seen.size());
                frontier.push_back(std::move(w));
            }
        }
    }
    return false;
}

}  // namespace detail

// Directed reachability from src to dst. Both endpoints must be vertices of
// the formula; endpoints of different dimensions are unreachable from each
// other (no edge crosses dimensions) and answer false.
//
// Auto picks a fast path when the whole formula is one m-ary Cartesian
// product of leaves (coordinatewise reachability) or one m-ary union of
// leaves (materialize the small union), and falls back to the implicit BFS.
inline bool reach(const FormulaView& view, const FactoredVertex& src, const FactoredVertex& dst,
                  ReachMethod method = ReachMethod::Auto,
                  std::size_t state_cap = kDefaultStateCap,
                  std::size_t vertex_cap = kDefaultVertexCap) {
    if (!view.is_vertex(src))
        throw ValidationError("source " + format_vertex(src) + " is not a vertex of the formula");
    if (!view.is_vertex(dst))
        throw ValidationError("target " + format_vertex(dst) + " is not a vertex of the formula");
    if (src.size() != dst.size()) return false;

    switch (method) {
        case ReachMethod::Implicit:
            return detail::implicit_reach(view, src, dst, state_cap);
        case ReachMethod::Explicit:
            return detail::explicit_reach(materialize(view, vertex_cap), src, dst);
        case ReachMethod::Auto:
            break;
    }

    const Formula& f = view.formula();
    bool leaves_only = true;
    for (const Formula& c : f.children()) leaves_only = leaves_only && c.is_leaf();
    if (!f.is_leaf() && leaves_only && f.op() == Op::Cart) {
        for (std::size_t i = 0; i < f.arity(); ++i) {
            if (!detail::base_reach(view.doc().graph(f.children()[i].leaf_name()), src[i], dst[i]))
                return false;
        }
        return true;
    }
    if (f.is_leaf() || (leaves_only && f.op() == Op::Union))
        return detail::explicit_reach(materialize(view, vertex_cap), src, dst);
    return detail::implicit_reach(view, src, dst, state_cap);
}

}  // namespace fg
