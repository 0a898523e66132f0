#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factgraph/adjacency.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/materialize.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

struct LfmisResult {
    std::vector<FactoredVertex> members;          // in vertex_order
    std::optional<bool> query_member;             // set when a query vertex was given

    bool contains(const FactoredVertex& v) const {
        return std::binary_search(members.begin(), members.end(), v, VertexLess{});
    }
};

// Greedy pass in index order: a vertex joins iff it has no edge, in either
// direction, to any earlier member. Independence is undefined once a vertex
// is adjacent to itself, so self-loops are rejected.
inline LfmisResult lfmis_greedy(const ExplicitGraph& g,
                                const std::optional<FactoredVertex>& query = std::nullopt) {
    for (auto [u, v] : g.edges())
        if (u == v)
            throw ValidationError("LFMIS rejects graphs with self-loops (vertex " +
                                  format_vertex(g.vertices()[u]) + ")");
    LfmisResult result;
    std::vector<std::uint32_t> member_idx;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        bool blocked = false;
        // Scan recent members first; the blocker is usually nearby in order.
        for (auto it = member_idx.rbegin(); it != member_idx.rend(); ++it) {
            if (g.has_edge(v, *it) || g.has_edge(*it, v)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            member_idx.push_back(v);
            result.members.push_back(g.vertices()[v]);
        }
    }
    if (query) result.query_member = result.contains(*query);
    return result;
}

enum class LfmisEngine { Implicit, Materialize };

// LFMIS of a factored graph. The implicit engine streams the vertex
// enumeration and tests candidates against the growing member set through
// adjacency queries only; edges are never materialized. The materialize
// engine computes the explicit graph and runs the greedy pass. Both agree.
inline LfmisResult lfmis(const FormulaView& view, LfmisEngine engine,
                         const std::optional<FactoredVertex>& query = std::nullopt,
                         std::size_t vertex_cap = kDefaultVertexCap) {
    if (engine == LfmisEngine::Materialize) return lfmis_greedy(materialize(view, vertex_cap), query);

    LfmisResult result;
    VertexEnumerator en(view, vertex_cap);
    while (auto v = en.next()) {
        if (view.adjacent(*v, *v))
            throw ValidationError("LFMIS rejects graphs with self-loops (vertex " +
                                  format_vertex(*v) + ")");
        bool blocked = false;
        for (auto it = result.members.rbegin(); it != result.members.rend(); ++it) {
            if (view.adjacent(*v, *it) || view.adjacent(*it, *v)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) result.members.push_back(std::move(*v));
    }
    if (query) result.query_member = result.contains(*query);
    return result;
}

inline bool lfmis_member(const FormulaView& view, const FactoredVertex& v, LfmisEngine engine,
                         std::size_t vertex_cap = kDefaultVertexCap) {
    return *lfmis(view, engine, v, vertex_cap).query_member;
}

}  // namespace fg
