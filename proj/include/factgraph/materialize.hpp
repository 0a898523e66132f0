#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "factgraph/adjacency.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

inline constexpr std::size_t kDefaultVertexCap = 1'000'000;

// Materialization target: vertices sorted by vertex_order, edges as sorted
// unique index pairs.
class ExplicitGraph {
public:
    ExplicitGraph() = default;

    ExplicitGraph(std::vector<FactoredVertex> vertices,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = i;
        for (auto [u, v] : edges_) {
            assert(u < vertices_.size() && v < vertices_.size());
            edge_keys_.insert((static_cast<std::uint64_t>(u) << 32) | v);
        }
    }

    const std::vector<FactoredVertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        return edge_keys_.count((static_cast<std::uint64_t>(u) << 32) | v) != 0;
    }

    std::optional<std::uint32_t> index_of(const FactoredVertex& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return static_cast<std::uint32_t>(it->second);
    }

    bool operator==(const ExplicitGraph& other) const {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    std::vector<FactoredVertex> vertices_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::unordered_map<FactoredVertex, std::size_t, VertexHash> index_;
    std::unordered_set<std::uint64_t> edge_keys_;
};

namespace detail {

// Odometer over one component's vertex set, yielding tuples in lexicographic
// order (leaf vertex lists are ascending).
class ComponentCursor {
public:
    ComponentCursor(const FormulaDoc& doc, const ComponentTree& c) {
        for (const std::string& leaf : c.leaves) leaves_.push_back(&doc.graph(leaf).vertices());
        pos_.assign(leaves_.size(), 0);
        current_.resize(leaves_.size());
        for (std::size_t i = 0; i < leaves_.size(); ++i) current_[i] = (*leaves_[i])[0];
        done_ = leaves_.empty();
    }

    bool done() const { return done_; }
    const FactoredVertex& current() const { return current_; }

    void advance() {
        std::size_t i = leaves_.size();
        while (i > 0) {
            --i;
            if (pos_[i] + 1 < leaves_[i]->size()) {
                ++pos_[i];
                current_[i] = (*leaves_[i])[pos_[i]];
                for (std::size_t j = i + 1; j < leaves_.size(); ++j) {
                    pos_[j] = 0;
                    current_[j] = (*leaves_[j])[0];
                }
                return;
            }
        }
        done_ = true;
    }

    std::size_t count() const {
        std::size_t n = 1;
        for (const auto* vs : leaves_) n *= vs->size();
        return n;
    }

private:
    std::vector<const std::vector<VertexLabel>*> leaves_;
    std::vector<std::size_t> pos_;
    FactoredVertex current_;
    bool done_ = false;
};

}  // namespace detail

// Streams every vertex of the formula exactly once, in vertex_order:
// per-component lexicographic cursors are merged within each dimension
// class, dimension classes in ascending order.
class VertexEnumerator {
public:
    explicit VertexEnumerator(const FormulaView& view, std::size_t cap = kDefaultVertexCap) {
        std::size_t estimate = 0;
        for (const ComponentTree& c : view.comps()) {
            cursors_.emplace_back(view.doc(), c);
            estimate += cursors_.back().count();
        }
        if (estimate > cap)
            throw CapExceeded("estimated vertex count " + std::to_string(estimate) +
                              " exceeds cap (" + std::to_string(cap) + ")");
    }

    std::optional<FactoredVertex> next() {
        // Smallest live tuple of the smallest live dimension.
        const FactoredVertex* best = nullptr;
        for (const detail::ComponentCursor& c : cursors_) {
            if (c.done()) continue;
            if (!best || vertex_less(c.current(), *best)) best = &c.current();
        }
        if (!best) return std::nullopt;
        FactoredVertex out = *best;
        for (detail::ComponentCursor& c : cursors_) {
            while (!c.done() && c.current() == out) c.advance();
        }
        return out;
    }

private:
    std::vector<detail::ComponentCursor> cursors_;
};

inline std::vector<FactoredVertex> enumerate_vertices(const FormulaView& view,
                                                      std::size_t cap = kDefaultVertexCap) {
    VertexEnumerator en(view, cap);
    std::vector<FactoredVertex> out;
    while (auto v = en.next()) out.push_back(std::move(*v));
    return out;
}

// Explicitly computes the factored graph: the union of all component vertex
// sets and component edges. Throws CapExceeded past max_vertices.
inline ExplicitGraph materialize(const FormulaView& view,
                                 std::size_t max_vertices = kDefaultVertexCap) {
    std::vector<FactoredVertex> vertices = enumerate_vertices(view, max_vertices);
    if (vertices.size() > max_vertices)
        throw CapExceeded("materialization size cap exceeded (" + std::to_string(max_vertices) +
                          " vertices)");
    std::unordered_map<FactoredVertex, std::uint32_t, VertexHash> index;
    index.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        index[vertices[i]] = static_cast<std::uint32_t>(i);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<FactoredVertex> nbrs;
    for (std::size_t ci = 0; ci < view.comps().size(); ++ci) {
        detail::ComponentCursor cur(view.doc(), view.comps()[ci]);
        while (!cur.done()) {
            const FactoredVertex& u = cur.current();
            nbrs.clear();
            view.component_out_neighbors(ci, u, nbrs);
            if (!nbrs.empty()) {
                std::uint32_t ui = index.at(u);
                for (const FactoredVertex& w : nbrs) {
                    assert(w.size() == u.size());  // no edge joins different dimensions
                    edges.emplace_back(ui, index.at(w));
                }
            }
            cur.advance();
        }
    }
    return ExplicitGraph(std::move(vertices), std::move(edges));
}

inline ExplicitGraph materialize(const FormulaDoc& doc, const Formula& f,
                                 std::size_t max_vertices = kDefaultVertexCap) {
    return materialize(FormulaView(doc, f), max_vertices);
}

}  // namespace fg
