#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "factgraph/base_graph.hpp"
#include "factgraph/component.hpp"
#include "factgraph/doc.hpp"
#include "factgraph/formula.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

namespace detail {

// A component tree resolved against its document: leaves point at base
// graphs and every node knows its leaf span within the flattened tuple.
struct CompNode {
    Op op = Op::Cart;
    const BaseGraph* graph = nullptr;  // set iff leaf
    std::size_t leaf_begin = 0;
    std::size_t leaf_end = 0;
    std::vector<CompNode> children;

    bool is_leaf() const { return graph != nullptr; }
};

inline CompNode resolve(const FormulaDoc& doc, const Formula& f, std::size_t& next_leaf) {
    CompNode n;
    n.leaf_begin = next_leaf;
    if (f.is_leaf()) {
        n.graph = &doc.graph(f.leaf_name());
        n.leaf_end = ++next_leaf;
        return n;
    }
    n.op = f.op();
    n.children.reserve(f.arity());
    for (const Formula& c : f.children()) n.children.push_back(resolve(doc, c, next_leaf));
    n.leaf_end = next_leaf;
    return n;
}

struct EdgeEq {
    bool edge;   // (u, v) restricted to this subtree is an edge
    bool eqmem;  // u == v on this subtree and the shared labels are vertices
};

inline EdgeEq comp_edge_eq(const CompNode& n, const FactoredVertex& u, const FactoredVertex& v) {
    if (n.is_leaf()) {
        VertexLabel a = u[n.leaf_begin];
        VertexLabel b = v[n.leaf_begin];
        return {n.graph->has_edge(a, b), a == b && n.graph->has_vertex(a)};
    }
    if (n.op == Op::Tensor) {
        bool edge = true;
        bool eqmem = true;
        for (const CompNode& c : n.children) {
            EdgeEq r = comp_edge_eq(c, u, v);
            edge = edge && r.edge;
            eqmem = eqmem && r.eqmem;
            if (!edge && !eqmem) break;
        }
        return {edge, eqmem};
    }
    // Cartesian: an edge moves exactly one child along an edge and keeps the
    // rest equal (and inside the child's vertex set). A child that is equal
    // via a self-loop edge can play either role.
    std::size_t edge_only = 0;
    std::size_t edge_and_eq = 0;
    bool all_eqmem = true;
    bool any_neither = false;
    for (const CompNode& c : n.children) {
        EdgeEq r = comp_edge_eq(c, u, v);
        all_eqmem = all_eqmem && r.eqmem;
        if (r.edge && r.eqmem) {
            ++edge_and_eq;
        } else if (r.edge) {
            ++edge_only;
        } else if (!r.eqmem) {
            any_neither = true;
            break;
        }
    }
    bool edge = !any_neither && (edge_only == 1 || (edge_only == 0 && edge_and_eq > 0));
    return {edge, all_eqmem && !any_neither};
}

}  // namespace detail

// Implicit-query handle for one formula of a document: components are
// resolved once and reused across adjacency / neighbor / enumeration calls.
// Purely read-only after construction.
class FormulaView {
public:
    FormulaView(const FormulaDoc& doc, const Formula& formula,
                std::size_t component_cap = kDefaultComponentCap)
        : doc_(&doc), formula_(formula), components_(components(formula, component_cap)) {
        for (const ComponentTree& c : components_) {
            std::size_t next = 0;
            nodes_.push_back(detail::resolve(doc, c.tree, next));
        }
    }

    FormulaView(const FormulaDoc& doc, const std::string& formula_name,
                std::size_t component_cap = kDefaultComponentCap)
        : FormulaView(doc, doc.formula(formula_name), component_cap) {}

    const FormulaDoc& doc() const { return *doc_; }
    const Formula& formula() const { return formula_; }
    const std::vector<ComponentTree>& comps() const { return components_; }
    const detail::CompNode& comp_node(std::size_t ci) const { return nodes_[ci]; }

    bool component_contains(std::size_t ci, const FactoredVertex& v) const {
        return contains(*doc_, components_[ci], v);
    }

    bool is_vertex(const FactoredVertex& v) const {
        for (std::size_t ci = 0; ci < components_.size(); ++ci)
            if (component_contains(ci, v)) return true;
        return false;
    }

    std::optional<std::size_t> dimension_of(const FactoredVertex& v) const {
        for (std::size_t ci = 0; ci < components_.size(); ++ci)
            if (component_contains(ci, v)) return components_[ci].dim();
        return std::nullopt;
    }

    // True iff (u, v) is an edge of the factored graph. Total: non-vertices
    // and dimension mismatches answer false rather than failing.
    bool adjacent(const FactoredVertex& u, const FactoredVertex& v) const {
        if (u.size() != v.size()) return false;
        for (std::size_t ci = 0; ci < components_.size(); ++ci) {
            if (components_[ci].dim() != u.size()) continue;
            if (detail::comp_edge_eq(nodes_[ci], u, v).edge) return true;
        }
        return false;
    }

    // Exactly { u : adjacent(v, u) }, sorted by vertex_order. Empty when v is
    // not a vertex.
    std::vector<FactoredVertex> out_neighbors(const FactoredVertex& v) const {
        std::vector<FactoredVertex> out;
        for (std::size_t ci = 0; ci < components_.size(); ++ci) {
            if (components_[ci].dim() != v.size()) continue;
            if (!component_contains(ci, v)) continue;
            FactoredVertex scratch = v;
            emit_neighbors(nodes_[ci], v, scratch, out);
        }
        std::sort(out.begin(), out.end(), VertexLess{});
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Per-component neighbor emission, precondition: v lies in component ci.
    void component_out_neighbors(std::size_t ci, const FactoredVertex& v,
                                 std::vector<FactoredVertex>& out) const {
        FactoredVertex scratch = v;
        emit_neighbors(nodes_[ci], v, scratch, out);
    }

private:
    // Emits every w with (v, w) an edge of this component, using scratch as
    // the partially-built target tuple (coordinates outside the active
    // subtree stay equal to v).
    static void emit_neighbors(const detail::CompNode& n, const FactoredVertex& v,
                               FactoredVertex& scratch, std::vector<FactoredVertex>& out) {
        if (n.is_leaf()) {
            for (VertexLabel w : n.graph->out(v[n.leaf_begin])) {
                scratch[n.leaf_begin] = w;
                out.push_back(scratch);
            }
            scratch[n.leaf_begin] = v[n.leaf_begin];
            return;
        }
        if (n.op == Op::Cart) {
            for (const detail::CompNode& c : n.children) emit_neighbors(c, v, scratch, out);
            return;
        }
        // Tensor: every child moves along one of its own edges simultaneously.
        emit_tensor(n, 0, v, scratch, out);
    }

    static void emit_tensor(const detail::CompNode& n, std::size_t child, const FactoredVertex& v,
                            FactoredVertex& scratch, std::vector<FactoredVertex>& out) {
        if (child == n.children.size()) {
            out.push_back(scratch);
            return;
        }
        const detail::CompNode& c = n.children[child];
        std::vector<FactoredVertex> moves;
        emit_neighbors(c, v, scratch, moves);
        for (const FactoredVertex& m : moves) {
            for (std::size_t i = c.leaf_begin; i < c.leaf_end; ++i) scratch[i] = m[i];
            emit_tensor(n, child + 1, v, scratch, out);
        }
        for (std::size_t i = c.leaf_begin; i < c.leaf_end; ++i) scratch[i] = v[i];
    }

    const FormulaDoc* doc_;
    Formula formula_;
    std::vector<ComponentTree> components_;
    std::vector<detail::CompNode> nodes_;
};

// Convenience single-shot wrappers matching the operation contracts.

inline bool adjacent(const FormulaDoc& doc, const Formula& f, const FactoredVertex& u,
                     const FactoredVertex& v) {
    return FormulaView(doc, f).adjacent(u, v);
}

inline std::vector<FactoredVertex> out_neighbors(const FormulaDoc& doc, const Formula& f,
                                                 const FactoredVertex& v) {
    return FormulaView(doc, f).out_neighbors(v);
}

}  // namespace fg
