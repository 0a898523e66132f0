#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/formula.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

inline constexpr std::size_t kDefaultComponentCap = std::size_t{1} << 20;

// A union-free resolution of a formula: the unit within which all edges live.
// The tree is canonical, so structurally equal resolutions deduplicate.
struct ComponentTree {
    Formula tree;
    std::vector<std::string> leaves;  // left-to-right leaf graph names

    std::size_t dim() const { return leaves.size(); }
};

namespace detail {

inline void component_trees(const Formula& f, std::vector<Formula>& out, std::size_t cap) {
    if (f.is_leaf()) {
        out.push_back(f);
        return;
    }
    if (f.op() == Op::Union) {
        for (const Formula& c : f.children()) component_trees(c, out, cap);
        if (out.size() > cap)
            throw CapExceeded("component count exceeds cap (" + std::to_string(cap) + ")");
        return;
    }
    // Product node: cross the children's resolutions.
    std::vector<std::vector<Formula>> per_child(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i)
        component_trees(f.children()[i], per_child[i], cap);
    std::vector<std::size_t> idx(f.arity(), 0);
    while (true) {
        std::vector<Formula> picked;
        picked.reserve(f.arity());
        for (std::size_t i = 0; i < f.arity(); ++i) picked.push_back(per_child[i][idx[i]]);
        out.push_back(Formula::node(f.op(), std::move(picked)));
        if (out.size() > cap)
            throw CapExceeded("component count exceeds cap (" + std::to_string(cap) + ")");
        std::size_t i = f.arity();
        while (i > 0) {
            --i;
            if (++idx[i] < per_child[i].size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
    }
}

}  // namespace detail

// All distinct factored components of f, obtained by resolving each union
// node to one child. At most 2^k of them.
inline std::vector<ComponentTree> components(const Formula& f,
                                             std::size_t cap = kDefaultComponentCap) {
    std::vector<Formula> trees;
    detail::component_trees(f, trees, cap);
    std::vector<ComponentTree> out;
    for (Formula& t : trees) {
        bool dup = false;
        for (const ComponentTree& seen : out)
            if (seen.tree == t) {
                dup = true;
                break;
            }
        if (dup) continue;
        ComponentTree ct;
        ct.tree = std::move(t);
        ct.tree.collect_leaf_names(ct.leaves);
        out.push_back(std::move(ct));
    }
    return out;
}

// True iff v has the component's dimension and every coordinate lies in the
// corresponding leaf's vertex set.
inline bool contains(const FormulaDoc& doc, const ComponentTree& c, const FactoredVertex& v) {
    if (v.size() != c.dim()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!doc.graph(c.leaves[i]).has_vertex(v[i])) return false;
    return true;
}

// Dimension of any component containing v; throws when v is not a vertex.
inline std::size_t dimension_of(const FormulaDoc& doc, const Formula& f, const FactoredVertex& v,
                                std::size_t cap = kDefaultComponentCap) {
    for (const ComponentTree& c : components(f, cap))
        if (contains(doc, c, v)) return c.dim();
    throw ValidationError(format_vertex(v) + " is not a vertex of the formula");
}

}  // namespace fg
