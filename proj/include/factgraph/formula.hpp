#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/errors.hpp"

namespace fg {

enum class Op { Union, Cart, Tensor };

inline const char* op_symbol(Op op) {
    switch (op) {
        case Op::Union: return "+";
        case Op::Cart: return "#";
        case Op::Tensor: return "*";
    }
    return "?";
}

// An operator tree over base-graph names, kept in canonical form: no child
// carries the same operator as its parent, so same-op chains are one m-ary
// node. Leaves hold a graph name and have no children.
class Formula {
public:
    static Formula leaf(std::string graph_name) {
        Formula f;
        f.leaf_ = std::move(graph_name);
        return f;
    }

    // Builds an operator node, flattening children that carry the same op and
    // collapsing trivial single-child nodes.
    static Formula node(Op op, std::vector<Formula> children) {
        if (children.empty()) throw ValidationError("operator node with no children");
        if (children.size() == 1) return std::move(children.front());
        Formula f;
        f.op_ = op;
        for (Formula& c : children) {
            if (!c.is_leaf() && c.op() == op) {
                for (Formula& gc : c.children_) f.children_.push_back(std::move(gc));
            } else {
                f.children_.push_back(std::move(c));
            }
        }
        return f;
    }

    bool is_leaf() const { return children_.empty(); }
    Op op() const { return op_; }
    const std::string& leaf_name() const { return leaf_; }
    const std::vector<Formula>& children() const { return children_; }
    std::size_t arity() const { return children_.size(); }

    // Sum of (arity - 1) over operator nodes; a leaf contributes zero.
    std::size_t operation_count() const {
        if (is_leaf()) return 0;
        std::size_t n = children_.size() - 1;
        for (const Formula& c : children_) n += c.operation_count();
        return n;
    }

    std::size_t leaf_count() const {
        if (is_leaf()) return 1;
        std::size_t n = 0;
        for (const Formula& c : children_) n += c.leaf_count();
        return n;
    }

    void collect_leaf_names(std::vector<std::string>& out) const {
        if (is_leaf()) {
            out.push_back(leaf_);
            return;
        }
        for (const Formula& c : children_) c.collect_leaf_names(out);
    }

    bool contains_union() const {
        if (is_leaf()) return false;
        if (op_ == Op::Union) return true;
        for (const Formula& c : children_)
            if (c.contains_union()) return true;
        return false;
    }

    bool operator==(const Formula& other) const {
        if (is_leaf() != other.is_leaf()) return false;
        if (is_leaf()) return leaf_ == other.leaf_;
        return op_ == other.op_ && children_ == other.children_;
    }

    // Fully parenthesized rendering (except the outermost level).
    std::string to_string() const {
        std::string s;
        render(s, /*parenthesize=*/false);
        return s;
    }

private:
    void render(std::string& out, bool parenthesize) const {
        if (is_leaf()) {
            out += leaf_;
            return;
        }
        if (parenthesize) out += '(';
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i) {
                out += ' ';
                out += op_symbol(op_);
                out += ' ';
            }
            children_[i].render(out, true);
        }
        if (parenthesize) out += ')';
    }

    Op op_ = Op::Union;
    std::string leaf_;
    std::vector<Formula> children_;
};

}  // namespace fg
