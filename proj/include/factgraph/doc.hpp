#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/base_graph.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/formula.hpp"

namespace fg {

// Complexity (n, k) of a formula: n is the largest referenced base-graph
// size, k is one plus the number of operations.
struct Complexity {
    std::size_t n = 1;
    std::size_t k = 1;
};

// A parsed document: named base graphs plus named formulas, in declaration
// order.
class FormulaDoc {
public:
    void add_graph(BaseGraph g) {
        if (graph_index_.count(g.name()) || formula_index_.count(g.name()))
            throw ValidationError("duplicate graph/formula name '" + g.name() + "'");
        graph_index_[g.name()] = graphs_.size();
        graphs_.push_back(std::move(g));
    }

    void add_formula(std::string name, Formula f) {
        if (graph_index_.count(name) || formula_index_.count(name))
            throw ValidationError("duplicate graph/formula name '" + name + "'");
        std::vector<std::string> leaves;
        f.collect_leaf_names(leaves);
        for (const std::string& leaf : leaves)
            if (!graph_index_.count(leaf))
                throw ValidationError("unknown graph name '" + leaf + "' in formula '" + name + "'");
        formula_index_[name] = formulas_.size();
        formulas_.emplace_back(std::move(name), std::move(f));
    }

    bool has_graph(const std::string& name) const { return graph_index_.count(name) != 0; }
    bool has_formula(const std::string& name) const { return formula_index_.count(name) != 0; }

    const BaseGraph& graph(const std::string& name) const {
        auto it = graph_index_.find(name);
        if (it == graph_index_.end()) throw ValidationError("unknown graph name '" + name + "'");
        return graphs_[it->second];
    }

    const Formula& formula(const std::string& name) const {
        auto it = formula_index_.find(name);
        if (it == formula_index_.end()) throw ValidationError("unknown formula name '" + name + "'");
        return formulas_[it->second].second;
    }

    const std::vector<BaseGraph>& graphs() const { return graphs_; }
    const std::vector<std::pair<std::string, Formula>>& formulas() const { return formulas_; }

    Complexity complexity(const Formula& f) const {
        std::vector<std::string> leaves;
        f.collect_leaf_names(leaves);
        Complexity c;
        c.k = 1 + f.operation_count();
        c.n = 0;
        for (const std::string& leaf : leaves) c.n = std::max(c.n, graph(leaf).size());
        return c;
    }

private:
    std::vector<BaseGraph> graphs_;
    std::vector<std::pair<std::string, Formula>> formulas_;
    std::map<std::string, std::size_t> graph_index_;
    std::map<std::string, std::size_t> formula_index_;
};

}  // namespace fg
