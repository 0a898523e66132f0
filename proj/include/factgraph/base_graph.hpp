#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "factgraph/errors.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

// A small explicit directed graph; the leaves of every formula. Vertices are
// kept strictly increasing, edges sorted and duplicate-free. Self-loops are
// allowed.
class BaseGraph {
public:
    using Edge = std::pair<VertexLabel, VertexLabel>;

    BaseGraph() = default;

    BaseGraph(std::string name, std::vector<VertexLabel> vertices, std::vector<Edge> edges)
        : name_(std::move(name)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::sort(vertices_.begin(), vertices_.end());
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            if (vertices_[i] == vertices_[i - 1])
                throw ValidationError("graph '" + name_ + "': duplicate vertex " +
                                      std::to_string(vertices_[i]));
        }
        if (vertices_.empty())
            throw ValidationError("graph '" + name_ + "': empty vertex set");
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = i;
        out_.resize(vertices_.size());
        for (const Edge& e : edges_) {
            auto it = index_.find(e.first);
            auto jt = index_.find(e.second);
            if (it == index_.end() || jt == index_.end())
                throw ValidationError("graph '" + name_ + "': edge (" + std::to_string(e.first) +
                                      "," + std::to_string(e.second) + ") references undeclared vertex");
            out_[it->second].push_back(e.second);
            edge_keys_.insert(key(e.first, e.second));
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<VertexLabel>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }

    bool has_vertex(VertexLabel v) const { return index_.count(v) != 0; }

    bool has_edge(VertexLabel u, VertexLabel v) const {
        return edge_keys_.count(key(u, v)) != 0;
    }

    // Out-neighbors in ascending label order; empty when v is not a vertex.
    std::span<const VertexLabel> out(VertexLabel v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return {};
        return out_[it->second];
    }

    bool has_self_loop() const {
        for (const Edge& e : edges_)
            if (e.first == e.second) return true;
        return false;
    }

    // Every edge paired with its reverse.
    bool is_symmetric() const {
        for (const Edge& e : edges_)
            if (!has_edge(e.second, e.first)) return false;
        return true;
    }

private:
    static std::uint64_t key(VertexLabel u, VertexLabel v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    std::string name_;
    std::vector<VertexLabel> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<VertexLabel, std::size_t> index_;
    std::vector<std::vector<VertexLabel>> out_;
    std::unordered_set<std::uint64_t> edge_keys_;
};

}  // namespace fg
