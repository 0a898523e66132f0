#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/materialize.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

// Renders a document back to .fg text. Compiler outputs go through here, so
// the result must re-parse to an equal document.
inline std::string to_fg_text(const FormulaDoc& doc) {
    std::ostringstream os;
    for (const BaseGraph& g : doc.graphs()) {
        os << "graph " << g.name() << " {\n  vertices:";
        for (VertexLabel v : g.vertices()) os << ' ' << v;
        os << ";\n  edges:";
        for (const auto& e : g.edges()) os << " (" << e.first << "," << e.second << ")";
        os << ";\n}\n";
    }
    for (const auto& [name, f] : doc.formulas())
        os << "formula " << name << " = " << f.to_string() << ";\n";
    return os.str();
}

// Edge-list text: every vertex on its own line, then "[u] -> [v]" per edge.
// Listing isolated vertices keeps the format lossless.
inline std::string to_edge_list(const ExplicitGraph& g) {
    std::ostringstream os;
    for (const FactoredVertex& v : g.vertices()) os << format_vertex(v) << '\n';
    for (auto [u, v] : g.edges())
        os << format_vertex(g.vertices()[u]) << " -> " << format_vertex(g.vertices()[v]) << '\n';
    return os.str();
}

inline ExplicitGraph parse_edge_list(const std::string& text) {
    std::vector<FactoredVertex> vertices;
    std::vector<std::pair<FactoredVertex, FactoredVertex>> edge_tuples;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t arrow = line.find(" -> ");
        if (arrow == std::string::npos) {
            vertices.push_back(parse_vertex(line));
        } else {
            edge_tuples.emplace_back(parse_vertex(line.substr(0, arrow)),
                                     parse_vertex(line.substr(arrow + 4)));
        }
    }
    std::sort(vertices.begin(), vertices.end(), VertexLess{});
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::unordered_map<FactoredVertex, std::uint32_t, VertexHash> index;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        index[vertices[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& [u, v] : edge_tuples) {
        auto iu = index.find(u);
        auto iv = index.find(v);
        if (iu == index.end() || iv == index.end())
            throw ValidationError("edge endpoint not in vertex list: " + format_vertex(u) +
                                  " -> " + format_vertex(v));
        edges.emplace_back(iu->second, iv->second);
    }
    return ExplicitGraph(std::move(vertices), std::move(edges));
}

inline std::string to_dot(const ExplicitGraph& g, const std::string& name = "G") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (const FactoredVertex& v : g.vertices()) os << "  \"" << format_vertex(v) << "\";\n";
    for (auto [u, v] : g.edges())
        os << "  \"" << format_vertex(g.vertices()[u]) << "\" -> \""
           << format_vertex(g.vertices()[v]) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace fg
