#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/vertex.hpp"

namespace fg {

// A compiler's output: the emitted document, the formula to query, the query
// vertices, and a legend naming every label.
struct CompiledInstance {
    FormulaDoc doc;
    std::string formula_name;
    std::optional<FactoredVertex> lfmis_target;
    std::optional<std::pair<FactoredVertex, FactoredVertex>> reach_query;  // (src, dst)
    std::vector<std::pair<VertexLabel, std::string>> legend;               // sorted by label

    std::string legend_text() const {
        std::ostringstream os;
        for (const auto& [label, name] : legend) os << label << '\t' << name << '\n';
        return os.str();
    }

    std::string query_text() const {
        std::ostringstream os;
        os << "formula " << formula_name << '\n';
        if (lfmis_target) os << "target " << format_vertex(*lfmis_target) << '\n';
        if (reach_query) {
            os << "src " << format_vertex(reach_query->first) << '\n';
            os << "dst " << format_vertex(reach_query->second) << '\n';
        }
        return os.str();
    }
};

// Reads the side-car query file back: lines "formula NAME", "target [..]",
// "src [..]", "dst [..]".
struct CompiledQuery {
    std::string formula_name;
    std::optional<FactoredVertex> target;
    std::optional<FactoredVertex> src;
    std::optional<FactoredVertex> dst;
};

inline CompiledQuery parse_query_text(const std::string& text) {
    CompiledQuery q;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos) throw ValidationError("bad query line: " + line);
        std::string key = line.substr(0, sp);
        std::string val = line.substr(sp + 1);
        if (key == "formula")
            q.formula_name = val;
        else if (key == "target")
            q.target = parse_vertex(val);
        else if (key == "src")
            q.src = parse_vertex(val);
        else if (key == "dst")
            q.dst = parse_vertex(val);
        else
            throw ValidationError("bad query key: " + key);
    }
    if (q.formula_name.empty()) throw ValidationError("query file names no formula");
    return q;
}

}  // namespace fg
