#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "factgraph/compiled.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/machine_format.hpp"

namespace fg {

// k sets of n binary vectors of dimension d.
struct KOVInstance {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<std::vector<std::uint8_t>>> sets;  // sets[i][j][l]

    void validate() const {
        if (k < 1 || sets.size() != k) throw ValidationError("kov: need k vector sets");
        if (n < 1) throw ValidationError("kov: vector sets are empty");
        if (d < 1) throw ValidationError("kov: dimension must be at least 1");
        for (const auto& set : sets) {
            if (set.size() != n) throw ValidationError("kov: vector sets must have equal size");
            for (const auto& vec : set)
                if (vec.size() != d) throw ValidationError("kov: vector has the wrong dimension");
        }
    }
};

// .kov reader: kov { k: 2; d: 3; set: 101 011; set: 110 000; }
inline KOVInstance parse_kov(std::string_view text) {
    detail::SpecScanner sc(text);
    sc.expect_keyword("kov");
    sc.expect_punct('{');
    KOVInstance inst;
    while (!sc.accept_punct('}')) {
        std::string field = sc.expect_word("field name");
        sc.expect_punct(':');
        if (field == "k") {
            inst.k = std::stoul(sc.expect_word("k"));
        } else if (field == "d") {
            inst.d = std::stoul(sc.expect_word("d"));
        } else if (field == "set") {
            std::vector<std::vector<std::uint8_t>> set;
            while (sc.peek_word()) {
                std::string bits = sc.expect_word("vector");
                std::vector<std::uint8_t> vec;
                for (char c : bits) {
                    if (c != '0' && c != '1')
                        throw ValidationError("kov: vectors are 0/1 strings, got '" + bits + "'");
                    vec.push_back(static_cast<std::uint8_t>(c - '0'));
                }
                set.push_back(std::move(vec));
            }
            inst.sets.push_back(std::move(set));
        } else {
            throw ValidationError("kov: unknown field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    if (!sc.eof()) throw ValidationError("kov: trailing input after '}'");
    if (inst.sets.empty()) throw ValidationError("kov: no vector sets");
    inst.n = inst.sets[0].size();
    inst.validate();
    return inst;
}

// Exhaustive check over all n^k tuples.
inline bool solve_kov_brute(const KOVInstance& inst) {
    std::vector<std::size_t> pick(inst.k, 0);
    while (true) {
        bool orthogonal = true;
        for (std::size_t l = 0; l < inst.d && orthogonal; ++l) {
            bool zero = false;
            for (std::size_t i = 0; i < inst.k; ++i)
                if (inst.sets[i][pick[i]][l] == 0) {
                    zero = true;
                    break;
                }
            orthogonal = zero;
        }
        if (orthogonal) return true;
        std::size_t i = inst.k;
        while (i > 0) {
            --i;
            if (++pick[i] < inst.n) break;
            pick[i] = 0;
            if (i == 0) return false;
        }
    }
}

// Compiles a kOV instance into a reachability question on a factored graph.
//
// Per vector set i there is a line of 2d vertices per vector: position l has
// a 0-side and a 1-side, joined in G_i exactly when the vector is 0 at l.
// The Cartesian product of the G_i lets one coordinate cross its block when
// its vector has a 0 there; the horizontal-loop union H copies that crossing
// to the other coordinates once any coordinate has crossed; the diagonal
// tensor advances every coordinate to the next position simultaneously; and
// the source/target tensors fan out to every vector choice. The target is
// reachable exactly when some k-tuple of vectors is orthogonal.
inline CompiledInstance compile_kov_reach(const KOVInstance& inst) {
    inst.validate();
    if (inst.k < 2) throw ValidationError("compile_kov_reach requires k >= 2");
    std::size_t k = inst.k, n = inst.n, d = inst.d;

    std::size_t stride = 2 * n * d + 2;
    auto s_label = [&](std::size_t i) { return static_cast<VertexLabel>(i * stride); };
    auto v_label = [&](std::size_t i, std::size_t j, std::size_t l, std::size_t b) {
        return static_cast<VertexLabel>(i * stride + 1 + (j * d + l) * 2 + b);
    };
    auto t_label = [&](std::size_t i) { return static_cast<VertexLabel>(i * stride + stride - 1); };

    CompiledInstance out;
    auto num = [](std::size_t i) { return std::to_string(i + 1); };
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<VertexLabel> line;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t b = 0; b < 2; ++b) line.push_back(v_label(i, j, l, b));

        std::vector<BaseGraph::Edge> vec_edges, hor_edges, loop_all, loop_one, diag_edges;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < d; ++l) {
                if (inst.sets[i][j][l] == 0)
                    vec_edges.emplace_back(v_label(i, j, l, 0), v_label(i, j, l, 1));
                hor_edges.emplace_back(v_label(i, j, l, 0), v_label(i, j, l, 1));
                loop_all.emplace_back(v_label(i, j, l, 0), v_label(i, j, l, 0));
                loop_all.emplace_back(v_label(i, j, l, 1), v_label(i, j, l, 1));
                loop_one.emplace_back(v_label(i, j, l, 1), v_label(i, j, l, 1));
                if (l + 1 < d)
                    diag_edges.emplace_back(v_label(i, j, l, 1), v_label(i, j, l + 1, 0));
            }
        }
        out.doc.add_graph(BaseGraph("G" + num(i), line, std::move(vec_edges)));
        out.doc.add_graph(BaseGraph("H" + num(i), line, std::move(hor_edges)));
        out.doc.add_graph(BaseGraph("Lz" + num(i), line, std::move(loop_all)));
        out.doc.add_graph(BaseGraph("Lo" + num(i), line, std::move(loop_one)));
        out.doc.add_graph(BaseGraph("D" + num(i), line, std::move(diag_edges)));

        std::vector<VertexLabel> src_vs{s_label(i)};
        std::vector<BaseGraph::Edge> src_es;
        for (std::size_t j = 0; j < n; ++j) {
            src_vs.push_back(v_label(i, j, 0, 0));
            src_es.emplace_back(s_label(i), v_label(i, j, 0, 0));
        }
        out.doc.add_graph(BaseGraph("S" + num(i), src_vs, std::move(src_es)));

        std::vector<VertexLabel> dst_vs{t_label(i)};
        std::vector<BaseGraph::Edge> dst_es;
        for (std::size_t j = 0; j < n; ++j) {
            dst_vs.push_back(v_label(i, j, d - 1, 1));
            dst_es.emplace_back(v_label(i, j, d - 1, 1), t_label(i));
        }
        out.doc.add_graph(BaseGraph("T" + num(i), dst_vs, std::move(dst_es)));
    }

    auto leaves = [&](const std::string& stem) {
        std::vector<Formula> fs;
        for (std::size_t i = 0; i < k; ++i) fs.push_back(Formula::leaf(stem + num(i)));
        return fs;
    };
    std::vector<Formula> horizontal;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            // factors ordered by vector-set index: H at i, a b=1 loop at j,
            // unrestricted loops elsewhere
            std::vector<Formula> factors;
            for (std::size_t p = 0; p < k; ++p) {
                if (p == i)
                    factors.push_back(Formula::leaf("H" + num(p)));
                else if (p == j)
                    factors.push_back(Formula::leaf("Lo" + num(p)));
                else
                    factors.push_back(Formula::leaf("Lz" + num(p)));
            }
            horizontal.push_back(Formula::node(Op::Tensor, std::move(factors)));
        }
    }
    Formula g = Formula::node(
        Op::Union, {Formula::node(Op::Cart, leaves("G")), Formula::node(Op::Tensor, leaves("D")),
                    Formula::node(Op::Union, std::move(horizontal)),
                    Formula::node(Op::Tensor, leaves("S")), Formula::node(Op::Tensor, leaves("T"))});
    out.doc.add_formula("G", std::move(g));
    out.formula_name = "G";

    FactoredVertex src, dst;
    for (std::size_t i = 0; i < k; ++i) {
        src.push_back(s_label(i));
        dst.push_back(t_label(i));
    }
    out.reach_query = {src, dst};

    for (std::size_t i = 0; i < k; ++i) {
        out.legend.emplace_back(s_label(i), "s_" + std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t b = 0; b < 2; ++b)
                    out.legend.emplace_back(
                        v_label(i, j, l, b),
                        "v_{" + std::to_string(i + 1) + "," + std::to_string(j) + "," +
                            std::to_string(l) + "," + std::to_string(b) + "}");
        out.legend.emplace_back(t_label(i), "t_" + std::to_string(i + 1));
    }
    return out;
}

}  // namespace fg
