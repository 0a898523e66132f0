#pragma once

#include <array>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/compiled.hpp"
#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/formula.hpp"
#include "factgraph/tm.hpp"

namespace fg {

enum class Dir { V = 0, H = 1, R = 2, L = 3 };

// The tile alphabet of a run: pairs from (Q + start-dot + star) x (Gamma +
// one dotted symbol per input position). Ranks give the priority order the
// simulation depends on: start-dot before star before machine states, and
// dotted input symbols before blank before the other tape symbols.
class TileAlphabet {
public:
    static constexpr std::size_t kStartDot = 0;  // q-dot_0
    static constexpr std::size_t kStar = 1;

    TileAlphabet(const TMSpec& tm, const std::string& input) : tm_(&tm), input_(input) {
        n_ = input.size();
        q_count_ = 2 + tm.states.size();
        g_count_ = n_ + tm.tape_alphabet.size();
        for (std::size_t i = 0; i < tm.states.size(); ++i) state_rank_[tm.states[i]] = 2 + i;
        gamma_order_ = std::string(1, kBlank);
        for (char a : tm.tape_alphabet)
            if (a != kBlank) gamma_order_ += a;
        for (std::size_t j = 0; j < gamma_order_.size(); ++j)
            symbol_rank_[gamma_order_[j]] = n_ + j;
    }

    std::size_t q_count() const { return q_count_; }
    std::size_t g_count() const { return g_count_; }
    std::size_t tile_count() const { return q_count_ * g_count_; }
    std::size_t input_size() const { return n_; }

    std::size_t tile(std::size_t q, std::size_t a) const { return q * g_count_ + a; }
    std::size_t tile_q(std::size_t t) const { return t / g_count_; }
    std::size_t tile_a(std::size_t t) const { return t % g_count_; }

    std::size_t state_rank(const std::string& q) const { return state_rank_.at(q); }
    std::size_t symbol_rank(char a) const { return symbol_rank_.at(a); }
    std::size_t blank_rank() const { return n_; }

    bool q_in_machine(std::size_t q) const { return q >= 2; }
    bool q_is_star_or_machine(std::size_t q) const { return q >= kStar; }
    bool q_halting(std::size_t q) const { return q_in_machine(q) && tm_->is_halting(state_name(q)); }
    bool a_normal(std::size_t a) const { return a >= n_; }

    const std::string& state_name(std::size_t q) const {
        assert(q_in_machine(q));
        return tm_->states[q - 2];
    }
    char symbol_char(std::size_t a) const {
        assert(a_normal(a));
        return gamma_order_[a - n_];
    }

    // Dotted symbols stand for their normal counterparts in every rule.
    std::size_t normal_q(std::size_t q) const { return q == kStartDot ? state_rank(tm_->start) : q; }
    std::size_t normal_a(std::size_t a) const { return a < n_ ? symbol_rank(input_[a]) : a; }

    std::string q_display(std::size_t q) const {
        if (q == kStartDot) return "." + tm_->start;
        if (q == kStar) return "*";
        return state_name(q);
    }
    std::string a_display(std::size_t a) const {
        if (a < n_) return ".x" + std::to_string(a + 1);
        return std::string(1, symbol_char(a));
    }
    std::string tile_display(std::size_t t) const {
        return "(" + q_display(tile_q(t)) + "," + a_display(tile_a(t)) + ")";
    }

    // Consistency relation: may tile v sit in the child supernode in
    // direction D when tile u was chosen in the parent?
    bool in_consistency(Dir d, std::size_t u, std::size_t v) const {
        std::size_t uq = normal_q(tile_q(u));
        std::size_t ua = normal_a(tile_a(u));
        std::size_t vq = tile_q(v);
        std::size_t va = tile_a(v);
        switch (d) {
            case Dir::V: {
                if (q_in_machine(uq) && !q_halting(uq)) {
                    char written = tm_->delta.at({state_name(uq), symbol_char(ua)}).symbol;
                    return vq == kStar && va == symbol_rank(written);
                }
                if (q_halting(uq)) return vq == uq && va == ua;
                return q_is_star_or_machine(vq) && va == ua;  // head elsewhere: symbol copies down
            }
            case Dir::H: {
                std::size_t raw_a = tile_a(u);  // the dotted-symbol chain keys off the raw symbol
                if (!q_is_star_or_machine(vq)) return false;
                // x-dot_i for i <= n-1 additionally allows x-dot_{i+1} to the right.
                if (raw_a + 1 < n_) return a_normal(va) || va == raw_a + 1;
                return a_normal(va);
            }
            case Dir::R:
            case Dir::L: {
                if (!a_normal(va)) return false;
                if (!q_in_machine(uq) || q_halting(uq)) return q_is_star_or_machine(vq);
                const TMSpec::Action& act = tm_->delta.at({state_name(uq), symbol_char(ua)});
                char toward = (d == Dir::R) ? 'R' : 'L';
                if (act.move == toward) return vq == state_rank(act.state);
                return vq == kStar;
            }
        }
        return false;
    }

private:
    const TMSpec* tm_;
    std::string input_;
    std::size_t n_ = 0;
    std::size_t q_count_ = 0;
    std::size_t g_count_ = 0;
    std::string gamma_order_;  // blank first, then the rest of Gamma
    std::map<std::string, std::size_t> state_rank_;
    std::map<char, std::size_t> symbol_rank_;
};

// Explicit consistency tables over the full tile alphabet.
struct ConsistencyTable {
    std::size_t tiles = 0;
    std::array<std::vector<bool>, 4> allowed;  // allowed[D][u * tiles + v]

    bool get(Dir d, std::size_t u, std::size_t v) const {
        return allowed[static_cast<std::size_t>(d)][u * tiles + v];
    }
};

inline ConsistencyTable consistency(const TMSpec& tm, const std::string& input) {
    TileAlphabet tiles(tm, input);
    ConsistencyTable table;
    table.tiles = tiles.tile_count();
    for (Dir d : {Dir::V, Dir::H, Dir::R, Dir::L}) {
        auto& m = table.allowed[static_cast<std::size_t>(d)];
        m.assign(table.tiles * table.tiles, false);
        for (std::size_t u = 0; u < table.tiles; ++u)
            for (std::size_t v = 0; v < table.tiles; ++v)
                m[u * table.tiles + v] = tiles.in_consistency(d, u, v);
    }
    return table;
}

namespace gadgets {

// Digit graphs over labels 0..b-1.
inline BaseGraph digit_empty(const std::string& name, std::size_t b) {
    std::vector<VertexLabel> vs(b);
    for (std::size_t i = 0; i < b; ++i) vs[i] = static_cast<VertexLabel>(i);
    return BaseGraph(name, vs, {});
}

inline BaseGraph digit_step(const std::string& name, std::size_t b, bool increasing) {
    std::vector<VertexLabel> vs(b);
    for (std::size_t i = 0; i < b; ++i) vs[i] = static_cast<VertexLabel>(i);
    std::vector<BaseGraph::Edge> es;
    for (std::size_t i = 0; i + 1 < b; ++i) {
        if (increasing)
            es.emplace_back(static_cast<VertexLabel>(i), static_cast<VertexLabel>(i + 1));
        else
            es.emplace_back(static_cast<VertexLabel>(i + 1), static_cast<VertexLabel>(i));
    }
    return BaseGraph(name, vs, es);
}

inline BaseGraph digit_wrap(const std::string& name, std::size_t b, bool increasing) {
    std::vector<VertexLabel> vs(b);
    for (std::size_t i = 0; i < b; ++i) vs[i] = static_cast<VertexLabel>(i);
    std::vector<BaseGraph::Edge> es;
    if (increasing)
        es.emplace_back(static_cast<VertexLabel>(b - 1), 0);
    else
        es.emplace_back(0, static_cast<VertexLabel>(b - 1));
    return BaseGraph(name, vs, es);
}

// The increment path on b^k labels as the union over i of
// A^{cart(k-i-1)} cart (B tensor C^{tensor i}): each summand holds the "add
// one" edges that wrap exactly the i least significant digits.
inline Formula path_formula(std::size_t k, const std::string& empty_name,
                            const std::string& step_name, const std::string& wrap_name) {
    std::vector<Formula> summands;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Formula> tensor_part{Formula::leaf(step_name)};
        for (std::size_t j = 0; j < i; ++j) tensor_part.push_back(Formula::leaf(wrap_name));
        Formula low = Formula::node(Op::Tensor, std::move(tensor_part));
        std::vector<Formula> cart_part;
        for (std::size_t j = 0; j + i + 1 < k; ++j) cart_part.push_back(Formula::leaf(empty_name));
        cart_part.push_back(std::move(low));
        summands.push_back(Formula::node(Op::Cart, std::move(cart_part)));
    }
    return Formula::node(Op::Union, std::move(summands));
}

inline Formula empty_power_formula(std::size_t k, const std::string& empty_name) {
    std::vector<Formula> parts;
    for (std::size_t j = 0; j < k; ++j) parts.push_back(Formula::leaf(empty_name));
    return Formula::node(Op::Cart, std::move(parts));
}

// T x T grid with edges in one direction, T = b^k. Uses graph names
// A (edgeless), B/C (increment), Br/Cr (decrement).
inline Formula grid_formula(Dir d, std::size_t k) {
    Formula inc = path_formula(k, "A", "B", "C");
    Formula empty = empty_power_formula(k, "A");
    switch (d) {
        case Dir::V: return Formula::node(Op::Cart, {inc, empty});
        case Dir::H: return Formula::node(Op::Cart, {empty, inc});
        case Dir::R: return Formula::node(Op::Tensor, {inc, path_formula(k, "A", "B", "C")});
        case Dir::L: return Formula::node(Op::Tensor, {inc, path_formula(k, "A", "Br", "Cr")});
    }
    throw std::logic_error("bad direction");
}

inline void add_digit_graphs(FormulaDoc& doc, std::size_t b) {
    doc.add_graph(digit_empty("A", b));
    doc.add_graph(digit_step("B", b, true));
    doc.add_graph(digit_wrap("C", b, true));
    doc.add_graph(digit_step("Br", b, false));
    doc.add_graph(digit_wrap("Cr", b, false));
}

}  // namespace gadgets

// Document with the four one-direction grids on a (b^k) x (b^k) vertex grid,
// as formulas GV, GH, GR, GL.
inline FormulaDoc build_grid_doc(std::size_t b, std::size_t k) {
    FormulaDoc doc;
    gadgets::add_digit_graphs(doc, b);
    doc.add_formula("GV", gadgets::grid_formula(Dir::V, k));
    doc.add_formula("GH", gadgets::grid_formula(Dir::H, k));
    doc.add_formula("GR", gadgets::grid_formula(Dir::R, k));
    doc.add_formula("GL", gadgets::grid_formula(Dir::L, k));
    return doc;
}

// Factored representation of the increasing (or decreasing) path on b^k
// vertices in base-b label order, with at most k^2 - 1 operations.
inline CompiledInstance build_factored_path(std::size_t b, std::size_t k, bool increasing) {
    if (b < 2) throw ValidationError("path base must be at least 2");
    if (k < 1) throw ValidationError("path digit count must be at least 1");
    CompiledInstance out;
    out.doc.add_graph(gadgets::digit_empty("A", b));
    out.doc.add_graph(gadgets::digit_step("B", b, increasing));
    out.doc.add_graph(gadgets::digit_wrap("C", b, increasing));
    out.doc.add_formula("path", gadgets::path_formula(k, "A", "B", "C"));
    out.formula_name = "path";
    for (std::size_t d = 0; d < b; ++d)
        out.legend.emplace_back(static_cast<VertexLabel>(d), "digit " + std::to_string(d));
    return out;
}

// Compiles a run of a deterministic TM into a factored LFMIS instance. The
// emitted graph is a T x T grid of supernodes over the tile alphabet:
// intra-supernode cliques keep at most one tile per position, and
// non-consistent tile pairs between neighboring supernodes are connected so
// the greedy choice reproduces the execution history. The target vertex is
// the accepting tile in the last row's first column.
inline CompiledInstance compile_tm_lfmis(const TMSpec& tm, const std::string& input,
                                         std::size_t max_steps = 100000,
                                         std::size_t grid_cap = 4096) {
    if (input.size() < 2)
        throw ValidationError("compile_tm_lfmis requires input length at least 2");
    ExecutionTrace trace = simulate_tm(tm, input, max_steps);

    std::size_t n = input.size();
    std::size_t T = n;
    std::size_t k = 1;
    while (T < trace.t) {
        if (T > grid_cap / n)
            throw CapExceeded("grid size cap exceeded (T would pass " + std::to_string(grid_cap) +
                              ")");
        T *= n;
        ++k;
    }
    if (T > grid_cap) throw CapExceeded("grid size cap exceeded");

    TileAlphabet tiles(tm, input);
    CompiledInstance out;
    gadgets::add_digit_graphs(out.doc, n);

    // Relation graphs: an edge marks a forbidden (non-consistent) tile pair.
    auto pair_label = [&](std::size_t t) { return static_cast<VertexLabel>(n + t); };
    std::vector<VertexLabel> tile_vs(tiles.tile_count());
    for (std::size_t t = 0; t < tiles.tile_count(); ++t) tile_vs[t] = pair_label(t);
    const char* rel_name[4] = {"RV", "RH", "RR", "RL"};
    for (Dir d : {Dir::V, Dir::H, Dir::R, Dir::L}) {
        std::vector<BaseGraph::Edge> es;
        for (std::size_t u = 0; u < tiles.tile_count(); ++u)
            for (std::size_t v = 0; v < tiles.tile_count(); ++v)
                if (!tiles.in_consistency(d, u, v)) es.emplace_back(pair_label(u), pair_label(v));
        out.doc.add_graph(BaseGraph(rel_name[static_cast<std::size_t>(d)], tile_vs, std::move(es)));
    }
    {
        std::vector<BaseGraph::Edge> es;
        for (std::size_t u = 0; u < tiles.tile_count(); ++u)
            for (std::size_t v = 0; v < tiles.tile_count(); ++v)
                if (u != v) es.emplace_back(pair_label(u), pair_label(v));
        out.doc.add_graph(BaseGraph("K", tile_vs, std::move(es)));
    }

    Formula empty = gadgets::empty_power_formula(k, "A");
    Formula inc = gadgets::path_formula(k, "A", "B", "C");
    Formula dec = gadgets::path_formula(k, "A", "Br", "Cr");
    Formula complete_grid = Formula::node(Op::Cart, {empty, empty, Formula::leaf("K")});
    Formula vertical = Formula::node(Op::Tensor, {Formula::node(Op::Cart, {inc, empty}),
                                                  Formula::leaf("RV")});
    Formula horizontal = Formula::node(Op::Tensor, {Formula::node(Op::Cart, {empty, inc}),
                                                    Formula::leaf("RH")});
    Formula diag_right = Formula::node(Op::Tensor, {inc, inc, Formula::leaf("RR")});
    Formula diag_left = Formula::node(Op::Tensor, {inc, dec, Formula::leaf("RL")});
    out.doc.add_formula("G", Formula::node(Op::Union, {complete_grid, vertical, horizontal,
                                                       diag_right, diag_left}));
    out.formula_name = "G";

    // Target: last row, first column, accepting tile over blank.
    FactoredVertex target;
    std::size_t last = T - 1;
    std::vector<VertexLabel> row_digits(k);
    for (std::size_t i = k; i-- > 0;) {
        row_digits[i] = static_cast<VertexLabel>(last % n);
        last /= n;
    }
    target.insert(target.end(), row_digits.begin(), row_digits.end());
    target.insert(target.end(), k, 0);
    target.push_back(pair_label(tiles.tile(tiles.state_rank(tm.accept), tiles.blank_rank())));
    out.lfmis_target = target;

    for (std::size_t d = 0; d < n; ++d)
        out.legend.emplace_back(static_cast<VertexLabel>(d), "digit " + std::to_string(d));
    for (std::size_t t = 0; t < tiles.tile_count(); ++t)
        out.legend.emplace_back(pair_label(t), tiles.tile_display(t));
    return out;
}

}  // namespace fg
