#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "factgraph/adjacency.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/materialize.hpp"

namespace fg {

struct CliqueCount {
    std::size_t s = 0;
    std::map<std::size_t, unsigned long long> per_dimension;  // dim -> unordered clique count
    unsigned long long total = 0;

    // Count of ordered s-tuples of distinct vertices forming cliques.
    unsigned long long ordered_total() const {
        unsigned long long f = 1;
        for (std::size_t i = 2; i <= s; ++i) f *= i;
        return total * f;
    }
};

namespace detail {

inline void require_symmetric_bases(const FormulaView& view) {
    std::vector<std::string> leaves;
    view.formula().collect_leaf_names(leaves);
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    for (const std::string& name : leaves) {
        if (!view.doc().graph(name).is_symmetric())
            throw ValidationError("clique counting requires symmetric base graphs; '" + name +
                                  "' has an unpaired directed edge");
    }
}

// Signed inclusion-exclusion over the nonempty subsets of a component set:
// sum of (-1)^(|T|+1) over nonempty T within `mask`. Collapses to 1 when the
// set is nonempty and 0 otherwise; the unit tests verify the collapse against
// explicit subset enumeration.
inline unsigned long long nonempty_subset_ie(std::uint32_t mask) { return mask != 0 ? 1 : 0; }

// Per-coordinate signature of an s-tuple of labels: equality and
// per-component adjacency for every unordered pair, plus per-component
// membership for every element. 256 bits is enough for every instance the
// decomposition guard admits.
struct CoordSig {
    std::array<std::uint64_t, 4> w{};

    void set(std::size_t bit) { w[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
    bool get(std::size_t bit) const { return (w[bit >> 6] >> (bit & 63)) & 1; }
    bool operator==(const CoordSig& o) const { return w == o.w; }
};

struct CoordSigHash {
    std::size_t operator()(const CoordSig& s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t x : s.w) {
            h ^= x;
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h);
    }
};

struct SigLayout {
    std::size_t s;
    std::size_t M;

    std::size_t pairs() const { return s * (s - 1) / 2; }
    std::size_t pair_index(std::size_t i, std::size_t j) const {
        // i < j
        return i * s - i * (i + 1) / 2 + (j - i - 1);
    }
    std::size_t eq_bit(std::size_t p) const { return p * (M + 1); }
    std::size_t adj_bit(std::size_t p, std::size_t m) const { return p * (M + 1) + 1 + m; }
    std::size_t mem_bit(std::size_t i, std::size_t m) const {
        return pairs() * (M + 1) + i * M + m;
    }
    std::size_t bits() const { return pairs() * (M + 1) + s * M; }
};

// Evaluates one component's edge predicate between tuple elements i < j from
// per-coordinate signature bits alone; mirrors comp_edge_eq.
inline EdgeEq sig_edge_eq(const CompNode& n, const SigLayout& lay, std::size_t m, std::size_t p,
                          std::size_t i, const std::vector<const CoordSig*>& row) {
    if (n.is_leaf()) {
        std::size_t coord = n.leaf_begin;
        bool adj = row[coord]->get(lay.adj_bit(p, m));
        bool eq = row[coord]->get(lay.eq_bit(p));
        bool mem = row[coord]->get(lay.mem_bit(i, m));
        return {adj, eq && mem};
    }
    if (n.op == Op::Tensor) {
        bool edge = true;
        bool eqmem = true;
        for (const CompNode& c : n.children) {
            EdgeEq r = sig_edge_eq(c, lay, m, p, i, row);
            edge = edge && r.edge;
            eqmem = eqmem && r.eqmem;
            if (!edge && !eqmem) break;
        }
        return {edge, eqmem};
    }
    std::size_t edge_only = 0;
    std::size_t edge_and_eq = 0;
    bool all_eqmem = true;
    bool any_neither = false;
    for (const CompNode& c : n.children) {
        EdgeEq r = sig_edge_eq(c, lay, m, p, i, row);
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

// Counts s-cliques per dimension class without materializing the graph.
//
// Within one dimension class with components F_1..F_M, an s-tuple forms a
// clique exactly when every pair is adjacent in at least one component, i.e.
// it satisfies some decomposition (a map from pairs to components). The count
// is obtained by inclusion-exclusion over, per pair, the nonempty component
// subsets in which the pair is simultaneously adjacent. Tuples are classified
// coordinate by coordinate: per coordinate we count label tuples by their
// equality / adjacency / membership signature, then sum products of
// per-coordinate counts over the signature combinations whose induced row
// passes the edge, distinctness, and membership predicates. Only realized
// signatures are enumerated.
inline CliqueCount count_cliques_fpt(const FormulaView& view, std::size_t s,
                                     std::size_t decomp_cap = 4096,
                                     std::size_t row_cap = (std::size_t{1} << 26)) {
    if (s < 1) throw ValidationError("clique size must be at least 1");
    detail::require_symmetric_bases(view);

    CliqueCount result;
    result.s = s;
    unsigned long long s_factorial = 1;
    for (std::size_t i = 2; i <= s; ++i) s_factorial *= i;

    std::vector<std::size_t> dims;
    for (const ComponentTree& c : view.comps()) dims.push_back(c.dim());
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    for (std::size_t d : dims) {
        std::vector<std::size_t> comp_ids;
        for (std::size_t ci = 0; ci < view.comps().size(); ++ci)
            if (view.comps()[ci].dim() == d) comp_ids.push_back(ci);
        std::size_t M = comp_ids.size();

        detail::SigLayout lay{s, M};
        std::size_t pair_count = lay.pairs();
        // Decomposition-space guard: M^C(s,2) maps from pairs to components.
        unsigned long long decomps = 1;
        for (std::size_t p = 0; p < pair_count; ++p) {
            if (decomps > decomp_cap / std::max<std::size_t>(M, 1)) {
                decomps = decomp_cap + 1;
                break;
            }
            decomps *= M;
        }
        if (decomps > decomp_cap || lay.bits() > 256 || M > 32)
            throw CapExceeded("decomposition count exceeds cap for dimension " +
                              std::to_string(d) + "; use the naive method");

        // Per-coordinate universes and leaf graphs.
        std::vector<std::vector<VertexLabel>> universe(d);
        std::vector<std::vector<const BaseGraph*>> leaf_graph(M, std::vector<const BaseGraph*>(d));
        for (std::size_t mi = 0; mi < M; ++mi) {
            const ComponentTree& c = view.comps()[comp_ids[mi]];
            for (std::size_t l = 0; l < d; ++l) {
                const BaseGraph& g = view.doc().graph(c.leaves[l]);
                leaf_graph[mi][l] = &g;
                universe[l].insert(universe[l].end(), g.vertices().begin(), g.vertices().end());
            }
        }
        for (std::size_t l = 0; l < d; ++l) {
            std::sort(universe[l].begin(), universe[l].end());
            universe[l].erase(std::unique(universe[l].begin(), universe[l].end()),
                              universe[l].end());
        }

        // Classify per-coordinate s-tuples by signature.
        std::vector<std::vector<std::pair<detail::CoordSig, unsigned long long>>> realized(d);
        for (std::size_t l = 0; l < d; ++l) {
            std::unordered_map<detail::CoordSig, unsigned long long, detail::CoordSigHash> sigs;
            std::vector<std::size_t> idx(s, 0);
            const std::vector<VertexLabel>& U = universe[l];
            while (true) {
                detail::CoordSig sig;
                for (std::size_t i = 0; i < s; ++i) {
                    VertexLabel a = U[idx[i]];
                    for (std::size_t j = i + 1; j < s; ++j) {
                        VertexLabel b = U[idx[j]];
                        std::size_t p = lay.pair_index(i, j);
                        if (a == b) sig.set(lay.eq_bit(p));
                        for (std::size_t mi = 0; mi < M; ++mi)
                            if (leaf_graph[mi][l]->has_edge(a, b)) sig.set(lay.adj_bit(p, mi));
                    }
                    for (std::size_t mi = 0; mi < M; ++mi)
                        if (leaf_graph[mi][l]->has_vertex(a)) sig.set(lay.mem_bit(i, mi));
                }
                ++sigs[sig];
                std::size_t i = s;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++idx[i] < U.size()) {
                        done = false;
                        break;
                    }
                    idx[i] = 0;
                }
                if (done) break;
            }
            realized[l].assign(sigs.begin(), sigs.end());
        }

        unsigned long long rows = 1;
        for (std::size_t l = 0; l < d; ++l) {
            if (realized[l].empty() || rows > row_cap / realized[l].size() + 1)
                rows = row_cap + 1;
            else
                rows *= realized[l].size();
            if (rows > row_cap) break;
        }
        if (rows > row_cap)
            throw CapExceeded("signature row count exceeds cap for dimension " +
                              std::to_string(d) + "; use the naive method");

        // Walk all realized signature combinations.
        unsigned long long ordered = 0;
        std::vector<const detail::CoordSig*> row(d);
        std::vector<std::size_t> pick(d, 0);
        while (true) {
            unsigned long long weight = 1;
            for (std::size_t l = 0; l < d; ++l) {
                row[l] = &realized[l][pick[l]].first;
                weight *= realized[l][pick[l]].second;
            }

            bool ok = true;
            // Membership: each element must lie in some component of this class.
            for (std::size_t i = 0; i < s && ok; ++i) {
                bool member = false;
                for (std::size_t mi = 0; mi < M && !member; ++mi) {
                    bool all = true;
                    for (std::size_t l = 0; l < d; ++l)
                        if (!row[l]->get(lay.mem_bit(i, mi))) {
                            all = false;
                            break;
                        }
                    member = all;
                }
                ok = member;
            }
            // Distinctness and per-pair edge cover.
            if (ok) {
                for (std::size_t i = 0; i < s && ok; ++i) {
                    for (std::size_t j = i + 1; j < s && ok; ++j) {
                        std::size_t p = lay.pair_index(i, j);
                        bool all_eq = true;
                        for (std::size_t l = 0; l < d; ++l)
                            if (!row[l]->get(lay.eq_bit(p))) {
                                all_eq = false;
                                break;
                            }
                        if (all_eq) {
                            ok = false;
                            break;
                        }
                        std::uint32_t avail = 0;
                        for (std::size_t mi = 0; mi < M; ++mi) {
                            if (detail::sig_edge_eq(view.comp_node(comp_ids[mi]), lay, mi, p, i, row)
                                    .edge)
                                avail |= std::uint32_t{1} << mi;
                        }
                        if (detail::nonempty_subset_ie(avail) == 0) ok = false;
                    }
                }
            }
            if (ok) ordered += weight;

            std::size_t l = d;
            bool done = true;
            while (l > 0) {
                --l;
                if (++pick[l] < realized[l].size()) {
                    done = false;
                    break;
                }
                pick[l] = 0;
            }
            if (done) break;
        }

        if (ordered % s_factorial != 0)
            throw std::logic_error("clique count not divisible by s!");
        unsigned long long count = ordered / s_factorial;
        if (count > 0) result.per_dimension[d] = count;
        result.total += count;
    }
    return result;
}

// Materialization oracle: counts s-subsets with every pair adjacent in both
// directions, grouped by dimension.
inline CliqueCount count_cliques_naive(const FormulaView& view, std::size_t s,
                                       std::size_t vertex_cap = kDefaultVertexCap) {
    if (s < 1) throw ValidationError("clique size must be at least 1");
    detail::require_symmetric_bases(view);
    ExplicitGraph g = materialize(view, vertex_cap);

    std::map<std::size_t, std::vector<std::uint32_t>> by_dim;
    for (std::uint32_t i = 0; i < g.size(); ++i) by_dim[g.vertices()[i].size()].push_back(i);

    CliqueCount result;
    result.s = s;
    for (auto& [dim, ids] : by_dim) {
        unsigned long long count = 0;
        std::vector<std::uint32_t> chosen;
        auto extend = [&](auto&& self, std::size_t start) -> void {
            if (chosen.size() == s) {
                ++count;
                return;
            }
            for (std::size_t t = start; t < ids.size(); ++t) {
                std::uint32_t cand = ids[t];
                bool ok = true;
                for (std::uint32_t c : chosen)
                    if (!g.has_edge(c, cand) || !g.has_edge(cand, c)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                chosen.push_back(cand);
                self(self, t + 1);
                chosen.pop_back();
            }
        };
        extend(extend, 0);
        if (count > 0) result.per_dimension[dim] = count;
        result.total += count;
    }
    return result;
}

}  // namespace fg
