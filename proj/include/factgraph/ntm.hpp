#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "factgraph/compiled.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/machine_format.hpp"

namespace fg {

// Nondeterministic machine with a read-only input head and a bounded work
// tape of length space * ceil(log2 n). Heads clamp at the tape ends. Moves
// are L, R, or S.
struct NTMSpec {
    struct Step {
        std::string state;
        char write;      // work symbol written
        char move_in;    // 'L', 'R', 'S'
        char move_work;
    };

    std::vector<std::string> states;
    std::string input_alphabet;
    std::string work_alphabet;  // contains '_'
    std::string start;
    std::string accept;
    std::string reject;
    std::size_t space = 2;  // S
    std::map<std::tuple<std::string, char, char>, std::vector<Step>> delta;

    bool has_state(const std::string& q) const {
        return std::find(states.begin(), states.end(), q) != states.end();
    }

    void validate() const {
        if (accept == reject) throw ValidationError("ntm: accept and reject states must differ");
        for (const std::string& q : {start, accept, reject})
            if (!has_state(q)) throw ValidationError("ntm: undeclared state '" + q + "'");
        if (work_alphabet.find(kBlank) == std::string::npos)
            throw ValidationError("ntm: work alphabet must contain '_'");
        if (space < 1) throw ValidationError("ntm: space factor must be at least 1");
        for (const char* w : {"wrap_fwd", "wrap_wipe", "wrap_home", "wrap_done"})
            if (has_state(w)) throw ValidationError(std::string("ntm: state name '") + w +
                                                    "' is reserved");
        for (const auto& [key, steps] : delta) {
            const auto& [q, ain, aw] = key;
            if (!has_state(q)) throw ValidationError("ntm: transition from undeclared state");
            if (q == accept || q == reject)
                throw ValidationError("ntm: transition out of halting state '" + q + "'");
            if (input_alphabet.find(ain) == std::string::npos)
                throw ValidationError("ntm: transition reads undeclared input symbol");
            if (work_alphabet.find(aw) == std::string::npos)
                throw ValidationError("ntm: transition reads undeclared work symbol");
            for (const Step& s : steps) {
                if (!has_state(s.state)) throw ValidationError("ntm: transition to undeclared state");
                if (work_alphabet.find(s.write) == std::string::npos)
                    throw ValidationError("ntm: transition writes undeclared work symbol");
                for (char m : {s.move_in, s.move_work})
                    if (m != 'L' && m != 'R' && m != 'S')
                        throw ValidationError("ntm: moves must be L, R, or S");
            }
        }
    }
};

// .ntm reader, same shape as .tm plus "space:" and triple-keyed delta rows;
// repeating a key accumulates nondeterministic choices.
inline NTMSpec parse_ntm(std::string_view text) {
    detail::SpecScanner sc(text);
    sc.expect_keyword("ntm");
    sc.expect_punct('{');
    NTMSpec m;
    auto expect_symbol = [&](const std::string& word) -> char {
        if (word.size() != 1)
            throw ValidationError("ntm: symbols are single characters, got '" + word + "'");
        return word[0];
    };
    while (!sc.accept_punct('}')) {
        std::string field = sc.expect_word("field name");
        sc.expect_punct(':');
        if (field == "states") {
            while (sc.peek_word()) m.states.push_back(sc.expect_word("state"));
        } else if (field == "input") {
            while (sc.peek_word()) m.input_alphabet += expect_symbol(sc.expect_word("symbol"));
        } else if (field == "tape") {
            while (sc.peek_word()) m.work_alphabet += expect_symbol(sc.expect_word("symbol"));
        } else if (field == "start") {
            m.start = sc.expect_word("state");
        } else if (field == "accept") {
            m.accept = sc.expect_word("state");
        } else if (field == "reject") {
            m.reject = sc.expect_word("state");
        } else if (field == "space") {
            m.space = std::stoul(sc.expect_word("space factor"));
        } else if (field == "delta") {
            while (sc.accept_punct('(')) {
                std::string q = sc.expect_word("state");
                sc.expect_punct(',');
                char ain = expect_symbol(sc.expect_word("symbol"));
                sc.expect_punct(',');
                char aw = expect_symbol(sc.expect_word("symbol"));
                sc.expect_punct(')');
                sc.expect_arrow();
                sc.expect_punct('(');
                NTMSpec::Step s;
                s.state = sc.expect_word("state");
                sc.expect_punct(',');
                s.write = expect_symbol(sc.expect_word("symbol"));
                sc.expect_punct(',');
                s.move_in = expect_symbol(sc.expect_word("move"));
                sc.expect_punct(',');
                s.move_work = expect_symbol(sc.expect_word("move"));
                sc.expect_punct(')');
                m.delta[{q, ain, aw}].push_back(s);
            }
        } else {
            throw ValidationError("ntm: unknown field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    if (!sc.eof()) throw ValidationError("ntm: trailing input after '}'");
    m.validate();
    return m;
}

namespace detail {

// One resolved machine step with absolute (clamped) head positions. The
// accept state is wrapped with a deterministic cleanup walk - sweep to the
// right end, wipe leftward, rewind the input head - so that acceptance is
// witnessed by the single normalized configuration in state wrap_done with a
// blank work tape and both heads leftmost. Position-dependent wrapper rules
// are fine here: both the oracle and the compiled graphs work at the
// configuration level, where head positions are part of the vertex.
struct NtmStep {
    std::string state;
    char write;
    std::size_t in_pos;
    std::size_t work_pos;
};

inline std::vector<NtmStep> ntm_next_steps(const NTMSpec& m, const std::string& state, char a_in,
                                           char a_work, std::size_t in_pos, std::size_t work_pos,
                                           std::size_t input_len, std::size_t work_len) {
    auto clamp_in = [&](std::size_t p, char mv) -> std::size_t {
        if (mv == 'R') return p + 1 < input_len ? p + 1 : p;
        if (mv == 'L') return p > 0 ? p - 1 : 0;
        return p;
    };
    auto clamp_work = [&](std::size_t p, char mv) -> std::size_t {
        if (mv == 'R') return p + 1 < work_len ? p + 1 : p;
        if (mv == 'L') return p > 0 ? p - 1 : 0;
        return p;
    };
    std::vector<NtmStep> out;
    if (state == m.reject || state == "wrap_done") return out;
    if (state == m.accept) {
        out.push_back({"wrap_fwd", a_work, in_pos, work_pos});
    } else if (state == "wrap_fwd") {
        if (work_pos + 1 < work_len)
            out.push_back({"wrap_fwd", a_work, in_pos, work_pos + 1});
        else
            out.push_back({"wrap_wipe", kBlank, in_pos, clamp_work(work_pos, 'L')});
    } else if (state == "wrap_wipe") {
        if (work_pos > 0)
            out.push_back({"wrap_wipe", kBlank, in_pos, work_pos - 1});
        else
            out.push_back({"wrap_home", kBlank, in_pos, 0});
    } else if (state == "wrap_home") {
        if (in_pos > 0)
            out.push_back({"wrap_home", a_work, in_pos - 1, work_pos});
        else
            out.push_back({"wrap_done", a_work, 0, work_pos});
    } else {
        auto it = m.delta.find({state, a_in, a_work});
        if (it != m.delta.end()) {
            for (const NTMSpec::Step& s : it->second)
                out.push_back({s.state, s.write, clamp_in(in_pos, s.move_in),
                               clamp_work(work_pos, s.move_work)});
        }
    }
    return out;
}

inline std::size_t ntm_segment_width(std::size_t input_len) {
    std::size_t w = 1;
    while ((std::size_t{1} << w) < input_len) ++w;
    return w;  // max(1, ceil(log2 n))
}

}  // namespace detail

// Explicit BFS over full configurations (state, both head positions, work
// tape); the oracle for the compiled instances. Answers whether the
// normalized accepting configuration is reachable.
inline bool simulate_ntm_config_graph(const NTMSpec& m, const std::string& input,
                                      std::size_t config_cap = 1'000'000) {
    for (char a : input)
        if (m.input_alphabet.find(a) == std::string::npos)
            throw ValidationError(std::string("input symbol '") + a + "' not in input alphabet");
    if (input.empty()) throw ValidationError("ntm input must be nonempty");
    std::size_t n = input.size();
    std::size_t work_len = m.space * detail::ntm_segment_width(n);

    struct Config {
        std::string state;
        std::size_t in_pos;
        std::size_t work_pos;
        std::string work;
    };
    auto key = [](const Config& c) {
        return c.state + "\x1f" + std::to_string(c.in_pos) + "," + std::to_string(c.work_pos) +
               "," + c.work;
    };
    Config start{m.start, 0, 0, std::string(work_len, kBlank)};
    std::unordered_set<std::string> seen{key(start)};
    std::deque<Config> frontier{start};
    while (!frontier.empty()) {
        Config c = std::move(frontier.front());
        frontier.pop_front();
        if (c.state == "wrap_done") return true;
        for (const detail::NtmStep& s :
             detail::ntm_next_steps(m, c.state, input[c.in_pos], c.work[c.work_pos], c.in_pos,
                                    c.work_pos, n, work_len)) {
            Config next{s.state, s.in_pos, s.work_pos, c.work};
            next.work[c.work_pos] = s.write;
            if (seen.insert(key(next)).second) {
                if (seen.size() > config_cap)
                    throw CapExceeded("ntm configuration cap exceeded (" +
                                      std::to_string(config_cap) + ")");
                frontier.push_back(std::move(next));
            }
        }
    }
    return false;
}

// Compiles acceptance of a space-bounded NTM into factored-graph
// reachability over segmented configurations. The work tape is split into
// `space` segments of ceil(log2 n) cells; a segment's sub-configuration is
// its cell contents, plus the state and both (absolute) head positions when
// the work head sits inside it. Rows of the formula are tensor products:
// one "stay" row per segment (that segment steps via its transition graph
// while the rest hold via self-loops), and, per segment boundary and
// crossing direction, one row per handoff datum (target state, target input
// position) pairing a departure graph on one side with an activation graph
// on the other. Every factor size depends only on the input length, never
// on the space factor.
inline CompiledInstance compile_ntm_reach(const NTMSpec& m, const std::string& input,
                                          std::size_t factor_cap = 200000) {
    for (char a : input)
        if (m.input_alphabet.find(a) == std::string::npos)
            throw ValidationError(std::string("input symbol '") + a + "' not in input alphabet");
    if (input.empty()) throw ValidationError("ntm input must be nonempty");

    std::size_t S = m.space;
    std::size_t n = input.size();
    std::size_t w = detail::ntm_segment_width(n);
    std::size_t work_len = S * w;

    std::vector<std::string> all_states = m.states;
    for (const char* q : {"wrap_fwd", "wrap_wipe", "wrap_home", "wrap_done"})
        all_states.push_back(q);
    std::size_t nstates = all_states.size();
    std::size_t nsym = m.work_alphabet.size();
    auto state_index = [&](const std::string& q) {
        return static_cast<std::size_t>(std::find(all_states.begin(), all_states.end(), q) -
                                        all_states.begin());
    };
    auto sym_index = [&](char c) { return m.work_alphabet.find(c); };

    std::size_t contents = 1;
    for (std::size_t i = 0; i < w; ++i) {
        if (contents > factor_cap / nsym)
            throw CapExceeded("ntm factor size cap exceeded (segment contents)");
        contents *= nsym;
    }
    std::size_t active_count = nstates * n * w * contents;
    std::size_t seg_stride = contents + active_count;
    if (active_count > factor_cap)
        throw CapExceeded("ntm factor size cap exceeded (" + std::to_string(active_count) +
                          " active sub-configurations)");

    // Sub-configuration labels for segment i: inactive contents first, then
    // active (state, input position, in-segment offset, contents).
    auto inactive_label = [&](std::size_t seg, std::size_t content) {
        return static_cast<VertexLabel>(seg * seg_stride + content);
    };
    auto active_label = [&](std::size_t seg, std::size_t q, std::size_t in_pos, std::size_t off,
                            std::size_t content) {
        return static_cast<VertexLabel>(seg * seg_stride + contents +
                                        ((q * n + in_pos) * w + off) * contents + content);
    };
    auto content_digit = [&](std::size_t content, std::size_t off) {
        for (std::size_t i = w - 1; i > off; --i) content /= nsym;
        return content % nsym;
    };
    auto content_write = [&](std::size_t content, std::size_t off, std::size_t digit) {
        std::size_t place = 1;
        for (std::size_t i = off + 1; i < w; ++i) place *= nsym;
        return content - content_digit(content, off) * place + digit * place;
    };

    CompiledInstance out;
    auto seg_name = [](const std::string& stem, std::size_t seg) {
        return stem + std::to_string(seg);
    };

    // Inactive and active (stay) graphs per segment.
    for (std::size_t seg = 0; seg < S; ++seg) {
        std::vector<VertexLabel> ivs(contents);
        std::vector<BaseGraph::Edge> ies(contents);
        for (std::size_t c = 0; c < contents; ++c) {
            ivs[c] = inactive_label(seg, c);
            ies[c] = {ivs[c], ivs[c]};
        }
        out.doc.add_graph(BaseGraph(seg_name("I", seg), std::move(ivs), std::move(ies)));

        std::vector<VertexLabel> avs;
        std::vector<BaseGraph::Edge> aes;
        for (std::size_t q = 0; q < nstates; ++q) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t off = 0; off < w; ++off) {
                    for (std::size_t c = 0; c < contents; ++c) {
                        VertexLabel from = active_label(seg, q, p, off, c);
                        avs.push_back(from);
                        std::size_t global = seg * w + off;
                        char a_work = m.work_alphabet[content_digit(c, off)];
                        for (const detail::NtmStep& s :
                             detail::ntm_next_steps(m, all_states[q], input[p], a_work, p, global,
                                                    n, work_len)) {
                            if (s.work_pos / w != seg) continue;  // handled by boundary rows
                            std::size_t c2 = content_write(c, off, sym_index(s.write));
                            aes.emplace_back(from, active_label(seg, state_index(s.state),
                                                                s.in_pos, s.work_pos - seg * w,
                                                                c2));
                        }
                    }
                }
            }
        }
        out.doc.add_graph(BaseGraph(seg_name("A", seg), std::move(avs), std::move(aes)));
    }

    // Boundary-crossing rows. A crossing at boundary (seg-1 | seg) moving
    // right pairs a departure edge (active at the last cell of seg-1 becomes
    // inactive, applying the write) with an activation edge (inactive seg
    // becomes active at its first cell in the handoff state and input
    // position). Splitting by handoff datum keeps both sides independent, so
    // a tensor product expresses the simultaneous change exactly.
    struct Handoff {
        std::size_t q;
        std::size_t in_pos;
    };
    struct CrossRow {
        std::size_t boundary;  // between boundary-1 and boundary
        bool rightward;
        std::string depart_name;
        std::string activate_name;
    };
    std::vector<CrossRow> cross_rows;
    for (std::size_t seg = 1; seg < S; ++seg) {
        for (bool rightward : {true, false}) {
            std::size_t from_seg = rightward ? seg - 1 : seg;
            std::size_t to_seg = rightward ? seg : seg - 1;
            std::size_t from_off = rightward ? w - 1 : 0;
            std::size_t to_off = rightward ? 0 : w - 1;
            std::size_t target_global = to_seg * w + to_off;

            // Collect handoffs and the departure edges they carry.
            std::map<std::pair<std::size_t, std::size_t>, std::vector<BaseGraph::Edge>> departs;
            for (std::size_t q = 0; q < nstates; ++q) {
                for (std::size_t p = 0; p < n; ++p) {
                    for (std::size_t c = 0; c < contents; ++c) {
                        VertexLabel from = active_label(from_seg, q, p, from_off, c);
                        std::size_t global = from_seg * w + from_off;
                        char a_work = m.work_alphabet[content_digit(c, from_off)];
                        for (const detail::NtmStep& s :
                             detail::ntm_next_steps(m, all_states[q], input[p], a_work, p, global,
                                                    n, work_len)) {
                            if (s.work_pos != target_global) continue;
                            std::size_t c2 = content_write(c, from_off, sym_index(s.write));
                            departs[{state_index(s.state), s.in_pos}].emplace_back(
                                from, inactive_label(from_seg, c2));
                        }
                    }
                }
            }
            std::size_t branch = 0;
            for (auto& [handoff, edges] : departs) {
                auto [q2, p2] = handoff;
                std::string suffix = std::to_string(seg) + (rightward ? "r" : "l") + "b" +
                                     std::to_string(branch++);
                // Departure graph on from_seg.
                {
                    std::set<VertexLabel> vs;
                    for (const auto& e : edges) {
                        vs.insert(e.first);
                        vs.insert(e.second);
                    }
                    out.doc.add_graph(BaseGraph("Dp" + suffix,
                                                std::vector<VertexLabel>(vs.begin(), vs.end()),
                                                edges));
                }
                // Activation graph on to_seg: any contents wake at to_off.
                {
                    std::vector<VertexLabel> vs;
                    std::vector<BaseGraph::Edge> es;
                    for (std::size_t c = 0; c < contents; ++c) {
                        VertexLabel from = inactive_label(to_seg, c);
                        VertexLabel to = active_label(to_seg, q2, p2, to_off, c);
                        vs.push_back(from);
                        vs.push_back(to);
                        es.emplace_back(from, to);
                    }
                    out.doc.add_graph(BaseGraph("Ac" + suffix, std::move(vs), std::move(es)));
                }
                cross_rows.push_back({seg, rightward, "Dp" + suffix, "Ac" + suffix});
            }
        }
    }

    // Family of tensor rows: stay rows then crossing rows.
    std::vector<Formula> rows;
    for (std::size_t active = 0; active < S; ++active) {
        std::vector<Formula> factors;
        for (std::size_t seg = 0; seg < S; ++seg)
            factors.push_back(Formula::leaf(seg == active ? seg_name("A", seg)
                                                          : seg_name("I", seg)));
        rows.push_back(Formula::node(Op::Tensor, std::move(factors)));
    }
    for (const CrossRow& cr : cross_rows) {
        std::vector<Formula> factors;
        for (std::size_t seg = 0; seg < S; ++seg) {
            if (seg == cr.boundary - 1)
                factors.push_back(Formula::leaf(cr.rightward ? cr.depart_name : cr.activate_name));
            else if (seg == cr.boundary)
                factors.push_back(Formula::leaf(cr.rightward ? cr.activate_name : cr.depart_name));
            else
                factors.push_back(Formula::leaf(seg_name("I", seg)));
        }
        rows.push_back(Formula::node(Op::Tensor, std::move(factors)));
    }
    out.doc.add_formula("G", Formula::node(Op::Union, std::move(rows)));
    out.formula_name = "G";

    // src: start state, heads leftmost, blank tape (segment 0 active).
    // dst: the normalized accepting configuration.
    std::size_t blank_content = 0;
    for (std::size_t i = 0; i < w; ++i)
        blank_content = blank_content * nsym + sym_index(kBlank);
    FactoredVertex src{active_label(0, state_index(m.start), 0, 0, blank_content)};
    FactoredVertex dst{active_label(0, state_index("wrap_done"), 0, 0, blank_content)};
    for (std::size_t seg = 1; seg < S; ++seg) {
        src.push_back(inactive_label(seg, blank_content));
        dst.push_back(inactive_label(seg, blank_content));
    }
    out.reach_query = {src, dst};

    // Legend.
    auto content_string = [&](std::size_t c) {
        std::string s(w, '?');
        for (std::size_t off = 0; off < w; ++off) s[off] = m.work_alphabet[content_digit(c, off)];
        return s;
    };
    for (std::size_t seg = 0; seg < S; ++seg) {
        for (std::size_t c = 0; c < contents; ++c)
            out.legend.emplace_back(inactive_label(seg, c),
                                    "seg" + std::to_string(seg) + " inactive [" +
                                        content_string(c) + "]");
        for (std::size_t q = 0; q < nstates; ++q)
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t off = 0; off < w; ++off)
                    for (std::size_t c = 0; c < contents; ++c)
                        out.legend.emplace_back(
                            active_label(seg, q, p, off, c),
                            "seg" + std::to_string(seg) + " active q=" + all_states[q] +
                                " pin=" + std::to_string(p) + " off=" + std::to_string(off) +
                                " [" + content_string(c) + "]");
    }
    return out;
}

}  // namespace fg
