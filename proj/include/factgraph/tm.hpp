#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/errors.hpp"
#include "factgraph/machine_format.hpp"

namespace fg {

// Deterministic single-tape Turing machine. Tape symbols are single
// characters; '_' is the blank. The transition function must be total on
// (Q \ {accept, reject}) x Gamma.
struct TMSpec {
    struct Action {
        std::string state;
        char symbol;
        char move;  // 'L' or 'R'
    };

    std::vector<std::string> states;
    std::string input_alphabet;  // Sigma
    std::string tape_alphabet;   // Gamma, contains '_'
    std::string start;
    std::string accept;
    std::string reject;
    std::map<std::pair<std::string, char>, Action> delta;

    bool is_halting(const std::string& q) const { return q == accept || q == reject; }

    bool has_state(const std::string& q) const {
        return std::find(states.begin(), states.end(), q) != states.end();
    }

    void validate() const {
        if (accept == reject) throw ValidationError("tm: accept and reject states must differ");
        for (const std::string& q : {start, accept, reject})
            if (!has_state(q)) throw ValidationError("tm: undeclared state '" + q + "'");
        if (tape_alphabet.find(kBlank) == std::string::npos)
            throw ValidationError("tm: tape alphabet must contain '_'");
        for (char a : input_alphabet) {
            if (a == kBlank) throw ValidationError("tm: input alphabet cannot contain '_'");
            if (tape_alphabet.find(a) == std::string::npos)
                throw ValidationError(std::string("tm: input symbol '") + a + "' not in tape alphabet");
        }
        for (const auto& [key, act] : delta) {
            if (!has_state(key.first) || !has_state(act.state))
                throw ValidationError("tm: transition references undeclared state");
            if (is_halting(key.first))
                throw ValidationError("tm: transition out of halting state '" + key.first + "'");
            if (tape_alphabet.find(key.second) == std::string::npos ||
                tape_alphabet.find(act.symbol) == std::string::npos)
                throw ValidationError("tm: transition references undeclared symbol");
            if (act.move != 'L' && act.move != 'R')
                throw ValidationError("tm: move must be L or R");
        }
        for (const std::string& q : states) {
            if (is_halting(q)) continue;
            for (char a : tape_alphabet)
                if (!delta.count({q, a}))
                    throw ValidationError(std::string("tm: transition missing for (") + q + "," + a +
                                          ")");
        }
    }
};

// .tm reader:
//   tm { states: q0 qa qr; input: 0 1; tape: 0 1 _; start: q0;
//        accept: qa; reject: qr; delta: (q0,0)->(qa,_,R) ...; }
inline TMSpec parse_tm(std::string_view text) {
    detail::SpecScanner sc(text);
    sc.expect_keyword("tm");
    sc.expect_punct('{');
    TMSpec tm;
    auto expect_symbol = [&](const std::string& word) -> char {
        if (word.size() != 1)
            throw ValidationError("tm: tape symbols are single characters, got '" + word + "'");
        return word[0];
    };
    while (!sc.accept_punct('}')) {
        std::string field = sc.expect_word("field name");
        sc.expect_punct(':');
        if (field == "states") {
            while (sc.peek_word()) tm.states.push_back(sc.expect_word("state"));
        } else if (field == "input") {
            while (sc.peek_word()) tm.input_alphabet += expect_symbol(sc.expect_word("symbol"));
        } else if (field == "tape") {
            while (sc.peek_word()) tm.tape_alphabet += expect_symbol(sc.expect_word("symbol"));
        } else if (field == "start") {
            tm.start = sc.expect_word("state");
        } else if (field == "accept") {
            tm.accept = sc.expect_word("state");
        } else if (field == "reject") {
            tm.reject = sc.expect_word("state");
        } else if (field == "delta") {
            while (sc.accept_punct('(')) {
                std::string q = sc.expect_word("state");
                sc.expect_punct(',');
                char a = expect_symbol(sc.expect_word("symbol"));
                sc.expect_punct(')');
                sc.expect_arrow();
                sc.expect_punct('(');
                TMSpec::Action act;
                act.state = sc.expect_word("state");
                sc.expect_punct(',');
                act.symbol = expect_symbol(sc.expect_word("symbol"));
                sc.expect_punct(',');
                std::string mv = sc.expect_word("move");
                if (mv.size() != 1) throw ValidationError("tm: move must be L or R");
                act.move = mv[0];
                sc.expect_punct(')');
                if (!tm.delta.emplace(std::make_pair(q, a), act).second)
                    throw ValidationError(std::string("tm: duplicate transition for (") + q + "," + a +
                                          ")");
            }
        } else {
            throw ValidationError("tm: unknown field '" + field + "'");
        }
        sc.expect_punct(';');
    }
    if (!sc.eof()) throw ValidationError("tm: trailing input after '}'");
    tm.validate();
    return tm;
}

// One cell of the execution history: which symbol the cell holds and, when
// the head sits on it, the machine state ("*" otherwise).
struct TraceCell {
    std::string state = "*";
    char symbol = kBlank;

    bool operator==(const TraceCell&) const = default;
};

// The t x width matrix of the run: rows[0] is the initial configuration,
// rows[t-1] the halting one.
struct ExecutionTrace {
    std::size_t t = 0;  // exact running time: number of configurations
    bool accepted = false;
    std::vector<std::vector<TraceCell>> rows;
};

namespace detail {

struct TmRun {
    ExecutionTrace trace;
    std::optional<std::string> violation;
};

inline TmRun run_tm(const TMSpec& tm, const std::string& input, std::size_t max_steps) {
    for (char a : input)
        if (tm.input_alphabet.find(a) == std::string::npos)
            throw ValidationError(std::string("input symbol '") + a + "' not in input alphabet");

    TmRun run;
    std::string tape = input.empty() ? std::string(1, kBlank) : input;
    std::size_t head = 0;
    std::string state = tm.start;

    auto snapshot = [&] {
        std::vector<TraceCell> row(tape.size());
        for (std::size_t i = 0; i < tape.size(); ++i) row[i].symbol = tape[i];
        row[head].state = state;
        run.trace.rows.push_back(std::move(row));
    };
    snapshot();

    while (!tm.is_halting(state)) {
        if (run.trace.rows.size() > max_steps)
            throw CapExceeded("tm step budget exceeded (" + std::to_string(max_steps) + ")");
        const TMSpec::Action& act = tm.delta.at({state, tape[head]});
        tape[head] = act.symbol;
        state = act.state;
        if (act.move == 'R') {
            ++head;
            if (head == tape.size()) tape += kBlank;
        } else {
            if (head == 0) {
                run.violation = "head moved off the left end of the tape";
                snapshot();
                break;
            }
            --head;
        }
        snapshot();
    }

    run.trace.t = run.trace.rows.size();
    run.trace.accepted = (state == tm.accept);
    if (!run.violation) {
        if (head != 0)
            run.violation = "head not at the leftmost cell when halting";
        else if (tape[0] != kBlank)
            run.violation = "leftmost cell not blank when halting";
    }
    // Pad all rows to a common width covering the input and every touched cell.
    std::size_t width = std::max(run.trace.t, input.size());
    for (auto& row : run.trace.rows) {
        width = std::max(width, row.size());
    }
    for (auto& row : run.trace.rows) row.resize(width);
    return run;
}

}  // namespace detail

// Runs the machine and returns the exact trace; rejects runs that break the
// halting convention (halt at the leftmost cell with a blank under the head)
// since the downstream compiler depends on it.
inline ExecutionTrace simulate_tm(const TMSpec& tm, const std::string& input,
                                  std::size_t max_steps = 100000) {
    detail::TmRun run = detail::run_tm(tm, input, max_steps);
    if (run.violation) throw ValidationError("tm convention violation: " + *run.violation);
    return run.trace;
}

// Same run, but reports the first violated assumption instead of throwing.
inline std::optional<std::string> validate_tm_convention(const TMSpec& tm, const std::string& input,
                                                         std::size_t max_steps = 100000) {
    return detail::run_tm(tm, input, max_steps).violation;
}

}  // namespace fg
