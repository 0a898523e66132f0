#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "factgraph/tm.hpp"

using namespace fg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

TMSpec fixture(const std::string& name) {
    return parse_tm(slurp(std::string(FG_FIXTURE_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("parse a tm fixture") {
    TMSpec tm = fixture("first_symbol.tm");
    CHECK(tm.states.size() == 5);
    CHECK(tm.input_alphabet == "01");
    CHECK(tm.tape_alphabet == "01_");
    CHECK(tm.start == "q0");
    CHECK(tm.delta.at({"q0", '1'}).state == "q1");
}

TEST_CASE("tm validation errors") {
    CHECK_THROWS_AS(parse_tm("tm { states: q0 qa; input: 0; tape: 0 _; start: q0; accept: qa;"
                             " reject: qa; delta: (q0,0)->(qa,0,R) (q0,_)->(qa,_,R); }"),
                    ValidationError);  // accept == reject
    CHECK_THROWS_AS(parse_tm("tm { states: q0 qa qr; input: 0; tape: 0 _; start: q0; accept: qa;"
                             " reject: qr; delta: (q0,0)->(qa,0,R); }"),
                    ValidationError);  // delta not total
    CHECK_THROWS_AS(parse_tm("tm { states: q0 qa qr; input: 0; tape: 0; start: q0; accept: qa;"
                             " reject: qr; delta: (q0,0)->(qa,0,R); }"),
                    ValidationError);  // no blank in tape alphabet
}

TEST_CASE("immediate-accept machine") {
    TMSpec tm = fixture("first_symbol.tm");
    ExecutionTrace trace = simulate_tm(tm, "10");
    CHECK(trace.t == 3);
    CHECK(trace.accepted);
    // halting row: head at cell 0 over blank
    CHECK(trace.rows.back()[0].state == "qa");
    CHECK(trace.rows.back()[0].symbol == '_');

    ExecutionTrace rej = simulate_tm(tm, "01");
    CHECK(rej.t == 3);
    CHECK_FALSE(rej.accepted);
}

TEST_CASE("ends-in-one fixture accepts and rejects as hand-simulated") {
    TMSpec tm = fixture("ends_in_one.tm");
    CHECK(simulate_tm(tm, "01").accepted);
    CHECK_FALSE(simulate_tm(tm, "10").accepted);
    CHECK(simulate_tm(tm, "01").t == 7);
    CHECK(simulate_tm(tm, "011").t == 9);
    CHECK(simulate_tm(tm, "011").accepted);
    CHECK_FALSE(simulate_tm(tm, "110").accepted);
}

TEST_CASE("parity fixture") {
    TMSpec tm = fixture("parity.tm");
    CHECK(simulate_tm(tm, "11").accepted);
    CHECK_FALSE(simulate_tm(tm, "10").accepted);
    CHECK(simulate_tm(tm, "00").accepted);
    CHECK_FALSE(simulate_tm(tm, "111").accepted);
    CHECK(simulate_tm(tm, "101").accepted);  // two 1s
    CHECK(simulate_tm(tm, "110").accepted);
    CHECK(simulate_tm(tm, "011").t <= 9);  // fits a 9x9 grid for 3-symbol inputs
}

TEST_CASE("every trace row has exactly one head cell") {
    TMSpec tm = fixture("ends_in_one.tm");
    ExecutionTrace trace = simulate_tm(tm, "0110");
    for (const auto& row : trace.rows) {
        int heads = 0;
        for (const TraceCell& c : row)
            if (c.state != "*") ++heads;
        REQUIRE(heads == 1);
    }
    CHECK(trace.rows[0][0].state == tm.start);
}

TEST_CASE("convention violations are reported") {
    TMSpec tm = fixture("first_symbol.tm");
    CHECK_FALSE(validate_tm_convention(tm, "10").has_value());

    // halts one cell to the right of where it started
    TMSpec mid = parse_tm(
        "tm { states: q0 qa qr; input: 0; tape: 0 _; start: q0; accept: qa; reject: qr;"
        " delta: (q0,0)->(qa,_,R) (q0,_)->(qa,_,R); }");
    auto violation = validate_tm_convention(mid, "00");
    REQUIRE(violation.has_value());
    CHECK(violation->find("leftmost") != std::string::npos);
    CHECK_THROWS_AS(simulate_tm(mid, "00"), ValidationError);

    // halts at the leftmost cell but leaves it non-blank
    TMSpec dirty = parse_tm(
        "tm { states: q0 q1 qa qr; input: 0; tape: 0 _; start: q0; accept: qa; reject: qr;"
        " delta: (q0,0)->(q1,0,R) (q0,_)->(q1,_,R) (q1,0)->(qa,0,L) (q1,_)->(qa,_,L); }");
    auto v2 = validate_tm_convention(dirty, "00");
    REQUIRE(v2.has_value());
    CHECK(v2->find("not blank") != std::string::npos);

    // walks off the left end
    TMSpec off = parse_tm(
        "tm { states: q0 qa qr; input: 0; tape: 0 _; start: q0; accept: qa; reject: qr;"
        " delta: (q0,0)->(q0,0,L) (q0,_)->(q0,_,L); }");
    auto v3 = validate_tm_convention(off, "00");
    REQUIRE(v3.has_value());
    CHECK(v3->find("left end") != std::string::npos);
}

TEST_CASE("step budget") {
    TMSpec loop = parse_tm(
        "tm { states: q0 qa qr; input: 0; tape: 0 _; start: q0; accept: qa; reject: qr;"
        " delta: (q0,0)->(q0,0,R) (q0,_)->(q0,_,R); }");
    CHECK_THROWS_AS(simulate_tm(loop, "00", 50), CapExceeded);
}
