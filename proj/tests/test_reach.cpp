#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "factgraph/parser.hpp"
#include "factgraph/reach.hpp"
#include "support/formula_gen.hpp"

using namespace fg;

TEST_CASE("grid corner to corner") {
    FormulaDoc doc = parse_document("graph P { vertices: 0 1; edges: (0,1); } formula G = P # P;");
    FormulaView view(doc, "G");
    CHECK(reach(view, {0, 0}, {1, 1}, ReachMethod::Implicit));
    CHECK(reach(view, {0, 0}, {1, 1}, ReachMethod::Explicit));
    CHECK(reach(view, {0, 0}, {1, 1}, ReachMethod::Auto));
    CHECK_FALSE(reach(view, {1, 1}, {0, 0}, ReachMethod::Implicit));  // directed
    CHECK(reach(view, {0, 1}, {0, 1}, ReachMethod::Implicit));        // trivial path
}

TEST_CASE("endpoints must be vertices; dimension mismatch is a clean no") {
    FormulaDoc doc = parse_document(
        "graph P { vertices: 0 1; edges: (0,1); } formula G = P # P + P;");
    FormulaView view(doc, "G");
    CHECK_THROWS_AS(reach(view, {7, 7}, {0, 0}), ValidationError);
    CHECK_THROWS_AS(reach(view, {0, 0}, {7, 7}), ValidationError);
    CHECK_FALSE(reach(view, {0}, {0, 1}));
}

TEST_CASE("all-cartesian fast path agrees with implicit BFS") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        FormulaDoc doc = fgtest::random_doc(rng, 3, 4, /*symmetric=*/false);
        std::vector<std::string> names = fgtest::pool_names(doc);
        std::uniform_int_distribution<std::size_t> arity_pick(2, 3);
        std::vector<Formula> leaves;
        for (std::size_t i = 0, m = arity_pick(rng); i < m; ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
            leaves.push_back(Formula::leaf(names[pick(rng)]));
        }
        Formula f = Formula::node(Op::Cart, std::move(leaves));
        FormulaView view(doc, f);
        ExplicitGraph g = materialize(view);
        std::uniform_int_distribution<std::size_t> vpick(0, g.size() - 1);
        for (int q = 0; q < 10; ++q) {
            const FactoredVertex& src = g.vertices()[vpick(rng)];
            const FactoredVertex& dst = g.vertices()[vpick(rng)];
            bool fast = reach(view, src, dst, ReachMethod::Auto);
            bool slow = reach(view, src, dst, ReachMethod::Implicit);
            bool expl = reach(view, src, dst, ReachMethod::Explicit);
            REQUIRE(fast == slow);
            REQUIRE(fast == expl);
        }
    }
}

TEST_CASE("union-of-leaves fast path agrees with implicit BFS") {
    FormulaDoc doc = parse_document(
        "graph A { vertices: 0 1 2; edges: (0,1); }"
        "graph B { vertices: 1 2 3; edges: (1,2) (2,3); }"
        "formula U = A + B;");
    FormulaView view(doc, "U");
    CHECK(reach(view, {0}, {3}, ReachMethod::Auto));
    CHECK(reach(view, {0}, {3}, ReachMethod::Implicit));
    CHECK_FALSE(reach(view, {3}, {0}, ReachMethod::Auto));
}

TEST_CASE("methods agree on random mixed formulas") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        FormulaDoc doc = fgtest::random_doc(rng, 3, 4, /*symmetric=*/false);
        std::uniform_int_distribution<std::size_t> ops_pick(0, 3);
        Formula f = fgtest::random_formula(rng, fgtest::pool_names(doc), ops_pick(rng));
        FormulaView view(doc, f);
        ExplicitGraph g = materialize(view);
        if (g.size() == 0) continue;
        std::uniform_int_distribution<std::size_t> vpick(0, g.size() - 1);
        for (int q = 0; q < 8; ++q) {
            const FactoredVertex& src = g.vertices()[vpick(rng)];
            const FactoredVertex& dst = g.vertices()[vpick(rng)];
            if (src.size() != dst.size()) continue;
            bool a = reach(view, src, dst, ReachMethod::Auto);
            bool b = reach(view, src, dst, ReachMethod::Implicit);
            bool c = reach(view, src, dst, ReachMethod::Explicit);
            REQUIRE(a == b);
            REQUIRE(b == c);
        }
    }
}

TEST_CASE("state cap guards the implicit search") {
    FormulaDoc doc = parse_document(
        "graph C { vertices: 0 1 2 3; edges: (0,1) (1,2) (2,3) (3,0); }"
        "formula F = C # C # C * C;");
    FormulaView view(doc, "F");
    CHECK_THROWS_AS(reach(view, {0, 0, 0, 0}, {3, 3, 3, 3}, ReachMethod::Implicit, /*state_cap=*/5),
                    CapExceeded);
}
