#include <catch2/catch_amalgamated.hpp>

#include "factgraph/parser.hpp"
#include "factgraph/writer.hpp"

using namespace fg;

TEST_CASE("minimal document") {
    FormulaDoc doc = parse_document("graph A { vertices: 0 1; edges: (0,1); } formula F = A;");
    REQUIRE(doc.graphs().size() == 1);
    REQUIRE(doc.formulas().size() == 1);
    CHECK(doc.formula("F").is_leaf());
    CHECK(doc.formula("F").leaf_name() == "A");
    CHECK(doc.graph("A").has_edge(0, 1));
    CHECK_FALSE(doc.graph("A").has_edge(1, 0));
}

TEST_CASE("same-op chains flatten to one m-ary node") {
    std::string text =
        "graph A { vertices: 0; edges: ; }"
        "graph B { vertices: 1; edges: ; }"
        "graph C { vertices: 2; edges: ; }"
        "graph D { vertices: 3; edges: ; }"
        "formula F = A # (B + C) # D;";
    FormulaDoc doc = parse_document(text);
    const Formula& f = doc.formula("F");
    REQUIRE_FALSE(f.is_leaf());
    CHECK(f.op() == Op::Cart);
    CHECK(f.arity() == 3);
    CHECK(f.children()[1].op() == Op::Union);
}

TEST_CASE("running example shape") {
    std::string text =
        "graph A { vertices: 0 1 2; edges: ; } graph B { vertices: 0 1 2; edges: ; }"
        "graph C { vertices: 0 1 2; edges: ; } graph D { vertices: 0 1 2; edges: ; }"
        "graph E { vertices: 0 1 2; edges: ; } graph F { vertices: 0 1 2; edges: ; }"
        "formula G = ((A*B)+C) # (D*(E+F));";
    FormulaDoc doc = parse_document(text);
    const Formula& g = doc.formula("G");
    REQUIRE(g.op() == Op::Cart);
    REQUIRE(g.arity() == 2);
    const Formula& left = g.children()[0];
    REQUIRE(left.op() == Op::Union);
    REQUIRE(left.arity() == 2);
    CHECK(left.children()[0].op() == Op::Tensor);
    CHECK(left.children()[1].is_leaf());
    const Formula& right = g.children()[1];
    REQUIRE(right.op() == Op::Tensor);
    REQUIRE(right.arity() == 2);
    CHECK(right.children()[0].is_leaf());
    CHECK(right.children()[1].op() == Op::Union);
    CHECK(g.operation_count() == 5);
}

TEST_CASE("precedence: tensor binds tighter than cart binds tighter than union") {
    std::string text =
        "graph A { vertices: 0; edges: ; } graph B { vertices: 1; edges: ; }"
        "graph C { vertices: 2; edges: ; }"
        "formula F = A + B # C * A;";
    FormulaDoc doc = parse_document(text);
    const Formula& f = doc.formula("F");
    REQUIRE(f.op() == Op::Union);
    REQUIRE(f.arity() == 2);
    const Formula& rhs = f.children()[1];
    REQUIRE(rhs.op() == Op::Cart);
    CHECK(rhs.children()[1].op() == Op::Tensor);
}

TEST_CASE("parse errors carry position and reason") {
    CHECK_THROWS_AS(parse_document("graph A { vertices: 0; edges: (0,1); }"), ValidationError);
    CHECK_THROWS_AS(parse_document("formula F = A;"), ValidationError);  // unknown graph
    CHECK_THROWS_AS(parse_document("graph A { vertices: 0; edges: ; } graph A { vertices: 1; edges: ; }"),
                    ValidationError);
    CHECK_THROWS_AS(parse_document("graph A { vertices 0; }"), ParseError);
    CHECK_THROWS_AS(parse_document("graph A { vertices: 0 0; edges: ; }"), ValidationError);
    try {
        parse_document("graph A {\n  vertices 0; }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("comments and whitespace are insignificant") {
    std::string text =
        "// a comment\n"
        "graph A { vertices: 0 1; // trailing\n edges: (0,1); }\n"
        "formula   F=A;";
    FormulaDoc doc = parse_document(text);
    CHECK(doc.formula("F").is_leaf());
}

TEST_CASE("writer output re-parses to an equal document") {
    std::string text =
        "graph A { vertices: 0 1 2; edges: (0,1) (1,2); } graph B { vertices: 0 1; edges: (1,1); }"
        "formula F = (A*B) + A # B;"
        "formula H = A + B;";
    FormulaDoc doc = parse_document(text);
    FormulaDoc again = parse_document(to_fg_text(doc));
    REQUIRE(again.formulas().size() == 2);
    CHECK(again.formula("F") == doc.formula("F"));
    CHECK(again.formula("H") == doc.formula("H"));
    CHECK(again.graph("A").edges() == doc.graph("A").edges());
}

TEST_CASE("vertex tuple literals") {
    CHECK(parse_vertex("[3,0,7]") == FactoredVertex{3, 0, 7});
    CHECK(format_vertex({3, 0, 7}) == "[3,0,7]");
    CHECK(parse_vertex("[5]") == FactoredVertex{5});
    CHECK_THROWS_AS(parse_vertex("[]"), ValidationError);
    CHECK_THROWS_AS(parse_vertex("3,0"), ValidationError);
    CHECK_THROWS_AS(parse_vertex("[3,]"), ValidationError);
}
