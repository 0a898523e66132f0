#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "factgraph/adjacency.hpp"
#include "factgraph/materialize.hpp"
#include "factgraph/parser.hpp"
#include "support/formula_gen.hpp"

using namespace fg;

namespace {

FormulaDoc running_example() {
    return parse_document(
        "graph A { vertices: 0 1 2; edges: (0,1); } graph B { vertices: 0 1 2; edges: (1,2); }"
        "graph C { vertices: 0 1 2; edges: (0,2); } graph D { vertices: 0 1 2; edges: (2,1); }"
        "graph E { vertices: 0 1 2; edges: (0,1); } graph F { vertices: 2 3 4; edges: (2,3); }"
        "formula G = ((A*B)+C) # (D*(E+F));");
}

}  // namespace

TEST_CASE("complexity") {
    FormulaDoc doc = running_example();
    Complexity c = doc.complexity(doc.formula("G"));
    CHECK(c.n == 3);
    CHECK(c.k == 6);

    FormulaDoc leaf_doc = parse_document(
        "graph A { vertices: 0 1 2 3 4; edges: ; } formula F = A;");
    Complexity lc = leaf_doc.complexity(leaf_doc.formula("F"));
    CHECK(lc.n == 5);
    CHECK(lc.k == 1);
}

TEST_CASE("empty-graph cartesian power has complexity (n, k)") {
    FormulaDoc doc = parse_document(
        "graph N { vertices: 0 1 2; edges: ; } formula F = N # N # N # N;");
    Complexity c = doc.complexity(doc.formula("F"));
    CHECK(c.n == 3);
    CHECK(c.k == 4);
    ExplicitGraph g = materialize(doc, doc.formula("F"));
    CHECK(g.size() == 81);
    CHECK(g.edges().empty());
}

TEST_CASE("components of the running example") {
    FormulaDoc doc = running_example();
    std::vector<ComponentTree> comps = components(doc.formula("G"));
    REQUIRE(comps.size() == 4);
    std::multiset<std::size_t> dims;
    for (const ComponentTree& c : comps) dims.insert(c.dim());
    CHECK(dims == std::multiset<std::size_t>{3, 3, 4, 4});
}

TEST_CASE("components of union-free and m-ary union formulas") {
    FormulaDoc doc = fgtest::small_pool();
    doc.add_formula("UF", parse_document(
        "graph P { vertices: 0 1; edges: (0,1); }"
        "graph Q { vertices: 0 1 2; edges: (0,1) (1,2) (2,0); }"
        "formula X = P # Q * P;").formula("X"));
    std::vector<ComponentTree> comps = components(doc.formula("UF"));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].tree == doc.formula("UF"));

    doc.add_formula("U3", Formula::node(Op::Union, {Formula::leaf("P"), Formula::leaf("Q"),
                                                    Formula::leaf("R")}));
    CHECK(components(doc.formula("U3")).size() == 3);
}

TEST_CASE("component count guard") {
    FormulaDoc doc = fgtest::small_pool();
    Formula u = Formula::node(Op::Union, {Formula::leaf("P"), Formula::leaf("Q")});
    Formula f = Formula::node(Op::Cart, {u, u, u});
    CHECK(components(f).size() == 8);
    CHECK_THROWS_AS(components(f, 7), CapExceeded);
}

TEST_CASE("contains and dimension_of") {
    FormulaDoc doc = running_example();
    std::vector<ComponentTree> comps = components(doc.formula("G"));
    // Shared label 2 lives in both E and F, so (c, d, 2) sits in two
    // components of equal dimension.
    FactoredVertex v{0, 2, 2};
    int containing = 0;
    for (const ComponentTree& c : comps)
        if (contains(doc, c, v)) ++containing;
    CHECK(containing == 2);
    CHECK(dimension_of(doc, doc.formula("G"), v) == 3);
    CHECK(dimension_of(doc, doc.formula("G"), {0, 1, 2, 0}) == 4);
    CHECK_THROWS_AS(dimension_of(doc, doc.formula("G"), {9, 9, 9}), ValidationError);

    FormulaDoc leaf_doc = parse_document("graph A { vertices: 0; edges: ; } formula F = A;");
    CHECK(dimension_of(leaf_doc, leaf_doc.formula("F"), {0}) == 1);
}

TEST_CASE("vertex order is dimension-major then lexicographic") {
    CHECK(vertex_order({0, 1}, {0, 2}) == Ordering::LT);
    CHECK(vertex_order({5}, {0, 0}) == Ordering::LT);
    CHECK(vertex_order({2, 3}, {2, 3}) == Ordering::EQ);
    CHECK(vertex_order({1, 0}, {0, 1}) == Ordering::GT);
}

TEST_CASE("grid adjacency") {
    FormulaDoc doc = parse_document(
        "graph P2 { vertices: 0 1; edges: (0,1); } formula G = P2 # P2; formula T = P2 * P2;");
    FormulaView grid(doc, "G");
    CHECK(grid.adjacent({0, 0}, {0, 1}));
    CHECK(grid.adjacent({0, 0}, {1, 0}));
    CHECK_FALSE(grid.adjacent({0, 0}, {1, 1}));
    CHECK_FALSE(grid.adjacent({0, 1}, {0, 0}));  // directed
    CHECK_FALSE(grid.adjacent({0, 0}, {0, 0}));
    CHECK_FALSE(grid.adjacent({0, 0}, {0, 0, 0}));
    CHECK_FALSE(grid.adjacent({7, 7}, {7, 8}));  // not vertices: false, not an error
    CHECK(grid.out_neighbors({0, 0}) == std::vector<FactoredVertex>{{0, 1}, {1, 0}});

    FormulaView tensor(doc, "T");
    CHECK(tensor.out_neighbors({0, 0}) == std::vector<FactoredVertex>{{1, 1}});
    CHECK(tensor.adjacent({0, 0}, {1, 1}));
    CHECK_FALSE(tensor.adjacent({0, 0}, {0, 1}));
}

TEST_CASE("self-loop in one factor makes cartesian pairs adjacent") {
    FormulaDoc doc = parse_document(
        "graph L { vertices: 0; edges: (0,0); } graph P { vertices: 0 1; edges: (0,1); }"
        "formula G = L # P; formula T = L * P;");
    FormulaView g(doc, "G");
    CHECK(g.adjacent({0, 0}, {0, 0}));  // the L self-loop lifts to a product self-loop
    CHECK(g.adjacent({0, 0}, {0, 1}));
    FormulaView t(doc, "T");
    CHECK(t.adjacent({0, 0}, {0, 1}));
    CHECK_FALSE(t.adjacent({0, 0}, {0, 0}));
}

TEST_CASE("enumerate_vertices is sorted, duplicate-free, and complete") {
    FormulaDoc doc = running_example();
    FormulaView view(doc, "G");
    std::vector<FactoredVertex> verts = enumerate_vertices(view);
    for (std::size_t i = 1; i < verts.size(); ++i)
        REQUIRE(vertex_less(verts[i - 1], verts[i]));
    // dim-3 components: C#(D*E) and C#(D*F) share tuples where the third
    // coordinate is the shared label 2.
    std::size_t dim3 = 0;
    for (const auto& v : verts)
        if (v.size() == 3) ++dim3;
    CHECK(dim3 == 3 * 3 * 5);  // labels {0,1,2} x {0,1,2} x {0,1,2,3,4}
    // dim-4: two 3^4 blocks overlapping where the fourth coordinate is the
    // shared label 2
    CHECK(verts.size() == dim3 + 81 + 81 - 27);
}

TEST_CASE("enumerate cap") {
    FormulaDoc doc = parse_document(
        "graph N { vertices: 0 1 2 3; edges: ; } formula F = N # N # N;");
    CHECK_THROWS_AS(enumerate_vertices(FormulaView(doc, "F"), 63), CapExceeded);
}

TEST_CASE("materialize empty product identity") {
    for (std::size_t n : {2, 5}) {
        for (std::size_t m : {3, 4}) {
            FormulaDoc doc;
            std::vector<VertexLabel> vn(n), vm(m);
            for (std::size_t i = 0; i < n; ++i) vn[i] = static_cast<VertexLabel>(i);
            for (std::size_t i = 0; i < m; ++i) vm[i] = static_cast<VertexLabel>(i);
            doc.add_graph(BaseGraph("Kn", vn, {}));
            doc.add_graph(BaseGraph("Km", vm, {}));
            doc.add_formula("F", Formula::node(Op::Cart, {Formula::leaf("Kn"), Formula::leaf("Km")}));
            ExplicitGraph g = materialize(doc, doc.formula("F"));
            CHECK(g.size() == n * m);
            CHECK(g.edges().empty());
        }
    }
}

TEST_CASE("mixed-operation association changes edges but not vertices") {
    FormulaDoc doc = parse_document(
        "graph P { vertices: 0 1; edges: (0,1); }"
        "formula L = (P*P) # P;"
        "formula R = P * (P#P);");
    ExplicitGraph l = materialize(doc, doc.formula("L"));
    ExplicitGraph r = materialize(doc, doc.formula("R"));
    CHECK(l.vertices() == r.vertices());
    CHECK(l.edges() != r.edges());
    CHECK(l.edges().size() == 6);
    CHECK(r.edges().size() == 4);
}

TEST_CASE("materialize cap") {
    FormulaDoc doc = parse_document("graph N { vertices: 0 1 2 3; edges: ; } formula F = N # N;");
    CHECK_THROWS_AS(materialize(doc, doc.formula("F"), 15), CapExceeded);
}

// The central implicit/explicit cross-check: on random small formulas,
// adjacent() and out_neighbors() must agree exactly with the materialized
// graph, and enumerate_vertices with its vertex list.
TEST_CASE("implicit queries match materialization on random formulas") {
    std::mt19937 rng(20240811);
    std::vector<std::string> names;
    FormulaDoc doc = fgtest::small_pool();
    names = fgtest::pool_names(doc);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> ops_pick(0, 4);
        Formula f = fgtest::random_formula(rng, names, ops_pick(rng));
        FormulaView view(doc, f);
        ExplicitGraph g = materialize(view);
        std::vector<FactoredVertex> verts = enumerate_vertices(view);
        REQUIRE(verts == g.vertices());
        for (std::size_t i = 0; i < verts.size(); ++i) {
            std::vector<FactoredVertex> nbrs = view.out_neighbors(verts[i]);
            std::vector<FactoredVertex> expected;
            for (std::size_t j = 0; j < verts.size(); ++j)
                if (g.has_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)))
                    expected.push_back(verts[j]);
            REQUIRE(nbrs == expected);
            for (std::size_t j = 0; j < verts.size(); ++j) {
                bool expect_edge = g.has_edge(static_cast<std::uint32_t>(i),
                                              static_cast<std::uint32_t>(j));
                if (view.adjacent(verts[i], verts[j]) != expect_edge) {
                    INFO(f.to_string() << " : " << format_vertex(verts[i]) << " -> "
                                       << format_vertex(verts[j]));
                    REQUIRE(view.adjacent(verts[i], verts[j]) == expect_edge);
                }
            }
        }
    }
}

TEST_CASE("component count bound") {
    std::mt19937 rng(7);
    FormulaDoc doc = fgtest::small_pool();
    std::vector<std::string> names = fgtest::pool_names(doc);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> ops_pick(0, 5);
        Formula f = fgtest::random_formula(rng, names, ops_pick(rng));
        Complexity c = doc.complexity(f);
        CHECK(components(f).size() <= (std::size_t{1} << c.k));
    }
}
