#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"

namespace fg {

// Recursive-descent parser for the .fg DSL:
//
//   doc        := item*
//   item       := graphdecl | formuladecl
//   graphdecl  := "graph" NAME "{" "vertices:" INT+ ";" "edges:" pair* ";" "}"
//   pair       := "(" INT "," INT ")"
//   formuladecl:= "formula" NAME "=" expr ";"
//   expr       := term ("+" term)*        union
//   term       := factor ("#" factor)*    Cartesian product
//   factor     := atom ("*" atom)*        tensor product
//   atom       := NAME | "(" expr ")"
//
// "//" starts a line comment. Whitespace is insignificant.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    FormulaDoc parse() {
        FormulaDoc doc;
        skip_ws();
        while (!eof()) {
            std::string kw = expect_name("'graph' or 'formula'");
            if (kw == "graph") {
                parse_graph(doc);
            } else if (kw == "formula") {
                parse_formula(doc);
            } else {
                fail("expected 'graph' or 'formula', got '" + kw + "'");
            }
            skip_ws();
        }
        return doc;
    }

private:
    void parse_graph(FormulaDoc& doc) {
        std::string name = expect_name("graph name");
        expect('{');
        expect_keyword("vertices");
        expect(':');
        std::vector<VertexLabel> vertices;
        while (peek_digit()) vertices.push_back(expect_int());
        if (vertices.empty()) fail("graph '" + name + "' declares no vertices");
        expect(';');
        expect_keyword("edges");
        expect(':');
        std::vector<BaseGraph::Edge> edges;
        skip_ws();
        while (!eof() && text_[pos_] == '(') {
            expect('(');
            VertexLabel u = expect_int();
            expect(',');
            VertexLabel v = expect_int();
            expect(')');
            edges.emplace_back(u, v);
            skip_ws();
        }
        expect(';');
        expect('}');
        doc.add_graph(BaseGraph(name, std::move(vertices), std::move(edges)));
    }

    void parse_formula(FormulaDoc& doc) {
        std::string name = expect_name("formula name");
        expect('=');
        Formula f = parse_expr();
        expect(';');
        doc.add_formula(std::move(name), std::move(f));
    }

    Formula parse_expr() {
        std::vector<Formula> terms;
        terms.push_back(parse_term());
        while (accept('+')) terms.push_back(parse_term());
        return Formula::node(Op::Union, std::move(terms));
    }

    Formula parse_term() {
        std::vector<Formula> factors;
        factors.push_back(parse_factor());
        while (accept('#')) factors.push_back(parse_factor());
        return Formula::node(Op::Cart, std::move(factors));
    }

    Formula parse_factor() {
        std::vector<Formula> atoms;
        atoms.push_back(parse_atom());
        while (accept('*')) atoms.push_back(parse_atom());
        return Formula::node(Op::Tensor, std::move(atoms));
    }

    Formula parse_atom() {
        skip_ws();
        if (!eof() && text_[pos_] == '(') {
            expect('(');
            Formula f = parse_expr();
            expect(')');
            return f;
        }
        return Formula::leaf(expect_name("graph name or '('"));
    }

    // --- lexing helpers ---

    bool eof() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        ++pos_;
        ++col_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

    bool accept(char c) {
        skip_ws();
        if (!eof() && text_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool peek_digit() {
        skip_ws();
        return !eof() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    VertexLabel expect_int() {
        skip_ws();
        if (!peek_digit()) fail("expected integer");
        std::uint64_t val = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            val = val * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (val > 0xffffffffULL) fail("integer out of range");
            advance();
        }
        return static_cast<VertexLabel>(val);
    }

    std::string expect_name(const std::string& what) {
        skip_ws();
        if (eof()) fail("expected " + what + ", got end of input");
        char c = text_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
            fail("expected " + what);
        std::string name;
        while (!eof()) {
            c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                name += c;
                advance();
            } else {
                break;
            }
        }
        return name;
    }

    void expect_keyword(const std::string& kw) {
        std::string got = expect_name("'" + kw + "'");
        if (got != kw) fail("expected '" + kw + "', got '" + got + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline FormulaDoc parse_document(std::string_view text) { return Parser(text).parse(); }

}  // namespace fg
