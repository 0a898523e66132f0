#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "factgraph/errors.hpp"

namespace fg {

// Blank tape symbol in the .tm/.ntm formats.
inline constexpr char kBlank = '_';

}  // namespace fg

namespace fg::detail {

// Tokenizer shared by the .tm/.ntm/.kov readers. Words are runs of
// characters outside whitespace and the punctuation set; "//" comments run to
// end of line.
class SpecScanner {
public:
    explicit SpecScanner(std::string_view text) : text_(text) {}

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool accept_punct(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_arrow() {
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
            advance();
            advance();
            return true;
        }
        return false;
    }

    void expect_arrow() {
        if (!accept_arrow()) fail("expected '->'");
    }

    bool peek_word() {
        skip_ws();
        return pos_ < text_.size() && !is_punct(text_[pos_]);
    }

    std::string expect_word(const std::string& what) {
        skip_ws();
        if (eof() || is_punct(text_[pos_])) fail("expected " + what);
        std::string word;
        while (pos_ < text_.size() && !is_punct(text_[pos_]) &&
               !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            word += text_[pos_];
            advance();
        }
        return word;
    }

    void expect_keyword(const std::string& kw) {
        std::string got = expect_word("'" + kw + "'");
        if (got != kw) fail("expected '" + kw + "', got '" + got + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

private:
    static bool is_punct(char c) {
        return c == '{' || c == '}' || c == '(' || c == ')' || c == ',' || c == ';' || c == ':' ||
               c == '-';
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
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

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace fg::detail
