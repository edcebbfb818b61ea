#pragma once

#include <string>
#include <vector>

#include "relqm/opalg/rational.hpp"
#include "relqm/opexpr/parse.hpp"

namespace relqm::opexpr {

enum class TokKind {
    number,      // integer literal, optionally imaginary ("12", "3i")
    ident,       // symbol or keyword name
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    comma,
    end,
};

struct Token {
    TokKind kind;
    std::string text;     // identifier name or digit string
    bool imaginary = false;
    int line = 1;
    int col = 1;
};

// Tokenize the whole input; throws ParseError on any unexpected byte.
std::vector<Token> lex(const std::string& text);

}  // namespace relqm::opexpr
