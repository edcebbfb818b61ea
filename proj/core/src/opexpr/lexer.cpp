#include "lexer.hpp"

#include <cctype>

namespace relqm::opexpr {

namespace {
bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
}  // namespace

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.')
                throw ParseError(line, col,
                                 "decimal literals are not supported; use an integer ratio");
            t.kind = TokKind::number;
            t.text = text.substr(i, j - i);
            if (j < text.size() && text[j] == 'i' &&
                (j + 1 >= text.size() || !word_char(text[j + 1]))) {
                t.imaginary = true;
                ++j;
            } else if (j < text.size() && word_char(text[j])) {
                throw ParseError(line, col, "invalid suffix on numeric literal");
            }
            out.push_back(t);
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j])) ++j;
            t.kind = TokKind::ident;
            t.text = text.substr(i, j - i);
            out.push_back(t);
            advance(j - i);
            continue;
        }
        switch (c) {
            case '+': t.kind = TokKind::plus; break;
            case '-': t.kind = TokKind::minus; break;
            case '*': t.kind = TokKind::star; break;
            case '/': t.kind = TokKind::slash; break;
            case '^': t.kind = TokKind::caret; break;
            case '(': t.kind = TokKind::lparen; break;
            case ')': t.kind = TokKind::rparen; break;
            case '[': t.kind = TokKind::lbracket; break;
            case ']': t.kind = TokKind::rbracket; break;
            case '{': t.kind = TokKind::lbrace; break;
            case '}': t.kind = TokKind::rbrace; break;
            case ',': t.kind = TokKind::comma; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(t);
        advance(1);
    }
    Token end;
    end.kind = TokKind::end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

}  // namespace relqm::opexpr
