#include <optional>

#include "lexer.hpp"
#include "relqm/opexpr/parse.hpp"

namespace relqm::opexpr {

using opalg::GaussianRational;
using opalg::OperatorSeries;
using opalg::Rational;
using opalg::ScalarPoly;
using opalg::SymbolTable;

namespace {

class Parser {
  public:
    Parser(std::vector<Token> toks, std::shared_ptr<const SymbolTable> table,
           const Definitions* defs)
        : toks_(std::move(toks)), table_(std::move(table)), defs_(defs) {}

    OperatorSeries run() {
        OperatorSeries v = expr();
        expect(TokKind::end, "trailing input after expression");
        return v;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(at.line, at.col, msg);
    }

    void expect(TokKind k, const std::string& msg) {
        if (peek().kind != k) fail(peek(), msg);
        ++pos_;
    }

    // Evaluation helpers rethrow algebra failures as positioned errors so the
    // parser interface stays total.
    template <typename F>
    auto guarded(const Token& at, F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const relqm::Error& e) {
            fail(at, e.what());
        }
    }

    OperatorSeries expr() {
        OperatorSeries acc = term();
        while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
            Token op = take();
            OperatorSeries rhs = term();
            guarded(op, [&] {
                if (op.kind == TokKind::plus) {
                    acc += rhs;
                } else {
                    acc -= rhs;
                }
                return 0;
            });
        }
        return acc;
    }

    OperatorSeries term() {
        OperatorSeries acc = unary();
        while (peek().kind == TokKind::star || peek().kind == TokKind::slash) {
            Token op = take();
            OperatorSeries rhs = unary();
            if (op.kind == TokKind::star) {
                acc = guarded(op, [&] { return acc * rhs; });
            } else {
                acc = guarded(op, [&] {
                    if (rhs.is_zero()) throw relqm::AlgebraError("division by zero");
                    return acc * rhs.pow(-1);
                });
            }
        }
        return acc;
    }

    OperatorSeries unary() {
        if (peek().kind == TokKind::minus) {
            Token op = take();
            OperatorSeries v = unary();
            return guarded(op, [&] { return -v; });
        }
        if (peek().kind == TokKind::plus) {
            take();
            return unary();
        }
        return power();
    }

    OperatorSeries power() {
        OperatorSeries base = atom();
        if (peek().kind != TokKind::caret) return base;
        Token caret = take();
        int sign = 1;
        if (peek().kind == TokKind::minus) {
            take();
            sign = -1;
        }
        if (peek().kind != TokKind::number || peek().imaginary)
            fail(peek(), "exponent must be an integer literal");
        Token e = take();
        if (e.text.size() > 9) fail(e, "exponent out of range");
        int exp = sign * std::stoi(e.text);
        return guarded(caret, [&] { return base.pow(exp); });
    }

    OperatorSeries atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::number: {
                Token n = take();
                Rational r(n.text);
                GaussianRational c = n.imaginary ? GaussianRational(Rational(0), r)
                                                 : GaussianRational(r);
                return OperatorSeries::scalar(table_, ScalarPoly(c));
            }
            case TokKind::ident:
                return ident_atom();
            case TokKind::lparen: {
                take();
                OperatorSeries v = expr();
                expect(TokKind::rparen, "expected ')'");
                return v;
            }
            case TokKind::lbracket: {
                Token open = take();
                OperatorSeries a = expr();
                expect(TokKind::comma, "expected ',' in commutator");
                OperatorSeries b = expr();
                expect(TokKind::rbracket, "expected ']'");
                return guarded(open, [&] { return commutator(a, b); });
            }
            case TokKind::lbrace: {
                Token open = take();
                OperatorSeries a = expr();
                expect(TokKind::comma, "expected ',' in anticommutator");
                OperatorSeries b = expr();
                expect(TokKind::rbrace, "expected '}'");
                return guarded(open, [&] { return anticommutator(a, b); });
            }
            default:
                fail(t, "expected a value");
        }
    }

    OperatorSeries ident_atom() {
        Token id = take();
        if (id.text == "eps") return OperatorSeries::scalar(table_, ScalarPoly::one(), 1);
        if (id.text == "i") return OperatorSeries::scalar(table_, ScalarPoly::imaginary_unit());
        if (id.text == "sqrt_series") {
            expect(TokKind::lparen, "expected '(' after sqrt_series");
            OperatorSeries a = expr();
            expect(TokKind::comma, "expected ',' before truncation order");
            int sign = 1;
            if (peek().kind == TokKind::minus) {
                take();
                sign = -1;
            }
            if (peek().kind != TokKind::number || peek().imaginary)
                fail(peek(), "truncation order must be an integer literal");
            Token k = take();
            if (k.text.size() > 9) fail(k, "truncation order out of range");
            expect(TokKind::rparen, "expected ')'");
            return guarded(id, [&] { return series_sqrt(a, sign * std::stoi(k.text)); });
        }
        if (auto op = table_->find_operator(id.text)) {
            return OperatorSeries::op(table_, *op);
        }
        if (auto sc = table_->find_scalar(id.text)) {
            return OperatorSeries::scalar(table_, ScalarPoly::symbol(*sc));
        }
        if (defs_) {
            auto it = defs_->find(id.text);
            if (it != defs_->end()) return it->second;
        }
        fail(id, "unknown symbol '" + id.text + "'");
    }

    std::vector<Token> toks_;
    std::shared_ptr<const SymbolTable> table_;
    const Definitions* defs_;
    std::size_t pos_ = 0;
};

}  // namespace

OperatorSeries parse_expr(const std::string& text, std::shared_ptr<const SymbolTable> table,
                          const Definitions* defs) {
    if (!table) throw relqm::AlgebraError("parse_expr: null symbol table");
    Parser p(lex(text), std::move(table), defs);
    return p.run();
}

std::string format_canonical(const OperatorSeries& s) {
    return to_canonical_string(s);
}

}  // namespace relqm::opexpr
