#pragma once

#include <map>
#include <memory>
#include <string>

#include "relqm/opalg/series.hpp"

namespace relqm::opexpr {

// Parse failure with 1-based source position.
struct ParseError : relqm::Error {
    ParseError(int line_, int col_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_),
          reason(msg) {}
    int line;
    int col;
    std::string reason;
};

// Optional name environment: identifiers that are neither operators nor
// scalars of the table resolve against these pre-parsed series.
using Definitions = std::map<std::string, opalg::OperatorSeries>;

// Parse one expression over the table's symbols.
//
// Grammar (documented in docs/expression_grammar.md): sums and differences of
// products; '/' by invertible scalar factors; integer powers with '^';
// commutator [A,B]; anticommutator {A,B}; eps^k for the expansion grade;
// sqrt_series(expr, K); integer and integer-ratio literals only, with an 'i'
// suffix for imaginary values.
opalg::OperatorSeries parse_expr(const std::string& text,
                                 std::shared_ptr<const opalg::SymbolTable> table,
                                 const Definitions* defs = nullptr);

// Canonical text form of a series; parse_expr(format_canonical(s)) == s.
std::string format_canonical(const opalg::OperatorSeries& s);

}  // namespace relqm::opexpr
