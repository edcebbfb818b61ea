#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relqm/opalg/symbol_table.hpp"

namespace relqm::opalg {

// Product of operator powers at a fixed power of eps. `factors` holds
// (operator, power) with power >= 1 and no two adjacent equal operators;
// an empty factor list is a multiple of the identity.
struct Monomial {
    int eps = 0;
    std::vector<std::pair<OpId, int>> factors;

    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        return a.factors < b.factors;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.eps == b.eps && a.factors == b.factors;
    }
};

// Finite Laurent series in eps with noncommutative operator monomials and
// ScalarPoly coefficients, kept in normal-ordered canonical form at all
// times. An optional truncation order K drops (and flags) any term with
// eps-exponent exceeding K.
class OperatorSeries {
  public:
    OperatorSeries() = default;
    explicit OperatorSeries(std::shared_ptr<const SymbolTable> table,
                            std::optional<int> truncation = std::nullopt)
        : table_(std::move(table)), trunc_(truncation) {}

    static OperatorSeries zero(std::shared_ptr<const SymbolTable> table) {
        return OperatorSeries(std::move(table));
    }
    static OperatorSeries scalar(std::shared_ptr<const SymbolTable> table, ScalarPoly c,
                                 int eps = 0);
    static OperatorSeries identity(std::shared_ptr<const SymbolTable> table) {
        return scalar(std::move(table), ScalarPoly::one());
    }
    static OperatorSeries op(std::shared_ptr<const SymbolTable> table, OpId id, int power = 1);

    const std::shared_ptr<const SymbolTable>& table() const { return table_; }
    const std::map<Monomial, ScalarPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::optional<int> truncation_order() const { return trunc_; }
    // True when any term has ever been dropped by truncation in the history
    // of this value.
    bool truncation_lossy() const { return lossy_; }

    // Smallest eps power present; throws AlgebraError when empty.
    int min_eps() const;

    ScalarPoly coefficient(const Monomial& m) const;
    // True when every term is a multiple of the identity.
    bool is_scalar() const;

    OperatorSeries& operator+=(const OperatorSeries& o);
    OperatorSeries& operator-=(const OperatorSeries& o);
    OperatorSeries operator-() const;
    friend OperatorSeries operator+(OperatorSeries a, const OperatorSeries& b) { return a += b; }
    friend OperatorSeries operator-(OperatorSeries a, const OperatorSeries& b) { return a -= b; }
    friend OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b);

    OperatorSeries times(const ScalarPoly& c) const;
    OperatorSeries shifted_eps(int delta) const;

    // Integer powers; negative exponents require an invertible scalar series.
    OperatorSeries pow(int exponent) const;

    // Accumulate `coeff * eps^eps_power * word` into this series, normal
    // ordering the word. The word may contain arbitrary repetition and order.
    void add_word(ScalarPoly coeff, int eps_power,
                  const std::vector<std::pair<OpId, int>>& word);

    friend bool operator==(const OperatorSeries& a, const OperatorSeries& b);

  private:
    friend OperatorSeries truncate(const OperatorSeries&, int);
    friend OperatorSeries adjoint(const OperatorSeries&);
    friend OperatorSeries substitute(const OperatorSeries&, OpId, const OperatorSeries&);
    friend OperatorSeries series_sqrt(const OperatorSeries&, int);

    void insert(Monomial m, ScalarPoly c);
    void check_same_table(const OperatorSeries& o) const;

    std::shared_ptr<const SymbolTable> table_;
    std::map<Monomial, ScalarPoly> terms_;
    std::optional<int> trunc_;
    bool lossy_ = false;
};

// Normal order a single word: rewrite coeff * eps^k * word into canonical
// form using the table's commutation rules.
OperatorSeries normal_order(std::shared_ptr<const SymbolTable> table, ScalarPoly coeff,
                            int eps_power, const std::vector<std::pair<OpId, int>>& word,
                            std::optional<int> truncation = std::nullopt);

// Series values are kept canonical at all times, so this is the identity; it
// exists so callers can state intent and tests can check idempotence.
inline const OperatorSeries& normal_order(const OperatorSeries& a) { return a; }

OperatorSeries commutator(const OperatorSeries& a, const OperatorSeries& b);
OperatorSeries anticommutator(const OperatorSeries& a, const OperatorSeries& b);

// Hermitian adjoint: reverses factors, conjugates coefficients, re-orders.
// All operator symbols are taken self-adjoint.
OperatorSeries adjoint(const OperatorSeries& a);

// Keep only terms with eps-exponent <= order and pin the truncation order.
OperatorSeries truncate(const OperatorSeries& a, int order);

// Replace every occurrence of an operator symbol by a series (positionally,
// then re-normal-order).
OperatorSeries substitute(const OperatorSeries& a, OpId symbol, const OperatorSeries& replacement);

// Exact structural equality of canonical forms (same table, same terms).
bool equals(const OperatorSeries& a, const OperatorSeries& b);

// Square root of arg = s^2 (1 + B) where s is a single invertible scalar
// monomial (possibly carrying a power of eps) and every monomial of B has
// strictly positive eps-order relative to s^2 and commutes with every other.
// Returns the binomial series s * sum_k C(1/2, k) B^k truncated at `order`.
OperatorSeries series_sqrt(const OperatorSeries& arg, int order);

// Deterministic canonical text form; parseable by the expression language.
std::string to_canonical_string(const OperatorSeries& s);

}  // namespace relqm::opalg
