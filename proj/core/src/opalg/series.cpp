#include "relqm/opalg/series.hpp"

#include <algorithm>

namespace relqm::opalg {

namespace {
std::optional<int> combined_truncation(const std::optional<int>& a, const std::optional<int>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

// Order through which a product of two series is trustworthy. A lossy factor
// stands for "true value + unknown tail above its truncation order"; the
// unknown tail times the other factor contaminates the product from
// (tail start + other's lowest order) upward. Non-lossy factors are exact
// whatever their declared cap, so only lossy factors constrain the product.
std::optional<int> product_truncation(const OperatorSeries& a, const OperatorSeries& b) {
    std::optional<int> bound;
    auto consider = [&bound](int v) { bound = bound ? std::min(*bound, v) : v; };
    bool a_tail = a.truncation_lossy() && a.truncation_order();
    bool b_tail = b.truncation_lossy() && b.truncation_order();
    if (a_tail && !b.is_zero()) consider(*a.truncation_order() + b.min_eps());
    if (b_tail && !a.is_zero()) consider(*b.truncation_order() + a.min_eps());
    if (a_tail && b_tail) consider(*a.truncation_order() + *b.truncation_order() + 1);
    return bound;
}
}  // namespace

OperatorSeries OperatorSeries::scalar(std::shared_ptr<const SymbolTable> table, ScalarPoly c,
                                      int eps) {
    OperatorSeries out(std::move(table));
    out.insert(Monomial{eps, {}}, std::move(c));
    return out;
}

OperatorSeries OperatorSeries::op(std::shared_ptr<const SymbolTable> table, OpId id, int power) {
    if (power < 0) throw AlgebraError("operator symbols have no inverse");
    OperatorSeries out(std::move(table));
    if (power == 0) {
        out.insert(Monomial{0, {}}, ScalarPoly::one());
    } else {
        out.insert(Monomial{0, {{id, power}}}, ScalarPoly::one());
    }
    return out;
}

int OperatorSeries::min_eps() const {
    if (terms_.empty()) throw AlgebraError("min_eps of an empty series");
    return terms_.begin()->first.eps;
}

ScalarPoly OperatorSeries::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return {};
    return it->second;
}

bool OperatorSeries::is_scalar() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.factors.empty(); });
}

void OperatorSeries::insert(Monomial m, ScalarPoly c) {
    if (c.is_zero()) return;
    if (trunc_ && m.eps > *trunc_) {
        lossy_ = true;
        return;
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void OperatorSeries::check_same_table(const OperatorSeries& o) const {
    if (table_.get() != o.table_.get())
        throw AlgebraError("cannot combine series over different symbol tables");
}

OperatorSeries& OperatorSeries::operator+=(const OperatorSeries& o) {
    if (!table_) {
        *this = o;
        return *this;
    }
    if (o.table_) check_same_table(o);
    trunc_ = combined_truncation(trunc_, o.trunc_);
    lossy_ = lossy_ || o.lossy_;
    if (trunc_) {
        // Tightening the order may drop terms already stored on either side.
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.eps > *trunc_) {
                lossy_ = true;
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }
    for (const auto& [m, c] : o.terms_) insert(m, c);
    return *this;
}

OperatorSeries& OperatorSeries::operator-=(const OperatorSeries& o) {
    return *this += -o;
}

OperatorSeries OperatorSeries::operator-() const {
    OperatorSeries out(table_, trunc_);
    out.lossy_ = lossy_;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b) {
    a.check_same_table(b);
    OperatorSeries out(a.table(), product_truncation(a, b));
    if (a.truncation_lossy() || b.truncation_lossy()) out.lossy_ = true;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<std::pair<OpId, int>> word = ma.factors;
            word.insert(word.end(), mb.factors.begin(), mb.factors.end());
            out.add_word(ca * cb, ma.eps + mb.eps, word);
        }
    }
    return out;
}

OperatorSeries OperatorSeries::times(const ScalarPoly& c) const {
    OperatorSeries out(table_, trunc_);
    out.lossy_ = lossy_;
    for (const auto& [m, coeff] : terms_) out.insert(m, coeff * c);
    return out;
}

OperatorSeries OperatorSeries::shifted_eps(int delta) const {
    // The truncation horizon moves with the terms.
    OperatorSeries out(table_, trunc_ ? std::optional<int>(*trunc_ + delta) : std::nullopt);
    out.lossy_ = lossy_;
    for (const auto& [m, coeff] : terms_) out.insert(Monomial{m.eps + delta, m.factors}, coeff);
    return out;
}

OperatorSeries OperatorSeries::pow(int exponent) const {
    if (!table_) throw AlgebraError("pow of an uninitialized series");
    if (exponent < 0) {
        if (!is_scalar() || terms_.size() != 1 || !terms_.begin()->second.is_monomial())
            throw AlgebraError("negative powers require an invertible scalar series");
        if (lossy_) throw AlgebraError("cannot invert a truncation-lossy series");
        const auto& [m, poly] = *terms_.begin();
        ScalarCoeff inv = poly.as_monomial().inverse();
        OperatorSeries base = scalar(table_, ScalarPoly(inv), -m.eps);
        return base.pow(-exponent);
    }
    OperatorSeries acc = identity(table_);
    acc.trunc_ = trunc_;
    for (int k = 0; k < exponent; ++k) acc = acc * *this;
    return acc;
}

bool operator==(const OperatorSeries& a, const OperatorSeries& b) {
    return a.table_.get() == b.table_.get() && a.terms_ == b.terms_;
}

bool equals(const OperatorSeries& a, const OperatorSeries& b) {
    return a == b;
}

OperatorSeries commutator(const OperatorSeries& a, const OperatorSeries& b) {
    return a * b - b * a;
}

OperatorSeries anticommutator(const OperatorSeries& a, const OperatorSeries& b) {
    return a * b + b * a;
}

OperatorSeries adjoint(const OperatorSeries& a) {
    OperatorSeries out(a.table(), a.truncation_order());
    out.lossy_ = a.lossy_;
    for (const auto& [m, c] : a.terms()) {
        std::vector<std::pair<OpId, int>> rev(m.factors.rbegin(), m.factors.rend());
        out.add_word(c.conj(), m.eps, rev);
    }
    return out;
}

OperatorSeries truncate(const OperatorSeries& a, int order) {
    OperatorSeries out(a.table(), combined_truncation(a.truncation_order(), order));
    out.lossy_ = a.lossy_;
    for (const auto& [m, c] : a.terms()) out.insert(m, c);
    return out;
}

OperatorSeries substitute(const OperatorSeries& a, OpId symbol,
                          const OperatorSeries& replacement) {
    a.check_same_table(replacement);
    OperatorSeries out(a.table(),
                       combined_truncation(a.truncation_order(), replacement.truncation_order()));
    out.lossy_ = a.lossy_ || replacement.lossy_;
    for (const auto& [m, c] : a.terms()) {
        OperatorSeries acc = OperatorSeries::scalar(a.table(), c, m.eps);
        for (const auto& [op, p] : m.factors) {
            if (op == symbol) {
                acc = acc * replacement.pow(p);
            } else {
                acc = acc * OperatorSeries::op(a.table(), op, p);
            }
        }
        out += acc;
    }
    return out;
}

}  // namespace relqm::opalg
