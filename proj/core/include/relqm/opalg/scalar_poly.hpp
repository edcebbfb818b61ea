#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "relqm/opalg/rational.hpp"

namespace relqm::opalg {

using ScalarId = int;

// Laurent monomial in the commuting scalar symbols: sorted (symbol, exponent)
// pairs, exponents nonzero. Empty vector is the constant monomial 1.
using ScalarMono = std::vector<std::pair<ScalarId, int>>;

ScalarMono mono_mul(const ScalarMono& a, const ScalarMono& b);
ScalarMono mono_inverse(const ScalarMono& a);

// A single coefficient term: Gaussian rational times a scalar Laurent monomial.
struct ScalarCoeff {
    GaussianRational num;
    ScalarMono mono;

    ScalarCoeff() = default;
    ScalarCoeff(GaussianRational n, ScalarMono m = {}) : num(std::move(n)), mono(std::move(m)) {}

    bool is_zero() const { return num.is_zero(); }
    ScalarCoeff inverse() const { return {num.inverse(), mono_inverse(mono)}; }
};

// Finite sum of ScalarCoeff terms with distinct monomials; this is the
// coefficient ring for operator series. Zero terms are never stored.
class ScalarPoly {
  public:
    ScalarPoly() = default;
    ScalarPoly(GaussianRational c) {
        if (!c.is_zero()) terms_.emplace(ScalarMono{}, std::move(c));
    }
    ScalarPoly(ScalarCoeff t) {
        if (!t.is_zero()) terms_.emplace(std::move(t.mono), std::move(t.num));
    }

    static ScalarPoly one() { return ScalarPoly(GaussianRational(Rational(1))); }
    static ScalarPoly imaginary_unit() { return ScalarPoly(GaussianRational::unit_imaginary()); }
    static ScalarPoly symbol(ScalarId id, int exponent = 1) {
        ScalarCoeff t{GaussianRational(Rational(1)), ScalarMono{{id, exponent}}};
        if (exponent == 0) t.mono.clear();
        return ScalarPoly(std::move(t));
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ScalarMono, GaussianRational>& terms() const { return terms_; }

    // True when the polynomial is a single term (invertible in the Laurent ring).
    bool is_monomial() const { return terms_.size() == 1; }
    ScalarCoeff as_monomial() const;

    ScalarPoly& operator+=(const ScalarPoly& o);
    ScalarPoly& operator-=(const ScalarPoly& o);
    ScalarPoly operator-() const;
    friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
    friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);

    ScalarPoly times(const ScalarCoeff& t) const;
    ScalarPoly conj() const;

    // Exact division by an invertible (single-term) polynomial.
    ScalarPoly divided_by(const ScalarCoeff& divisor) const { return times(divisor.inverse()); }

    // Highest power of `id` appearing in any term (0 when absent).
    int degree_in(ScalarId id) const;
    // Sum of the terms whose exponent of `id` equals `deg`, with that power removed.
    ScalarPoly coefficient_of(ScalarId id, int deg) const;

    friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ScalarPoly& a, const ScalarPoly& b) { return !(a == b); }

    std::complex<double> eval(const std::vector<double>& values) const;

  private:
    void insert(ScalarMono m, GaussianRational c);
    std::map<ScalarMono, GaussianRational> terms_;
};

}  // namespace relqm::opalg
