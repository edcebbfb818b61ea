#include "relqm/opalg/series.hpp"

namespace relqm::opalg {

namespace {

ScalarCoeff sqrt_of_coeff(const ScalarCoeff& c2, int eps2) {
    if (!c2.num.is_real() || c2.num.re <= 0)
        throw AlgebraError("series_sqrt: leading term must be a positive real scalar");
    if (eps2 % 2 != 0)
        throw AlgebraError("series_sqrt: leading term has odd eps exponent");
    ScalarCoeff s;
    s.num = GaussianRational(sqrt_exact(c2.num.re));
    for (const auto& [id, p] : c2.mono) {
        if (p % 2 != 0)
            throw AlgebraError("series_sqrt: leading term has an odd scalar exponent");
        s.mono.emplace_back(id, p / 2);
    }
    return s;
}

// Rational binomial coefficient C(1/2, k).
Rational half_binomial(int k) {
    Rational acc(1);
    Rational half(1, 2);
    for (int j = 0; j < k; ++j) {
        acc *= (half - j);
        acc /= (j + 1);
    }
    return acc;
}

}  // namespace

OperatorSeries series_sqrt(const OperatorSeries& arg, int order) {
    if (arg.is_zero()) throw AlgebraError("series_sqrt of the zero series");
    const auto& table = arg.table();

    // The leading eps slot must hold exactly one scalar term: that is s^2.
    int lead_eps = arg.min_eps();
    Monomial lead_key{lead_eps, {}};
    ScalarPoly lead = arg.coefficient(lead_key);
    if (lead.is_zero() || !lead.is_monomial())
        throw AlgebraError("series_sqrt: argument is not s^2 (1 + B) with scalar leading term");
    for (const auto& [m, c] : arg.terms()) {
        if (m.eps == lead_eps && !(m == lead_key))
            throw AlgebraError("series_sqrt: non-scalar term at leading eps order");
    }

    ScalarCoeff s2 = lead.as_monomial();
    ScalarCoeff s = sqrt_of_coeff(s2, lead_eps);
    int s_eps = lead_eps / 2;

    // B = arg / s^2 - 1; every monomial must have positive relative eps order.
    ScalarCoeff inv_s2 = s2.inverse();
    OperatorSeries b(table);
    for (const auto& [m, c] : arg.terms()) {
        if (m == lead_key) continue;
        OperatorSeries piece = OperatorSeries::scalar(table, c.times(inv_s2), m.eps - lead_eps);
        for (const auto& [op, p] : m.factors) {
            piece = piece * OperatorSeries::op(table, op, p);
        }
        b += piece;
    }
    if (!b.is_zero() && b.min_eps() < 1)
        throw AlgebraError("series_sqrt: correction B has a term of non-positive eps order");

    // The binomial expansion of sqrt(1+B) assumes the monomials of B commute
    // with one another; refuse ordering-ambiguous arguments.
    {
        std::vector<const Monomial*> monos;
        for (const auto& [m, c] : b.terms()) monos.push_back(&m);
        for (std::size_t i = 0; i < monos.size(); ++i) {
            for (std::size_t j = i + 1; j < monos.size(); ++j) {
                for (const auto& [opa, pa] : monos[i]->factors) {
                    for (const auto& [opb, pb] : monos[j]->factors) {
                        if (!table->commutes(opa, opb))
                            throw AlgebraError(
                                "series_sqrt: monomials of B do not commute; square root is "
                                "ordering-ambiguous");
                    }
                }
            }
        }
    }

    // s * sum_k C(1/2,k) B^k. Each B^k has relative eps order >= k, so the
    // expansion terminates once k exceeds order - s_eps.
    OperatorSeries result(table, order);
    result += OperatorSeries::scalar(table, ScalarPoly(s), s_eps);

    OperatorSeries bk = OperatorSeries::identity(table);
    int k_max = order - s_eps + 1;
    for (int k = 1; k <= k_max; ++k) {
        bk = truncate(bk * b, order - s_eps);
        if (bk.is_zero()) {
            // A zero remainder reached only by dropping terms means the
            // binomial tail continues past the requested order.
            if (bk.truncation_lossy()) result.lossy_ = true;
            break;
        }
        ScalarCoeff term{GaussianRational(half_binomial(k)), s.mono};
        result += bk.times(ScalarPoly(term)).shifted_eps(s_eps);
    }
    return result;
}

}  // namespace relqm::opalg
