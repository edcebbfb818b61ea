#include "relqm/opalg/scalar_poly.hpp"

#include <cmath>

namespace relqm::opalg {

bool is_perfect_square(const Rational& r) {
    if (r < 0) return false;
    return mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t());
}

Rational sqrt_exact(const Rational& r) {
    if (!is_perfect_square(r))
        throw AlgebraError("sqrt_exact: " + r.get_str() + " is not a perfect square");
    Rational out;
    mpz_sqrt(out.get_num_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(out.get_den_mpz_t(), r.get_den_mpz_t());
    return out;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw AlgebraError("division by zero coefficient");
    Rational n = re * re + im * im;
    return {re / n, -im / n};
}

std::string GaussianRational::str() const {
    if (im == 0) return re.get_str();
    std::string s = re.get_str();
    s += (im < 0) ? "-" : "+";
    // "5i/3" rather than "5/3i": the expression grammar reads a trailing i as
    // part of the numeric literal, so the denominator must follow it.
    Rational mag = abs(im);
    s += mag.get_num().get_str();
    s += "i";
    if (mag.get_den() != 1) {
        s += "/";
        s += mag.get_den().get_str();
    }
    return s;
}

ScalarMono mono_mul(const ScalarMono& a, const ScalarMono& b) {
    ScalarMono out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            int e = ia->first;
            int p = ia->second + ib->second;
            if (p != 0) out.emplace_back(e, p);
            ++ia;
            ++ib;
        }
    }
    return out;
}

ScalarMono mono_inverse(const ScalarMono& a) {
    ScalarMono out = a;
    for (auto& [id, p] : out) p = -p;
    return out;
}

bool ScalarPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second == GaussianRational(Rational(1));
}

ScalarCoeff ScalarPoly::as_monomial() const {
    if (!is_monomial()) throw AlgebraError("scalar polynomial is not a single term");
    const auto& [m, c] = *terms_.begin();
    return {c, m};
}

void ScalarPoly::insert(ScalarMono m, GaussianRational c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ScalarPoly ScalarPoly::operator-() const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            out.insert(mono_mul(ma, mb), ca * cb);
        }
    }
    return out;
}

ScalarPoly ScalarPoly::times(const ScalarCoeff& t) const {
    ScalarPoly out;
    if (t.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.insert(mono_mul(m, t.mono), c * t.num);
    return out;
}

ScalarPoly ScalarPoly::conj() const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
    return out;
}

int ScalarPoly::degree_in(ScalarId id) const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        for (const auto& [sid, p] : m) {
            if (sid == id && p > deg) deg = p;
        }
    }
    return deg;
}

ScalarPoly ScalarPoly::coefficient_of(ScalarId id, int deg) const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) {
        int p = 0;
        ScalarMono rest;
        for (const auto& e : m) {
            if (e.first == id) {
                p = e.second;
            } else {
                rest.push_back(e);
            }
        }
        if (p == deg) out.insert(std::move(rest), c);
    }
    return out;
}

std::complex<double> ScalarPoly::eval(const std::vector<double>& values) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        double factor = 1.0;
        for (const auto& [id, p] : m) {
            if (id < 0 || static_cast<std::size_t>(id) >= values.size())
                throw AlgebraError("scalar symbol has no bound value");
            factor *= std::pow(values[static_cast<std::size_t>(id)], p);
        }
        acc += c.to_complex() * factor;
    }
    return acc;
}

}  // namespace relqm::opalg
