#include <sstream>

#include "relqm/opalg/series.hpp"

namespace relqm::opalg {

namespace {

void append_coeff(std::ostringstream& out, const GaussianRational& c) {
    out << '(' << c.str() << ')';
}

}  // namespace

// One output term per (coefficient term, eps power, factor sequence), in map
// order: eps grade first, then factor sequence, then scalar monomial. Every
// exponent is printed explicitly so the format is position independent and
// re-parseable.
std::string to_canonical_string(const OperatorSeries& s) {
    if (s.is_zero()) return "0";
    const auto& table = *s.table();
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, poly] : s.terms()) {
        for (const auto& [smono, num] : poly.terms()) {
            if (!first) out << " + ";
            first = false;
            append_coeff(out, num);
            for (const auto& [sid, p] : smono) {
                out << '*' << table.scalar_name(sid) << '^' << p;
            }
            if (mono.eps != 0) out << "*eps^" << mono.eps;
            for (const auto& [op, p] : mono.factors) {
                out << '*' << table.operator_name(op) << '^' << p;
            }
        }
    }
    return out.str();
}

}  // namespace relqm::opalg
