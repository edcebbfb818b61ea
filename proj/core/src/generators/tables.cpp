#include "relqm/generators/tables.hpp"

#include <string>

namespace relqm::generators {

using opalg::OperatorSeries;
using opalg::ScalarPoly;

ScalarPoly CmSystem::ihbar() const {
    return ScalarPoly::imaginary_unit() * ScalarPoly::symbol(hbar);
}

OperatorSeries CmSystem::p_squared() const {
    OperatorSeries out = OperatorSeries::zero(table);
    for (int i = 0; i < dims; ++i) out += p(i, 2);
    return out;
}

OperatorSeries CmSystem::h_internal() const {
    return OperatorSeries::scalar(table, ScalarPoly::symbol(M), -1) +
           OperatorSeries::op(table, Hrel0) +
           OperatorSeries::op(table, Hrel1).shifted_eps(1);
}

CmSystem make_cm_system(int dims, bool commuting_internal) {
    if (dims != 1 && dims != 3) throw AlgebraError("make_cm_system: dims must be 1 or 3");
    CmSystem s;
    s.dims = dims;
    s.table = opalg::SymbolTable::create();
    if (dims == 1) {
        s.X[0] = s.table->declare_operator("X1");
        s.P[0] = s.table->declare_operator("P1");
    } else {
        for (int i = 0; i < 3; ++i)
            s.X[i] = s.table->declare_operator("X" + std::to_string(i + 1));
        for (int i = 0; i < 3; ++i)
            s.P[i] = s.table->declare_operator("P" + std::to_string(i + 1));
    }
    s.Hrel0 = s.table->declare_operator("Hrel0");
    s.Hrel1 = s.table->declare_operator("Hrel1");
    s.hbar = s.table->declare_scalar("hbar");
    s.M = s.table->declare_scalar("M");
    s.g = s.table->declare_scalar("g");
    s.alpha = s.table->declare_scalar("alpha");
    s.beta = s.table->declare_scalar("beta");

    ScalarPoly ihbar = s.ihbar();
    for (int i = 0; i < dims; ++i) {
        for (int j = 0; j < dims; ++j) {
            if (i == j) {
                s.table->set_commutator(s.X[i], s.P[j], ihbar);
            } else {
                s.table->set_commute(s.X[i], s.P[j]);
            }
        }
        for (int j = i + 1; j < dims; ++j) {
            s.table->set_commute(s.X[i], s.X[j]);
            s.table->set_commute(s.P[i], s.P[j]);
        }
        s.table->set_commute(s.X[i], s.Hrel0);
        s.table->set_commute(s.X[i], s.Hrel1);
        s.table->set_commute(s.P[i], s.Hrel0);
        s.table->set_commute(s.P[i], s.Hrel1);
    }
    if (commuting_internal) {
        s.table->set_commute(s.Hrel0, s.Hrel1);
    } else {
        // opaque internal commutator: an extra symbol standing for an unknown
        // operator, commuting with everything else
        opalg::OpId cint = s.table->declare_operator("Cint");
        for (int i = 0; i < dims; ++i) {
            s.table->set_commute(s.X[i], cint);
            s.table->set_commute(s.P[i], cint);
        }
        s.table->set_commute(s.Hrel0, cint);
        s.table->set_commute(s.Hrel1, cint);
        s.table->set_commutator(s.Hrel0, s.Hrel1, OperatorSeries::op(s.table, cint));
    }
    return s;
}

opalg::ScalarPoly FreeSystem::ihbar() const {
    return ScalarPoly::imaginary_unit() * ScalarPoly::symbol(hbar);
}

FreeSystem make_free_system(int n_particles) {
    if (n_particles < 1) throw AlgebraError("make_free_system: need at least one particle");
    FreeSystem s;
    s.n = n_particles;
    s.table = opalg::SymbolTable::create();
    s.r.resize(s.n);
    s.p.resize(s.n);
    for (int mu = 0; mu < s.n; ++mu)
        for (int i = 0; i < 3; ++i)
            s.r[mu][i] =
                s.table->declare_operator("r" + std::to_string(mu + 1) + "_" + std::to_string(i + 1));
    for (int mu = 0; mu < s.n; ++mu)
        for (int i = 0; i < 3; ++i)
            s.p[mu][i] =
                s.table->declare_operator("p" + std::to_string(mu + 1) + "_" + std::to_string(i + 1));
    s.hbar = s.table->declare_scalar("hbar");
    for (int mu = 0; mu < s.n; ++mu)
        s.mass.push_back(s.table->declare_scalar("m" + std::to_string(mu + 1)));

    ScalarPoly ihbar = s.ihbar();
    auto flat = [&](bool momenta, int mu, int i) { return momenta ? s.p[mu][i] : s.r[mu][i]; };
    const int total = 6 * s.n;
    auto op_at = [&](int k) {
        bool momenta = k >= 3 * s.n;
        int rem = momenta ? k - 3 * s.n : k;
        return flat(momenta, rem / 3, rem % 3);
    };
    for (int a = 0; a < total; ++a) {
        for (int b = a + 1; b < total; ++b) {
            bool a_mom = a >= 3 * s.n;
            bool b_mom = b >= 3 * s.n;
            if (!a_mom && b_mom && (b - 3 * s.n) == a) {
                s.table->set_commutator(op_at(a), op_at(b), ihbar);
            } else {
                s.table->set_commute(op_at(a), op_at(b));
            }
        }
    }
    return s;
}

}  // namespace relqm::generators
