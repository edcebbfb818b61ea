#pragma once

#include <array>
#include <memory>
#include <vector>

#include "relqm/opalg/series.hpp"

namespace relqm::generators {

// Center-of-mass system: collective position/momentum components plus two
// opaque internal-energy symbols. Canonical order: positions < momenta <
// internal symbols. Rules: [X_i, P_j] = i hbar delta_ij, internal symbols
// commute with everything (the internal pair optionally carries an opaque
// noncommuting rule instead).
struct CmSystem {
    std::shared_ptr<opalg::SymbolTable> table;
    int dims = 3;
    std::array<opalg::OpId, 3> X{};
    std::array<opalg::OpId, 3> P{};
    opalg::OpId Hrel0{};
    opalg::OpId Hrel1{};
    opalg::ScalarId hbar{};
    opalg::ScalarId M{};
    opalg::ScalarId g{};
    opalg::ScalarId alpha{};
    opalg::ScalarId beta{};

    opalg::OperatorSeries x(int i, int power = 1) const {
        return opalg::OperatorSeries::op(table, X.at(i), power);
    }
    opalg::OperatorSeries p(int i, int power = 1) const {
        return opalg::OperatorSeries::op(table, P.at(i), power);
    }
    // P_1^2 + ... + P_dims^2
    opalg::OperatorSeries p_squared() const;
    // M eps^-1 + Hrel0 + eps Hrel1
    opalg::OperatorSeries h_internal() const;
    opalg::ScalarPoly ihbar() const;
};

// dims is 1 or 3. commuting_internal=false installs an opaque operator-valued
// rule for [Hrel0, Hrel1] (a fresh symbol Cint), under which the square-root
// expansion must refuse.
CmSystem make_cm_system(int dims, bool commuting_internal = true);

// N free particles: per-particle positions and momenta (canonical order:
// all positions, then all momenta, particle-major) with masses m1..mN.
struct FreeSystem {
    std::shared_ptr<opalg::SymbolTable> table;
    int n = 1;
    std::vector<std::array<opalg::OpId, 3>> r;
    std::vector<std::array<opalg::OpId, 3>> p;
    opalg::ScalarId hbar{};
    std::vector<opalg::ScalarId> mass;

    opalg::OperatorSeries pos(int mu, int i, int power = 1) const {
        return opalg::OperatorSeries::op(table, r.at(mu).at(i), power);
    }
    opalg::OperatorSeries mom(int mu, int i, int power = 1) const {
        return opalg::OperatorSeries::op(table, p.at(mu).at(i), power);
    }
    opalg::ScalarPoly ihbar() const;
};

FreeSystem make_free_system(int n_particles);

}  // namespace relqm::generators
