#pragma once

#include <array>
#include <optional>

#include "relqm/generators/tables.hpp"

namespace relqm::generators {

// The ten symmetry generators of one system, built at a fixed square-root
// truncation order. Boosts are instantaneous (time parameter fixed at zero).
// For a 1-dimensional system the J entries are zero series.
struct GeneratorSet {
    enum class Form { free_particles, center_of_mass };
    Form form = Form::center_of_mass;
    int order = 2;
    int dims = 3;
    std::array<opalg::OperatorSeries, 3> P;
    std::array<opalg::OperatorSeries, 3> J;
    std::array<opalg::OperatorSeries, 3> K;
    opalg::OperatorSeries H;
};

// Free particles: P = sum p_mu, J = sum r_mu x p_mu, H = sum T_mu with
// T_mu = sqrt(p_mu^2 eps^-1 + m_mu^2 eps^-2) expanded to `order`, and
// K_a = (eps/2) sum {r_mu_a, T_mu}. Throws AlgebraError when order < 0.
GeneratorSet build_free_generators(const FreeSystem& sys, int order);

// Center-of-mass form: P_i collective, J = X x P, H = sqrt(P^2 eps^-1 +
// Hrel^2) with Hrel = M eps^-1 + Hrel0 + eps Hrel1 expanded to `order`,
// K_i = (eps/2){X_i, H}. Throws AlgebraError when order < 0.
GeneratorSet build_cm_generators(const CmSystem& sys, int order);

// Uniformly accelerated frame Hamiltonian, two equivalent constructions.
enum class RindlerRoute { anticommutator, boost };

// anticommutator: H_M + (g eps/2){X_1, H_M}; boost: H_M + g K_1 with K_1
// taken from build_cm_generators. The two routes agree exactly as series.
opalg::OperatorSeries h_rindler(const CmSystem& sys, int order, RindlerRoute route);

// Inertial-frame Hamiltonian of the same system (the H of build_cm_generators).
opalg::OperatorSeries h_minkowski(const CmSystem& sys, int order);

// Support potential holding the system static in the accelerated frame.
// Level-0 classical form: -M g X_1 (no internal coupling).
opalg::OperatorSeries u_support_classical_level0(const CmSystem& sys);

// First-order coefficient of the operator-valued support family:
//   u1 = -Hrel0 g X_1 - (g/2M)(alpha X_1 P^2 + beta P^2 X_1),
// graded at eps^0 (the caller supplies the eps weight). Requires
// alpha + beta = 1 exactly; throws AlgebraError otherwise.
opalg::OperatorSeries u_first_order_quantum(const CmSystem& sys, const opalg::ScalarPoly& alpha,
                                            const opalg::ScalarPoly& beta);

// Full operator-valued support: -M g X_1 + eps * u_first_order_quantum.
// At alpha = beta = 1/2 this is -M g X_1 - eps(Hrel0 g X_1 + (g/4M){X_1, P^2}).
opalg::OperatorSeries u_support_quantum(const CmSystem& sys, const opalg::ScalarPoly& alpha,
                                        const opalg::ScalarPoly& beta);

// Static-expectation condition functional: [P_1, u] - (i/2 hbar)[[X_1, u], P^2].
// `u` must be concentrated at a single eps grade (its first-order coefficient
// is normally passed at grade 0); the grading passes through linearly.
opalg::OperatorSeries no_acceleration_lhs(const CmSystem& sys, const opalg::OperatorSeries& u);

// The value no_acceleration_lhs takes on the whole alpha + beta = 1 family:
// i hbar g (Hrel0 + (P^2 - 2 P_1^2)/2M), graded at eps^0.
opalg::OperatorSeries no_acceleration_rhs(const CmSystem& sys);

// Residual-based identity check. `order` empty compares canonical forms as
// stored (exact mode); otherwise the residual's tracked validity must reach
// `order` (else the check is vacuous and fails) and the residual must vanish
// through it.
struct IdentityCheck {
    bool ok = false;        // holds: residual empty through the compared order
    bool covered = false;   // tracked validity reaches the compared order
    opalg::OperatorSeries residual;
};

IdentityCheck check_identity(const opalg::OperatorSeries& lhs, const opalg::OperatorSeries& rhs,
                             std::optional<int> order);

inline bool identity_holds(const opalg::OperatorSeries& lhs, const opalg::OperatorSeries& rhs,
                           std::optional<int> order) {
    return check_identity(lhs, rhs, order).ok;
}

}  // namespace relqm::generators
