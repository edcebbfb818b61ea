#include <algorithm>
#include <cmath>

#include "relqm/ehrenfest/ehrenfest.hpp"
#include "relqm/errors.hpp"

namespace relqm::ehrenfest {

using opalg::OperatorSeries;
using opalg::ScalarPoly;

OperatorSeries symbolic_acceleration(const generators::CmSystem& sys, const OperatorSeries& h) {
    // Rest-energy terms sit at negative order, commute with everything, and
    // contribute exactly zero to both commutators; keeping them would drag
    // the conservative product-validity bound below the order we need.
    OperatorSeries h_work(sys.table, h.truncation_order());
    for (const auto& [mono, coeff] : h.terms()) {
        if (mono.eps < 0) {
            if (!mono.factors.empty())
                throw AlgebraError(
                    "acceleration of a Hamiltonian with non-scalar negative-order terms is not "
                    "defined in this expansion");
            continue;  // scalar * identity: commutes exactly
        }
        h_work.add_word(coeff, mono.eps, mono.factors);
    }
    if (h.truncation_lossy()) h_work = truncate(h_work, h.truncation_order().value_or(1));

    const OperatorSeries x = sys.x(0, 1);
    const OperatorSeries outer = commutator(commutator(x, h_work), h_work);
    const ScalarPoly minus_inv_h2 = -ScalarPoly::symbol(sys.hbar, -2);
    return truncate(outer.times(minus_inv_h2), 1);
}

std::vector<double> numeric_acceleration(const std::vector<double>& x, double dt) {
    if (x.size() < 3)
        throw BindingError("numeric acceleration needs at least 3 uniform samples, got " +
                           std::to_string(x.size()));
    if (!(dt > 0.0)) throw BindingError("numeric acceleration needs a positive sample spacing");
    std::vector<double> out(x.size() - 2);
    for (std::size_t i = 0; i + 2 < x.size(); ++i)
        out[i] = (x[i] - 2.0 * x[i + 1] + x[i + 2]) / (dt * dt);
    return out;
}

EhrenfestReport residual_report(const std::string& scenario,
                                const hilbert::SparseOperator& accel_op,
                                const hilbert::HilbertModel& m,
                                const std::vector<Eigen::VectorXcd>& states, double dt, double t0,
                                const std::vector<double>& extra_accel, double tol) {
    if (states.size() < 3)
        throw BindingError("residual report needs at least 3 trajectory samples, got " +
                           std::to_string(states.size()));
    if (!extra_accel.empty() && extra_accel.size() != states.size())
        throw BindingError("per-sample acceleration corrections must match the sample count");

    std::vector<double> x(states.size());
    std::vector<double> symbolic_all(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& psi = states[i];
        x[i] = hilbert::cm_expectation(m.x_cm, psi, m.d_cm, m.d_int).real();
        symbolic_all[i] = hilbert::expectation(accel_op, psi).real();
        if (!extra_accel.empty()) symbolic_all[i] += extra_accel[i];
    }
    return residual_series_report(scenario, x, symbolic_all, dt, t0, tol);
}

EhrenfestReport residual_series_report(const std::string& scenario, const std::vector<double>& x,
                                       const std::vector<double>& symbolic_all, double dt,
                                       double t0, double tol) {
    if (x.size() < 3)
        throw BindingError("residual report needs at least 3 trajectory samples, got " +
                           std::to_string(x.size()));
    if (symbolic_all.size() != x.size())
        throw BindingError("symbolic prediction series must match the sample count");

    EhrenfestReport rep;
    rep.scenario = scenario;
    rep.numeric = numeric_acceleration(x, dt);
    rep.times.resize(rep.numeric.size());
    rep.symbolic.resize(rep.numeric.size());
    rep.residual.resize(rep.numeric.size());
    double accel_scale = 0.0;
    for (std::size_t i = 0; i < rep.numeric.size(); ++i) {
        rep.times[i] = t0 + dt * static_cast<double>(i + 1);
        rep.symbolic[i] = symbolic_all[i + 1];  // interior sample
        rep.residual[i] = rep.numeric[i] - rep.symbolic[i];
        rep.max_residual = std::max(rep.max_residual, std::abs(rep.residual[i]));
        accel_scale = std::max(accel_scale, std::abs(rep.symbolic[i]));
    }
    rep.base_tolerance = tol;
    // Central differences carry an O(dt^2) truncation error proportional to
    // the fourth time derivative of <X>; budget it against the acceleration
    // scale of the run (floor 1 in simulation units).
    rep.dt_allowance = dt * dt * std::max(1.0, accel_scale);
    rep.pass = rep.max_residual <= rep.base_tolerance + rep.dt_allowance;
    return rep;
}

}  // namespace relqm::ehrenfest
