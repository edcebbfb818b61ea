#include <algorithm>
#include <chrono>
#include <cmath>

#include "relqm/errors.hpp"
#include "relqm/hilbert/evaluate.hpp"
#include "relqm/hilbert/krylov.hpp"
#include "relqm/hilbert/states.hpp"
#include "relqm/hilbert/visibility.hpp"
#include "relqm/runner/runner.hpp"

namespace relqm::runner {

using opalg::OperatorSeries;
using opalg::ScalarPoly;

namespace {

ScalarPoly poly(const opalg::Rational& r) { return ScalarPoly(opalg::GaussianRational(r)); }

// Number of whole steps of size dt inside [0, t_max], computed exactly.
long whole_steps(const opexpr::ScenarioConfig& cfg, bool& partial) {
    mpq_class q = cfg.t_max / cfg.dt;
    q.canonicalize();
    mpz_class n = q.get_num() / q.get_den();
    partial = (n * q.get_den() != q.get_num());
    return n.get_si();
}

int effective_n_max(const opexpr::ScenarioConfig& cfg) {
    if (cfg.n_max > 0) return cfg.n_max;
    return hilbert::thermal_n_max(cfg.nbar_d(), cfg.thermal_tail.get_d());
}

struct EnsembleStats {
    double x = 0.0, p = 0.0, x2 = 0.0, hrel0 = 0.0, norm_defect = 0.0;
};

}  // namespace

ScenarioOperators assemble_scenario(const generators::CmSystem& sys,
                                    const opexpr::ScenarioConfig& cfg) {
    using generators::RindlerRoute;
    const int order = cfg.eps_order;
    const ScalarPoly alpha = poly(cfg.alpha);
    const ScalarPoly beta = poly(cfg.beta);

    OperatorSeries h = OperatorSeries::zero(sys.table);
    switch (cfg.scenario) {
        case opexpr::ScenarioTag::a:
            h = generators::h_minkowski(sys, order);
            break;
        case opexpr::ScenarioTag::b:
            h = generators::h_rindler(sys, order, RindlerRoute::anticommutator);
            break;
        case opexpr::ScenarioTag::c:
            // Inertial chart watching the accelerated support potential: the
            // documented convention subtracts the order-1 support operator,
            // which reproduces the accelerated-frame series through the
            // working order.
            h = generators::h_minkowski(sys, order) -
                generators::u_support_quantum(sys, alpha, beta);
            break;
        case opexpr::ScenarioTag::d:
            h = generators::h_rindler(sys, order, RindlerRoute::anticommutator) +
                generators::u_support_quantum(sys, alpha, beta);
            break;
    }

    switch (cfg.support) {
        case opexpr::SupportMode::none:
            break;
        case opexpr::SupportMode::classical_level0:
        case opexpr::SupportMode::classical_tuned:
            h += generators::u_support_classical_level0(sys);
            break;
        case opexpr::SupportMode::quantum_operator:
            h += generators::u_support_quantum(sys, alpha, beta);
            break;
    }
    if (cfg.cm_trap) {
        // Harmonic restoring potential M omega_cm^2 X^2 / 2 at leading order.
        const opalg::Rational half_w2 = cfg.omega_cm * cfg.omega_cm / 2;
        h += sys.x(0, 2).times(ScalarPoly::symbol(sys.M) * poly(half_w2));
    }
    h = truncate(h, order);

    ScenarioOperators ops;
    // Remove scalar negative-order terms (the rest energy): they commute
    // with everything, shift only the global phase, and would dominate the
    // bound matrix scale by c^2.
    OperatorSeries kept(sys.table, h.truncation_order());
    int removed = 0;
    for (const auto& [mono, coeff] : h.terms()) {
        if (mono.eps < 0) {
            if (!mono.factors.empty())
                throw AlgebraError("scenario generator has a non-scalar negative-order term");
            ++removed;
            continue;
        }
        kept.add_word(coeff, mono.eps, mono.factors);
    }
    if (h.truncation_lossy()) kept = truncate(kept, h.truncation_order().value_or(order));
    ops.h = kept;
    if (removed > 0)
        ops.rest_note = "removed " + std::to_string(removed) +
                        " scalar rest-energy term(s) at negative expansion order before binding";

    ops.accel = ehrenfest::symbolic_acceleration(sys, ops.h);
    ops.tuned = (cfg.support == opexpr::SupportMode::classical_tuned);
    if (ops.tuned)
        ops.coupling = sys.x(0, 1).times(ScalarPoly::symbol(sys.g)).shifted_eps(1);
    else
        ops.coupling = OperatorSeries::zero(sys.table);
    return ops;
}

namespace {

RunResult run_frozen(const opexpr::ScenarioConfig& cfg) {
    RunResult r;
    r.cfg = cfg;
    r.frozen = true;

    const int n_max = effective_n_max(cfg);
    const std::vector<double> weights =
        hilbert::thermal_weights(cfg.nbar_d(), n_max, cfg.thermal_tail.get_d());

    const double hbar = 1.0;
    const double eps = 1.0 / (cfg.c_d() * cfg.c_d());
    // Relative branch phase accumulates at eps * g * delta_x * omega_int per
    // internal quantum; the pinned-packet visibility depends only on it.
    const double rate = eps * cfg.g_d() * cfg.delta_x_d() * cfg.omega_int_d() / hbar;

    double mean_n = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n) mean_n += weights[n] * static_cast<double>(n);
    const double hrel0_mean = hbar * cfg.omega_int_d() * (mean_n + 0.5);
    const double width =
        cfg.width ? cfg.width->get_d() : std::sqrt(hbar / (cfg.mass_d() * cfg.omega_cm_d()));
    const double var_x = 0.25 * cfg.delta_x_d() * cfg.delta_x_d() + 0.5 * width * width;

    bool partial = false;
    const long steps = whole_steps(cfg, partial);
    if (partial) r.notes.push_back("horizon trimmed to the last whole step");
    const double dt = cfg.dt_d();

    for (long k = 0; k <= steps; ++k) {
        if (k % cfg.sample_every != 0 && k != steps) continue;
        CurveSample s;
        s.t = dt * static_cast<double>(k);
        s.var_x = var_x;
        s.hrel0 = hrel0_mean;
        s.visibility = hilbert::dephased_visibility(weights, rate * s.t);
        r.curve.push_back(s);
    }
    r.steps = steps;
    r.notes.push_back(
        "pure-phase mode: center of mass pinned, no Hilbert binding, no propagation");
    r.pass = true;
    return r;
}

RunResult run_propagated(const opexpr::ScenarioConfig& cfg) {
    RunResult r;
    r.cfg = cfg;
    r.propagated = true;

    hilbert::HilbertModel m = hilbert::build_model(cfg);
    r.checks = m.checks;

    ScenarioOperators ops = assemble_scenario(m.sys, cfg);
    if (!ops.rest_note.empty()) r.notes.push_back(ops.rest_note);

    const hilbert::SparseMatrix h_mat =
        hilbert::hermitian_part(hilbert::evaluate(ops.h, m).mat);
    hilbert::SparseOperator h_op;
    h_op.mat = h_mat;
    h_op.d_cm = m.d_cm;
    h_op.d_int = m.d_int;

    hilbert::SparseOperator accel_op = hilbert::evaluate(ops.accel, m);
    accel_op.mat = hilbert::hermitian_part(accel_op.mat);

    hilbert::SparseMatrix coupling_mat;
    if (ops.tuned) {
        coupling_mat = hilbert::hermitian_part(hilbert::evaluate(ops.coupling, m).mat);
        r.notes.push_back(
            "tuned support: first-order knob driven by the ensemble-mean tuning coefficient "
            "via a half-step predictor; energy is exchanged with the control, so the "
            "conservation check is skipped");
    }

    const int n_max = effective_n_max(cfg);
    hilbert::BranchEnsemble ens = hilbert::make_branch_ensemble(
        m, cfg.nbar_d(), n_max, cfg.thermal_tail.get_d(), cfg.center_d(),
        cfg.width ? cfg.width->get_d() : 0.0);
    hilbert::check_ensemble(ens);

    // Sector observables as sparse matrices: the bound ladder operators are
    // banded, so expectations per step stay cheap.
    const hilbert::SparseMatrix x_sp = m.x_cm.sparseView();
    const hilbert::SparseMatrix p_sp = m.p_cm.sparseView();
    const hilbert::SparseMatrix x2_sp = Eigen::MatrixXcd(m.x_cm * m.x_cm).sparseView();
    const Eigen::MatrixXcd hrel0_dense = m.hrel0;

    auto cm_sparse_expect = [&](const hilbert::SparseMatrix& a, const Eigen::VectorXcd& v) {
        // <v| (A ⊗ 1) |v> with A sparse on the center-of-mass sector.
        Eigen::Map<const Eigen::Matrix<hilbert::Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            mat(v.data(), m.d_cm, m.d_int);
        return (mat.adjoint() * (a * mat)).trace();
    };

    auto stats = [&](bool with_moments) {
        EnsembleStats st;
        for (const auto& member : ens) {
            for (const Eigen::VectorXcd* v : {&member.up, &member.down}) {
                const double w = 0.5 * member.weight;
                st.x += w * cm_sparse_expect(x_sp, *v).real();
                if (with_moments) {
                    st.p += w * cm_sparse_expect(p_sp, *v).real();
                    st.x2 += w * cm_sparse_expect(x2_sp, *v).real();
                    st.hrel0 +=
                        w * hilbert::int_expectation(hrel0_dense, *v, m.d_cm, m.d_int).real();
                    st.norm_defect = std::max(st.norm_defect, std::abs(v->norm() - 1.0));
                }
            }
        }
        return st;
    };
    auto mean_accel = [&]() {
        double a = 0.0;
        for (const auto& member : ens)
            for (const Eigen::VectorXcd* v : {&member.up, &member.down})
                a += 0.5 * member.weight * hilbert::expectation(accel_op, *v).real();
        return a;
    };
    auto mean_tuning = [&](const hilbert::BranchEnsemble& e) {
        double u = 0.0;
        for (const auto& member : e)
            for (const Eigen::VectorXcd* v : {&member.up, &member.down})
                u += 0.5 * member.weight * ehrenfest::tuned_support_coefficient(*v, m);
        return u;
    };
    auto mean_energy = [&]() {
        double e = 0.0;
        for (const auto& member : ens)
            for (const Eigen::VectorXcd* v : {&member.up, &member.down})
                e += 0.5 * member.weight * hilbert::expectation(h_op, *v).real();
        return e;
    };

    bool partial = false;
    const long steps = whole_steps(cfg, partial);
    if (partial) r.notes.push_back("horizon trimmed to the last whole step");
    const double dt = cfg.dt_d();

    hilbert::StepOptions opt;
    opt.krylov_dim = cfg.krylov_dim;
    opt.unitarity_tol = cfg.unitarity_tol.get_d();

    std::vector<double> x_all, sym_all;
    x_all.reserve(steps + 1);
    sym_all.reserve(steps + 1);

    const double eps = m.epsilon();
    double u_prev = ops.tuned ? mean_tuning(ens) : 0.0;

    auto record_sample = [&](long k) {
        EnsembleStats st = stats(true);
        CurveSample s;
        s.t = dt * static_cast<double>(k);
        s.x = st.x;
        s.p = st.p;
        s.var_x = st.x2 - st.x * st.x;
        s.hrel0 = st.hrel0;
        s.visibility = hilbert::visibility(ens, m);
        s.norm_defect = st.norm_defect;
        r.curve.push_back(s);
        r.max_norm_defect = std::max(r.max_norm_defect, st.norm_defect);
    };
    auto record_trackers = [&]() {
        EnsembleStats st = stats(false);
        x_all.push_back(st.x);
        double sym = mean_accel();
        if (ops.tuned) sym -= eps * m.g * mean_tuning(ens) / m.mass;
        sym_all.push_back(sym);
    };

    record_sample(0);
    record_trackers();
    const double e0 = ops.tuned ? 0.0 : mean_energy();
    double energy_drift = 0.0;

    for (long k = 0; k < steps; ++k) {
        if (!ops.tuned) {
            for (auto& member : ens) {
                hilbert::krylov_step(h_mat, member.up, dt, m.hbar, opt, k);
                hilbert::krylov_step(h_mat, member.down, dt, m.hbar, opt, k);
            }
        } else {
            // Half-step predictor on a scratch copy fixes the midpoint
            // coefficient; the real step then runs under it.
            hilbert::BranchEnsemble scratch = ens;
            const hilbert::SparseMatrix h_prev =
                hilbert::SparseMatrix(h_mat + u_prev * coupling_mat);
            for (auto& member : scratch) {
                hilbert::krylov_step(h_prev, member.up, dt / 2.0, m.hbar, opt, k);
                hilbert::krylov_step(h_prev, member.down, dt / 2.0, m.hbar, opt, k);
            }
            const double u_mid = mean_tuning(scratch);
            const hilbert::SparseMatrix h_step =
                hilbert::SparseMatrix(h_mat + u_mid * coupling_mat);
            for (auto& member : ens) {
                hilbert::krylov_step(h_step, member.up, dt, m.hbar, opt, k);
                hilbert::krylov_step(h_step, member.down, dt, m.hbar, opt, k);
            }
            u_prev = u_mid;
        }
        record_trackers();
        if ((k + 1) % cfg.sample_every == 0 || k + 1 == steps) record_sample(k + 1);
        if (!ops.tuned)
            energy_drift = std::max(energy_drift, std::abs(mean_energy() - e0));
    }
    r.steps = steps;

    if (steps >= 2) {
        r.ehrenfest = ehrenfest::residual_series_report(
            std::string(opexpr::to_string(cfg.scenario)) + "/" + opexpr::to_string(cfg.support),
            x_all, sym_all, dt);
        r.have_ehrenfest = true;
        if (!r.ehrenfest.pass)
            r.failures.push_back("ehrenfest residual " + std::to_string(r.ehrenfest.max_residual) +
                                 " exceeds budget");
    } else {
        r.notes.push_back("fewer than 3 trajectory samples: acceleration comparison skipped");
    }

    if (!ops.tuned) {
        r.have_energy_drift = true;
        r.energy_drift_rel = energy_drift / std::max(1e-9, std::abs(e0));
        if (r.energy_drift_rel > 1e-8)
            r.failures.push_back("energy drift " + std::to_string(r.energy_drift_rel) +
                                 " exceeds 1e-8 relative");
    }

    r.pass = r.failures.empty();
    return r;
}

}  // namespace

RunResult run_scenario(const opexpr::ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r = cfg.frozen_cm ? run_frozen(cfg) : run_propagated(cfg);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace relqm::runner
