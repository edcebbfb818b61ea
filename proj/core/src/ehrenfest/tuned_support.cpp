#include "relqm/ehrenfest/ehrenfest.hpp"
#include "relqm/errors.hpp"

namespace relqm::ehrenfest {

double tuned_support_coefficient(const Eigen::VectorXcd& state, const hilbert::HilbertModel& m) {
    const double h_int = hilbert::int_expectation(m.hrel0, state, m.d_cm, m.d_int).real();
    const Eigen::MatrixXcd p2 = m.p_cm * m.p_cm;
    const double px2 = hilbert::cm_expectation(p2, state, m.d_cm, m.d_int).real();
    const double p_total2 = px2;  // single center-of-mass axis
    return -(h_int + (p_total2 - 2.0 * px2) / (2.0 * m.mass));
}

TunedRunResult run_tuned_support(const hilbert::HilbertModel& m,
                                 const hilbert::SparseMatrix& h_base,
                                 const hilbert::SparseMatrix& coupling, Eigen::VectorXcd psi,
                                 double dt, long n_steps, const hilbert::StepOptions& opt) {
    if (psi.size() != m.dim())
        throw BindingError("tuned-support run: state dimension does not match the model");
    if (!(dt > 0.0) || n_steps < 1)
        throw BindingError("tuned-support run needs a positive step and at least one step");

    TunedRunResult out;
    out.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.x.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.u_mid.reserve(static_cast<std::size_t>(n_steps));
    out.u_sample.reserve(static_cast<std::size_t>(n_steps) + 1);

    auto record = [&](double t) {
        out.times.push_back(t);
        out.x.push_back(hilbert::cm_expectation(m.x_cm, psi, m.d_cm, m.d_int).real());
        out.states.push_back(psi);
        out.u_sample.push_back(tuned_support_coefficient(psi, m));
    };
    record(0.0);

    double u_prev = out.u_sample.front();
    for (long k = 0; k < n_steps; ++k) {
        // Predictor: half step under the previous coefficient, then read the
        // tuning expectations at the midpoint state.
        Eigen::VectorXcd mid = psi;
        hilbert::krylov_step(hilbert::SparseMatrix(h_base + u_prev * coupling), mid, dt / 2.0,
                             m.hbar, opt, k);
        const double u = tuned_support_coefficient(mid, m);
        hilbert::krylov_step(hilbert::SparseMatrix(h_base + u * coupling), psi, dt, m.hbar, opt,
                             k);
        out.u_mid.push_back(u);
        u_prev = u;
        record(dt * static_cast<double>(k + 1));
    }
    return out;
}

}  // namespace relqm::ehrenfest
