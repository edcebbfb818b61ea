#include "relqm/hilbert/krylov.hpp"

#include <cmath>
#include <sstream>

#include "relqm/errors.hpp"

namespace relqm::hilbert {

void krylov_step(const SparseMatrix& h, Eigen::VectorXcd& psi, double dt, double hbar,
                 const StepOptions& opt, long step_index) {
    if (h.rows() != h.cols() || h.rows() != psi.size())
        throw BindingError("Hamiltonian and state dimensions disagree");
    if (opt.krylov_dim < 1) throw BindingError("Krylov dimension must be at least 1");

    const double beta0 = psi.norm();
    if (!std::isfinite(beta0))
        throw NumericalAbort("propagation state is not finite", step_index);
    if (beta0 == 0.0) return;

    const int n = static_cast<int>(psi.size());
    const int m = std::min<int>(opt.krylov_dim, n);

    // Lanczos tridiagonalization with one full reorthogonalization pass.
    Eigen::MatrixXcd basis(n, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);  // beta(j) couples j and j+1
    basis.col(0) = psi / beta0;
    int m_eff = m;
    double h_scale = 0.0;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd w = h * basis.col(j);
        alpha(j) = w.dot(basis.col(j)).real();
        w -= alpha(j) * basis.col(j);
        if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w).eval();
        h_scale = std::max({h_scale, std::abs(alpha(j)), j > 0 ? beta(j - 1) : 0.0});
        if (j + 1 == m) break;
        const double b = w.norm();
        if (!std::isfinite(b))
            throw NumericalAbort("propagation produced a non-finite Krylov vector", step_index);
        if (b <= 1e-13 * std::max(1.0, h_scale)) {
            // Invariant subspace: the exponential is exact on it.
            m_eff = j + 1;
            break;
        }
        beta(j) = b;
        basis.col(j + 1) = w / b;
    }

    // exp(-i dt T / hbar) e1 on the real symmetric tridiagonal projection.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m_eff, m_eff);
    for (int j = 0; j < m_eff; ++j) {
        t(j, j) = alpha(j);
        if (j + 1 < m_eff) {
            t(j, j + 1) = beta(j);
            t(j + 1, j) = beta(j);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    if (es.info() != Eigen::Success)
        throw NumericalAbort("projected eigensolve failed", step_index);
    Eigen::VectorXcd phases(m_eff);
    for (int j = 0; j < m_eff; ++j)
        phases(j) = std::polar(1.0, -dt * es.eigenvalues()(j) / hbar);
    const Eigen::VectorXcd small = es.eigenvectors().cast<Complex>() *
                                   (phases.array() *
                                    es.eigenvectors().row(0).transpose().cast<Complex>().array())
                                       .matrix();
    psi = beta0 * (basis.leftCols(m_eff) * small);

    const double defect = std::abs(psi.norm() - beta0) / beta0;
    if (!(defect <= opt.unitarity_tol)) {
        std::ostringstream msg;
        msg << "propagation step violated unitarity: relative norm defect " << defect
            << " exceeds " << opt.unitarity_tol;
        throw NumericalAbort(msg.str(), step_index);
    }
}

void propagate(const SparseMatrix& h, Eigen::VectorXcd& psi, double dt, long n_steps,
               double hbar, const StepOptions& opt,
               const std::function<void(long, double, const Eigen::VectorXcd&)>& observe) {
    for (long k = 0; k < n_steps; ++k) {
        krylov_step(h, psi, dt, hbar, opt, k);
        if (observe) observe(k, static_cast<double>(k + 1) * dt, psi);
    }
}

void propagate(const std::function<SparseMatrix(double)>& h_of_t, Eigen::VectorXcd& psi,
               double t0, double dt, long n_steps, double hbar, const StepOptions& opt,
               const std::function<void(long, double, const Eigen::VectorXcd&)>& observe) {
    for (long k = 0; k < n_steps; ++k) {
        // Midpoint re-evaluation keeps the stepping second-order accurate in
        // the generator's time dependence.
        const double t_mid = t0 + (static_cast<double>(k) + 0.5) * dt;
        const SparseMatrix h = h_of_t(t_mid);
        krylov_step(h, psi, dt, hbar, opt, k);
        if (observe) observe(k, t0 + static_cast<double>(k + 1) * dt, psi);
    }
}

}  // namespace relqm::hilbert
