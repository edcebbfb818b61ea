#pragma once

#include <functional>

#include "relqm/hilbert/model.hpp"

namespace relqm::hilbert {

struct StepOptions {
    int krylov_dim = 24;
    double unitarity_tol = 1e-9;
};

// One short-time step psi <- exp(-i dt H / hbar) psi via a Lanczos
// approximation in a Krylov subspace of dimension at most opt.krylov_dim
// (smaller on invariant-subspace breakdown, which is exact). H must be
// Hermitian. Raises NumericalAbort carrying step_index when the post-step
// norm deviates from the pre-step norm by more than opt.unitarity_tol
// relative; the norm is never silently rescaled.
void krylov_step(const SparseMatrix& h, Eigen::VectorXcd& psi, double dt, double hbar,
                 const StepOptions& opt, long step_index = 0);

// Fixed-step propagation under a static Hamiltonian, starting at step index
// 0; `observe(step, t, psi)` runs after every step with t = (step+1) dt.
void propagate(const SparseMatrix& h, Eigen::VectorXcd& psi, double dt, long n_steps,
               double hbar, const StepOptions& opt,
               const std::function<void(long, double, const Eigen::VectorXcd&)>& observe = {});

// Fixed-step propagation under a time-dependent Hamiltonian; each step uses
// the generator re-evaluated at the step midpoint t + dt/2.
void propagate(const std::function<SparseMatrix(double)>& h_of_t, Eigen::VectorXcd& psi,
               double t0, double dt, long n_steps, double hbar, const StepOptions& opt,
               const std::function<void(long, double, const Eigen::VectorXcd&)>& observe = {});

}  // namespace relqm::hilbert
