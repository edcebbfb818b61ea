#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "relqm/generators/tables.hpp"
#include "relqm/hilbert/evaluate.hpp"
#include "relqm/hilbert/krylov.hpp"
#include "relqm/hilbert/model.hpp"
#include "relqm/opalg/series.hpp"

namespace relqm::ehrenfest {

// Instantaneous acceleration operator -(1/hbar^2) [[X1, H], H], truncated at
// the first correction order. H must be truncated at that order already.
// Negative-order scalar terms (rest energy) commute with everything and are
// stripped exactly before commutating, so they cannot poison the validity
// bookkeeping of the products; a negative-order term that is not a multiple
// of the identity is an error.
opalg::OperatorSeries symbolic_acceleration(const generators::CmSystem& sys,
                                            const opalg::OperatorSeries& h);

// Central second differences of a uniformly sampled series: result[i] =
// (x[i] - 2 x[i+1] + x[i+2]) / dt^2, aligned with the interior samples.
// Requires dt > 0 and at least three samples.
std::vector<double> numeric_acceleration(const std::vector<double>& x, double dt);

// Coefficient u of the first-order support term eps * u * g * X1 that nulls
// the Ehrenfest acceleration for the supported accelerated-frame Hamiltonian:
// u = -(<Hrel0> + (<P^2> - 2 <Px^2>) / (2M)), evaluated on `state`. With a
// single center-of-mass axis <P^2> = <Px^2>, so u = -<Hrel0> + <Px^2>/(2M).
double tuned_support_coefficient(const Eigen::VectorXcd& state, const hilbert::HilbertModel& m);

struct EhrenfestReport {
    std::string scenario;
    std::vector<double> times;     // interior sample times
    std::vector<double> symbolic;  // expectation of the acceleration operator
    std::vector<double> numeric;   // central-difference acceleration of <X>(t)
    std::vector<double> residual;  // numeric - symbolic
    double max_residual = 0.0;
    double base_tolerance = 0.0;   // flat part of the budget
    double dt_allowance = 0.0;     // finite-difference part: dt^2 * accel scale
    bool pass = false;
};

// Compare the finite-difference acceleration of <X>(t) against the
// expectation value of the evaluated acceleration operator along a uniformly
// sampled trajectory. `extra_accel`, when nonempty, adds a per-sample scalar
// to the symbolic prediction (the contribution of a time-dependent support
// term, which the static operator cannot carry); it must match the sample
// count. Pass iff max |residual| <= tol + dt^2 * max(1, max |symbolic|).
EhrenfestReport residual_report(const std::string& scenario,
                                const hilbert::SparseOperator& accel_op,
                                const hilbert::HilbertModel& m,
                                const std::vector<Eigen::VectorXcd>& states, double dt,
                                double t0 = 0.0, const std::vector<double>& extra_accel = {},
                                double tol = 1e-5);

// Same comparison on precomputed series: x[i] and symbolic[i] sampled at
// t0 + i dt. This is the core the state-based overload delegates to; callers
// tracking an ensemble feed weighted-mean trajectories here directly.
EhrenfestReport residual_series_report(const std::string& scenario, const std::vector<double>& x,
                                       const std::vector<double>& symbolic, double dt,
                                       double t0 = 0.0, double tol = 1e-5);

struct TunedRunResult {
    std::vector<double> times;              // n_steps + 1 samples, t0 = 0
    std::vector<double> x;                  // <X> at each sample
    std::vector<Eigen::VectorXcd> states;   // state at each sample
    std::vector<double> u_mid;              // coefficient applied during step k
    std::vector<double> u_sample;           // coefficient evaluated at sample k
};

// Self-consistent classical support: each step evolves under
// h_base + u * coupling, where u is the tuned coefficient evaluated at the
// step midpoint via a half-step predictor, and `coupling` is the bound matrix
// of eps * g * X1. The control loop is an explicit per-step intervention, not
// a nonlinear term in the generator.
TunedRunResult run_tuned_support(const hilbert::HilbertModel& m,
                                 const hilbert::SparseMatrix& h_base,
                                 const hilbert::SparseMatrix& coupling, Eigen::VectorXcd psi,
                                 double dt, long n_steps, const hilbert::StepOptions& opt);

}  // namespace relqm::ehrenfest
