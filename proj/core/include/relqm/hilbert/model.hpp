#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "relqm/generators/tables.hpp"
#include "relqm/opexpr/config.hpp"

namespace relqm::hilbert {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Complex sparse matrix on the product space (center-of-mass sector tensor
// internal sector), tagged with the sector dimensions it was built for.
struct SparseOperator {
    SparseMatrix mat;
    int d_cm = 0;
    int d_int = 0;

    int dim() const { return d_cm * d_int; }
};

// One validated commutation rule: the pair it covers and the relative
// Frobenius residual measured on the bulk projector.
struct RuleCheck {
    std::string rule;
    double residual = 0.0;
};

// Validation results recorded when a model is built.
struct ModelChecks {
    std::vector<RuleCheck> bulk;
    double hermiticity_defect = 0.0;  // worst defect over the bound operators
    int bulk_levels_cm = 0;
    int bulk_levels_int = 0;
};

// Finite-dimensional binding of the one-dimensional collective system:
// the center-of-mass sector is a harmonic ladder basis of reference
// frequency omega_cm (position and momentum built from ladder operators),
// the internal sector is a number basis with
//   Hrel0 = hbar omega_int (n + 1/2),   Hrel1 = -lambda (n + 1/2)^2.
// Scalar symbols (hbar, M, g, alpha, beta) carry numeric values; the
// formal expansion parameter evaluates to 1/c^2.
struct HilbertModel {
    generators::CmSystem sys;  // symbol table the bound series must live on

    int d_cm = 0;
    int d_int = 0;

    double hbar = 1.0;  // simulation units
    double mass = 1.0;
    double g = 0.0;
    double c = 10.0;
    double alpha = 0.5;
    double beta = 0.5;
    double omega_cm = 1e-2;
    double omega_int = 1.0;
    double lambda = 0.0;
    double delta_x = 1.0;

    // Sector matrices for the four bound operator symbols.
    Eigen::MatrixXcd x_cm, p_cm;      // d_cm x d_cm
    Eigen::MatrixXcd hrel0, hrel1;    // d_int x d_int (diagonal)

    // Eigenbasis of p_cm, cached at build time so translation operators
    // (visibility recentering) cost a matrix product instead of an
    // eigensolve per call.
    Eigen::MatrixXcd p_evec;          // d_cm x d_cm, unitary
    Eigen::VectorXd p_eval;           // d_cm

    // Scalar symbol values indexed by ScalarId, for ScalarPoly::eval.
    std::vector<double> scalar_values;

    ModelChecks checks;

    int dim() const { return d_cm * d_int; }
    double epsilon() const { return 1.0 / (c * c); }
    // Ground-state width of the center-of-mass ladder basis.
    double ground_width() const { return std::sqrt(hbar / (mass * omega_cm)); }
};

// Number of low-lying levels forming the bulk projector of a d-level sector.
int bulk_levels(int d);

// Builds and validates a model from a scenario configuration. Every bound
// operator must be Hermitian to 1e-12 and every declared commutation rule
// must hold on the bulk projector (lowest ceil(0.8 d) levels per sector) to
// 1e-8 relative Frobenius; a violation raises BindingError naming the rule
// and its residual. Too small a center-of-mass sector (boundary inside the
// bulk) is the canonical way to trip the check.
HilbertModel build_model(const opexpr::ScenarioConfig& cfg);

}  // namespace relqm::hilbert
