#pragma once

#include "relqm/hilbert/model.hpp"
#include "relqm/opalg/series.hpp"

namespace relqm::hilbert {

// Evaluates a symbolic series to a matrix on the model's product space.
// Each monomial is expanded literally — operator factors are multiplied in
// stored order — with the expansion parameter bound to 1/c^2 and scalar
// symbols bound to the model's values. Series must live on the model's
// symbol table and may only mention bound operator symbols; anything else
// raises BindingError naming the offender.
SparseOperator evaluate(const opalg::OperatorSeries& s, const HilbertModel& m);

// (A + A^dagger) / 2. A self-adjoint series element evaluates to a matrix
// whose Hermiticity can break at the top basis level, because the literal
// expansion of one stored word order differs there from its adjoint's. The
// defect is corner-local but acts as an exponential amplifier under long
// propagation, so evolution should use the Hermitian part; expectation
// values of the literal and symmetrized matrices agree away from the corner.
SparseMatrix hermitian_part(const SparseMatrix& a);

// <psi| A |psi> for a full-space operator.
Complex expectation(const SparseOperator& a, const Eigen::VectorXcd& psi);

// <psi| (A ⊗ 1) |psi> for a center-of-mass sector matrix.
Complex cm_expectation(const Eigen::MatrixXcd& a_cm, const Eigen::VectorXcd& psi, int d_cm,
                       int d_int);

// <psi| (1 ⊗ A) |psi> for an internal sector matrix.
Complex int_expectation(const Eigen::MatrixXcd& a_int, const Eigen::VectorXcd& psi, int d_cm,
                        int d_int);

}  // namespace relqm::hilbert
