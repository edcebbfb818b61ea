#include "relqm/hilbert/evaluate.hpp"

#include <cmath>
#include <sstream>

#include "relqm/errors.hpp"

namespace relqm::hilbert {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstStateMap = Eigen::Map<const RowMajorMatrix>;

Eigen::MatrixXcd dense_power(const Eigen::MatrixXcd& base, int power) {
    Eigen::MatrixXcd out = base;
    for (int k = 1; k < power; ++k) out = out * base;
    return out;
}

}  // namespace

SparseOperator evaluate(const opalg::OperatorSeries& s, const HilbertModel& m) {
    if (s.table() && s.table() != m.sys.table)
        throw BindingError(
            "series lives on a different symbol table than the model binding");

    const int d = m.dim();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    const double eps = m.epsilon();

    for (const auto& [mono, coeff] : s.terms()) {
        Complex z = coeff.eval(m.scalar_values);
        z *= std::pow(eps, mono.eps);

        // Split the word at the sector boundary. Factors act on disjoint
        // sectors, so the literal stored-order product equals the product
        // of the in-order sector products.
        Eigen::MatrixXcd cm = Eigen::MatrixXcd::Identity(m.d_cm, m.d_cm);
        Eigen::MatrixXcd internal = Eigen::MatrixXcd::Identity(m.d_int, m.d_int);
        for (const auto& [id, power] : mono.factors) {
            if (id == m.sys.X[0])
                cm = cm * dense_power(m.x_cm, power);
            else if (id == m.sys.P[0])
                cm = cm * dense_power(m.p_cm, power);
            else if (id == m.sys.Hrel0)
                internal = internal * dense_power(m.hrel0, power);
            else if (id == m.sys.Hrel1)
                internal = internal * dense_power(m.hrel1, power);
            else {
                std::ostringstream msg;
                msg << "operator symbol " << m.sys.table->operator_name(id)
                    << " has no bound matrix in this model";
                throw BindingError(msg.str());
            }
        }

        for (int i = 0; i < m.d_cm; ++i)
            for (int j = 0; j < m.d_cm; ++j) {
                const Complex cij = z * cm(i, j);
                if (cij == Complex(0.0, 0.0)) continue;
                acc.block(i * m.d_int, j * m.d_int, m.d_int, m.d_int) += cij * internal;
            }
    }

    SparseOperator out;
    out.d_cm = m.d_cm;
    out.d_int = m.d_int;
    out.mat = acc.sparseView();
    return out;
}

SparseMatrix hermitian_part(const SparseMatrix& a) {
    SparseMatrix adj = SparseMatrix(a.adjoint());
    return SparseMatrix(0.5 * (a + adj));
}

Complex expectation(const SparseOperator& a, const Eigen::VectorXcd& psi) {
    if (psi.size() != a.dim())
        throw BindingError("state dimension does not match operator dimension");
    return psi.dot(a.mat * psi);
}

Complex cm_expectation(const Eigen::MatrixXcd& a_cm, const Eigen::VectorXcd& psi, int d_cm,
                       int d_int) {
    if (psi.size() != static_cast<long>(d_cm) * d_int)
        throw BindingError("state dimension does not match sector dimensions");
    ConstStateMap mat(psi.data(), d_cm, d_int);
    return (mat.adjoint() * (a_cm * mat)).trace();
}

Complex int_expectation(const Eigen::MatrixXcd& a_int, const Eigen::VectorXcd& psi, int d_cm,
                        int d_int) {
    if (psi.size() != static_cast<long>(d_cm) * d_int)
        throw BindingError("state dimension does not match sector dimensions");
    ConstStateMap mat(psi.data(), d_cm, d_int);
    return (mat * a_int.transpose() * mat.adjoint()).trace();
}

}  // namespace relqm::hilbert
