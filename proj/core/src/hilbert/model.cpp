#include "relqm/hilbert/model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "relqm/errors.hpp"

namespace relqm::hilbert {

namespace {

// Annihilation operator on a d-level ladder: a|n> = sqrt(n)|n-1>.
Eigen::MatrixXcd ladder_down(int d) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Sparse Kronecker product of dense sector matrices (cm-major layout:
// full index = cm_index * d_int + int_index).
SparseMatrix kron_sparse(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j) == Complex(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) {
                    if (b(k, l) == Complex(0.0, 0.0)) continue;
                    trip.emplace_back(i * static_cast<int>(b.rows()) + k,
                                      j * static_cast<int>(b.cols()) + l, a(i, j) * b(k, l));
                }
        }
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

// Frobenius norm of a sparse matrix restricted to bulk rows and columns.
double bulk_frobenius(const SparseMatrix& m, int b_cm, int b_int, int d_int) {
    auto in_bulk = [&](int idx) { return (idx / d_int) < b_cm && (idx % d_int) < b_int; };
    double acc = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            if (in_bulk(static_cast<int>(it.row())) && in_bulk(static_cast<int>(it.col())))
                acc += std::norm(it.value());
    return std::sqrt(acc);
}

}  // namespace

int bulk_levels(int d) { return static_cast<int>(std::ceil(0.8 * d)); }

HilbertModel build_model(const opexpr::ScenarioConfig& cfg) {
    HilbertModel m;
    m.sys = generators::make_cm_system(1);
    m.d_cm = cfg.d_cm;
    m.d_int = cfg.d_int;
    m.mass = cfg.mass_d();
    m.g = cfg.g_d();
    m.c = cfg.c_d();
    m.alpha = cfg.alpha.get_d();
    m.beta = cfg.beta.get_d();
    m.omega_cm = cfg.omega_cm_d();
    m.omega_int = cfg.omega_int_d();
    m.lambda = cfg.lambda_d();
    m.delta_x = cfg.delta_x_d();

    // Center-of-mass sector: position and momentum from the ladder of the
    // basis reference frequency.
    const Eigen::MatrixXcd a = ladder_down(m.d_cm);
    const Eigen::MatrixXcd ad = a.adjoint();
    const double x0 = std::sqrt(m.hbar / (2.0 * m.mass * m.omega_cm));
    const double p0 = std::sqrt(m.hbar * m.mass * m.omega_cm / 2.0);
    m.x_cm = x0 * (a + ad);
    m.p_cm = Complex(0.0, 1.0) * p0 * (ad - a);

    // Internal sector: number basis, harmonic level spacing plus an
    // optional quadratic anharmonic shift.
    m.hrel0 = Eigen::MatrixXcd::Zero(m.d_int, m.d_int);
    m.hrel1 = Eigen::MatrixXcd::Zero(m.d_int, m.d_int);
    for (int n = 0; n < m.d_int; ++n) {
        const double level = n + 0.5;
        m.hrel0(n, n) = m.hbar * m.omega_int * level;
        m.hrel1(n, n) = -m.lambda * level * level;
    }

    const auto& table = *m.sys.table;
    m.scalar_values.assign(table.scalar_count(), 0.0);
    m.scalar_values.at(static_cast<std::size_t>(m.sys.hbar)) = m.hbar;
    m.scalar_values.at(static_cast<std::size_t>(m.sys.M)) = m.mass;
    m.scalar_values.at(static_cast<std::size_t>(m.sys.g)) = m.g;
    m.scalar_values.at(static_cast<std::size_t>(m.sys.alpha)) = m.alpha;
    m.scalar_values.at(static_cast<std::size_t>(m.sys.beta)) = m.beta;

    // --- validation ---------------------------------------------------
    const opalg::OpId bound_ids[4] = {m.sys.X[0], m.sys.P[0], m.sys.Hrel0, m.sys.Hrel1};
    const Eigen::MatrixXcd i_cm = Eigen::MatrixXcd::Identity(m.d_cm, m.d_cm);
    const Eigen::MatrixXcd i_int = Eigen::MatrixXcd::Identity(m.d_int, m.d_int);
    auto full_matrix = [&](opalg::OpId id) -> SparseMatrix {
        if (id == m.sys.X[0]) return kron_sparse(m.x_cm, i_int);
        if (id == m.sys.P[0]) return kron_sparse(m.p_cm, i_int);
        if (id == m.sys.Hrel0) return kron_sparse(i_cm, m.hrel0);
        return kron_sparse(i_cm, m.hrel1);
    };

    // Hermiticity of every bound operator.
    for (opalg::OpId id : bound_ids) {
        const SparseMatrix full = full_matrix(id);
        const double scale = std::max(1.0, full.norm());
        const double defect = (full - SparseMatrix(full.adjoint())).norm() / scale;
        m.checks.hermiticity_defect = std::max(m.checks.hermiticity_defect, defect);
        if (defect > 1e-12) {
            std::ostringstream msg;
            msg << "bound operator " << table.operator_name(id)
                << " is not Hermitian: relative defect " << defect << " exceeds 1e-12";
            throw BindingError(msg.str());
        }
    }

    // Declared commutation rules on the bulk projector.
    const int b_cm = bulk_levels(m.d_cm);
    const int b_int = bulk_levels(m.d_int);
    m.checks.bulk_levels_cm = b_cm;
    m.checks.bulk_levels_int = b_int;
    for (int ia = 0; ia < 4; ++ia) {
        for (int ib = ia + 1; ib < 4; ++ib) {
            const opalg::OpId lo = bound_ids[ia];
            const opalg::OpId hi = bound_ids[ib];
            const auto& rule = table.rule(lo, hi);

            const SparseMatrix ma = full_matrix(lo);
            const SparseMatrix mb = full_matrix(hi);
            const SparseMatrix prod_ab = (ma * mb).pruned();
            const SparseMatrix prod_ba = (mb * ma).pruned();
            SparseMatrix comm = prod_ab - prod_ba;

            std::ostringstream label;
            label << "[" << table.operator_name(lo) << ", " << table.operator_name(hi) << "] = ";
            double scale = 1.0;
            if (rule.kind == opalg::PairRule::Kind::scalar) {
                const Complex target = rule.scalar.eval(m.scalar_values);
                SparseMatrix ident(m.dim(), m.dim());
                ident.setIdentity();
                comm = comm - SparseMatrix(target * ident);
                label << "(" << target.real() << (target.imag() < 0 ? " - " : " + ")
                      << std::abs(target.imag()) << "i) 1";
                // Relative to the scalar target on the bulk block.
                scale = std::abs(target) *
                        std::sqrt(static_cast<double>(b_cm) * static_cast<double>(b_int));
            } else {
                label << "0";
                scale = std::max({bulk_frobenius(prod_ab, b_cm, b_int, m.d_int),
                                  bulk_frobenius(prod_ba, b_cm, b_int, m.d_int), 1.0});
            }
            const double residual = bulk_frobenius(comm, b_cm, b_int, m.d_int) / scale;
            m.checks.bulk.push_back({label.str(), residual});
            if (residual > 1e-8) {
                std::ostringstream msg;
                msg << "bulk commutator validation failed for rule " << label.str()
                    << ": relative residual " << residual << " exceeds 1e-8 on the lowest "
                    << b_cm << " of " << m.d_cm << " center-of-mass levels (x " << b_int
                    << " of " << m.d_int
                    << " internal levels); the basis boundary reaches into the bulk -- "
                       "enlarge the sector";
                throw BindingError(msg.str());
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.p_cm);
    if (es.info() != Eigen::Success)
        throw BindingError("momentum eigensolve failed during model build");
    m.p_evec = es.eigenvectors();
    m.p_eval = es.eigenvalues();

    return m;
}

}  // namespace relqm::hilbert
