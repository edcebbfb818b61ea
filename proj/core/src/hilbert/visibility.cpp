#include "relqm/hilbert/visibility.hpp"

#include <cmath>

#include "relqm/errors.hpp"
#include "relqm/hilbert/evaluate.hpp"

namespace relqm::hilbert {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Complex raw_branch_overlap(const BranchEnsemble& e) {
    Complex acc{0.0, 0.0};
    for (const auto& member : e) acc += member.weight * member.up.dot(member.down);
    return acc;
}

double visibility(const BranchEnsemble& e, const HilbertModel& m) {
    if (e.empty()) throw BindingError("cannot compute visibility of an empty ensemble");

    // Ensemble-mean branch centers.
    double mean_up = 0.0;
    double mean_down = 0.0;
    double total = 0.0;
    for (const auto& member : e) {
        mean_up += member.weight * cm_expectation(m.x_cm, member.up, m.d_cm, m.d_int).real();
        mean_down += member.weight * cm_expectation(m.x_cm, member.down, m.d_cm, m.d_int).real();
        total += member.weight;
    }
    if (total <= 0.0) throw BindingError("ensemble carries no weight");
    const double shift = (mean_up - mean_down) / total;

    // Displacement exp(-i shift P / hbar) moves the down branches onto the
    // mean up-branch center, factoring the static packet offset out of the
    // overlap. Uses the momentum eigenbasis cached on the model.
    if (m.p_evec.rows() != m.d_cm)
        throw BindingError("model is missing its momentum eigenbasis cache");
    Eigen::VectorXcd phases(m.d_cm);
    for (int j = 0; j < m.d_cm; ++j)
        phases(j) = std::polar(1.0, -shift * m.p_eval(j) / m.hbar);
    const Eigen::MatrixXcd displace =
        m.p_evec * phases.asDiagonal() * m.p_evec.adjoint();

    Complex acc{0.0, 0.0};
    for (const auto& member : e) {
        Eigen::Map<const RowMajorMatrix> up(member.up.data(), m.d_cm, m.d_int);
        Eigen::Map<const RowMajorMatrix> down(member.down.data(), m.d_cm, m.d_int);
        acc += member.weight * (up.adjoint() * (displace * down)).trace();
    }
    return std::abs(acc);
}

double dephased_visibility(const std::vector<double>& weights, double theta) {
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < weights.size(); ++n)
        acc += weights[n] * std::polar(1.0, -static_cast<double>(n) * theta);
    return std::abs(acc);
}

}  // namespace relqm::hilbert
