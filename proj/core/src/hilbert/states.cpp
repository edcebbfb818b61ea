#include "relqm/hilbert/states.hpp"

#include <cmath>
#include <sstream>

#include "relqm/errors.hpp"

namespace relqm::hilbert {

int thermal_n_max(double nbar, double tail_bound) {
    if (nbar <= 0.0) return 0;
    if (tail_bound <= 0.0) throw BindingError("thermal tail bound must be positive");
    if (tail_bound >= 1.0) return 0;
    const double q = nbar / (nbar + 1.0);
    // Discarding levels above N leaves a relative tail q^{N+1}.
    const double n = std::ceil(std::log(tail_bound) / std::log(q));
    return std::max(0, static_cast<int>(n));
}

std::vector<double> thermal_weights(double nbar, int n_max, double tail_bound) {
    if (nbar < 0.0) throw BindingError("thermal occupation nbar must be nonnegative");
    if (n_max < 0) throw BindingError("thermal truncation level n_max must be nonnegative");
    const double q = nbar > 0.0 ? nbar / (nbar + 1.0) : 0.0;
    const double tail = q > 0.0 ? std::pow(q, n_max + 1) : 0.0;
    if (tail >= tail_bound) {
        std::ostringstream msg;
        msg << "thermal truncation at n_max = " << n_max << " discards a tail of " << tail
            << " >= bound " << tail_bound << " for nbar = " << nbar << "; need n_max >= "
            << thermal_n_max(nbar, tail_bound);
        throw BindingError(msg.str());
    }
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
    double cur = 1.0;
    double sum = 0.0;
    for (auto& v : w) {
        v = cur;
        sum += cur;
        cur *= q;
    }
    for (auto& v : w) v /= sum;
    return w;
}

Eigen::VectorXcd gaussian_packet(const HilbertModel& m, double center, double width) {
    const double x0 = m.ground_width();
    const double w = width > 0.0 ? width : x0;
    const int d = m.d_cm;
    const int n_ext = 4 * d;

    // Ladder amplitudes of psi(x) = (pi w^2)^{-1/4} exp(-(x-center)^2/(2 w^2))
    // via the three-term recurrence that the Gaussian's first-order ODE
    // induces on <n|psi>, seeded with the exact ground-state overlap.
    const double r = (x0 * x0) / (w * w);
    const double s = std::sqrt(2.0) * x0 * center / (w * w);
    std::vector<double> amp(static_cast<std::size_t>(n_ext), 0.0);
    amp[0] = std::sqrt(2.0 * x0 * w / (x0 * x0 + w * w)) *
             std::exp(-center * center / (2.0 * (x0 * x0 + w * w)));
    if (n_ext > 1) amp[1] = s * amp[0] / (1.0 + r);
    for (int n = 1; n + 1 < n_ext; ++n)
        amp[static_cast<std::size_t>(n) + 1] =
            (s * amp[static_cast<std::size_t>(n)] -
             (r - 1.0) * std::sqrt(static_cast<double>(n)) * amp[static_cast<std::size_t>(n) - 1]) /
            ((1.0 + r) * std::sqrt(static_cast<double>(n) + 1.0));

    double kept = 0.0;
    for (int n = 0; n < d; ++n) kept += amp[static_cast<std::size_t>(n)] * amp[static_cast<std::size_t>(n)];
    // The amplitudes carry absolute normalization, so `kept` measures the
    // packet fraction the basis can hold against the exact unit norm.
    if (kept < 1.0 - 1e-6) {
        std::ostringstream msg;
        msg << "Gaussian packet support exceeds the center-of-mass basis: the lowest " << d
            << " levels hold " << kept << " < 1 - 1e-6 of the packet (center = " << center
            << ", width = " << w << ", ground width = " << x0
            << "); enlarge D_cm or reduce the displacement/squeezing";
        throw BindingError(msg.str());
    }

    Eigen::VectorXcd out(d);
    const double renorm = 1.0 / std::sqrt(kept);
    for (int n = 0; n < d; ++n) out(n) = amp[static_cast<std::size_t>(n)] * renorm;
    return out;
}

BranchEnsemble make_branch_ensemble(const HilbertModel& m, double nbar, int n_max,
                                    double tail_bound, double center, double width) {
    if (n_max >= m.d_int) {
        std::ostringstream msg;
        msg << "ensemble needs internal levels up to n_max = " << n_max
            << " but the internal sector has only D_int = " << m.d_int << " levels";
        throw BindingError(msg.str());
    }
    const std::vector<double> w = thermal_weights(nbar, n_max, tail_bound);
    const Eigen::VectorXcd up_cm = gaussian_packet(m, center + m.delta_x / 2.0, width);
    const Eigen::VectorXcd down_cm = gaussian_packet(m, center - m.delta_x / 2.0, width);

    BranchEnsemble e;
    e.reserve(w.size());
    for (int n = 0; n <= n_max; ++n) {
        BranchPair member;
        member.weight = w[static_cast<std::size_t>(n)];
        member.up = Eigen::VectorXcd::Zero(m.dim());
        member.down = Eigen::VectorXcd::Zero(m.dim());
        for (int i = 0; i < m.d_cm; ++i) {
            member.up(i * m.d_int + n) = up_cm(i);
            member.down(i * m.d_int + n) = down_cm(i);
        }
        e.push_back(std::move(member));
    }
    return e;
}

void check_ensemble(const BranchEnsemble& e) {
    if (e.empty()) throw BindingError("branch ensemble is empty");
    double sum = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const auto& member = e[k];
        if (member.weight < 0.0) {
            std::ostringstream msg;
            msg << "ensemble member " << k << " has negative weight " << member.weight;
            throw BindingError(msg.str());
        }
        sum += member.weight;
        if (member.up.size() != member.down.size())
            throw BindingError("ensemble member branch dimensions disagree");
        for (const auto* v : {&member.up, &member.down}) {
            const double norm = v->norm();
            if (std::abs(norm - 1.0) > 1e-9) {
                std::ostringstream msg;
                msg << "ensemble member " << k << " has a branch of norm " << norm
                    << " (must be 1 within 1e-9)";
                throw BindingError(msg.str());
            }
        }
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "ensemble weights sum to " << sum << " (must be 1 within 1e-12)";
        throw BindingError(msg.str());
    }
}

Eigen::MatrixXcd partial_trace_cm(const BranchEnsemble& e, int d_cm, int d_int) {
    using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d_cm, d_cm);
    for (const auto& member : e) {
        if (member.up.size() != static_cast<long>(d_cm) * d_int)
            throw BindingError("ensemble member dimension does not match sector dimensions");
        Eigen::VectorXcd combined = member.up + member.down;
        const double norm = combined.norm();
        if (norm == 0.0) throw BindingError("ensemble member branches cancel exactly");
        combined /= norm;
        Eigen::Map<const RowMajorMatrix> mat(combined.data(), d_cm, d_int);
        rho.noalias() += member.weight * (mat * mat.adjoint());
    }
    return rho;
}

}  // namespace relqm::hilbert
