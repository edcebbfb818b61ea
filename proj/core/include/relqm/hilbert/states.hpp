#pragma once

#include <vector>

#include "relqm/hilbert/model.hpp"

namespace relqm::hilbert {

// Smallest n_max whose discarded geometric tail stays below tail_bound.
int thermal_n_max(double nbar, double tail_bound = 1e-10);

// Thermal occupation weights p_n ∝ q^n with q = nbar/(nbar+1), truncated at
// n_max (inclusive) and renormalized. The discarded tail must stay below
// tail_bound; otherwise a BindingError reports the minimal adequate n_max.
std::vector<double> thermal_weights(double nbar, int n_max, double tail_bound = 1e-10);

// Ladder-basis amplitudes (length m.d_cm, real phase convention) of the
// normalized packet psi(x) ∝ exp(-(x - center)^2 / (2 width^2)) in the
// model's center-of-mass basis. width <= 0 requests the ground-state width.
// The lowest d_cm levels must hold at least 1 - 1e-6 of the packet, judged
// against a re-expansion over 4 d_cm levels; failure raises BindingError.
Eigen::VectorXcd gaussian_packet(const HilbertModel& m, double center, double width = 0.0);

// One statistical member: a pair of interferometer branches sharing an
// internal level, each a full product-space vector.
struct BranchPair {
    double weight = 0.0;
    Eigen::VectorXcd up, down;
};

using BranchEnsemble = std::vector<BranchPair>;

// Thermal branch ensemble: member n combines internal level |n> with
// identical center-of-mass packets displaced to center ± delta_x/2 (up
// branch on the + side), of the given width (<= 0: ground width). Weights
// are thermal_weights(nbar, n_max, tail_bound); n_max must satisfy
// n_max < d_int.
BranchEnsemble make_branch_ensemble(const HilbertModel& m, double nbar, int n_max,
                                    double tail_bound = 1e-10, double center = 0.0,
                                    double width = 0.0);

// Checks ensemble invariants: weights nonnegative and summing to 1 within
// 1e-12, every branch vector normalized within 1e-9. Throws BindingError.
void check_ensemble(const BranchEnsemble& e);

// Reduced center-of-mass density matrix of the ensemble, each member taken
// as the normalized equal-amplitude superposition of its two branches.
// The result has unit trace (within rounding) and is positive
// semidefinite up to rounding.
Eigen::MatrixXcd partial_trace_cm(const BranchEnsemble& e, int d_cm, int d_int);

}  // namespace relqm::hilbert
