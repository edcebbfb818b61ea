#pragma once

#include "relqm/hilbert/states.hpp"

namespace relqm::hilbert {

// Interferometric visibility of a branch ensemble,
//   V = | sum_n w_n <up_n| (D ⊗ 1) |down_n> |,
// where D displaces the down branches by the ensemble-mean center
// separation (computed from <X> of each side) so that the static packet
// offset is factored out: identically prepared branches give V = 1 at
// preparation, and V decays only through relative phases and genuine shape
// or position mismatch beyond the mean.
double visibility(const BranchEnsemble& e, const HilbertModel& m);

// Branch overlap sum without recentering.
Complex raw_branch_overlap(const BranchEnsemble& e);

// Visibility of a weighted ensemble whose member n has accumulated a
// relative branch phase n*theta and unchanged branch shapes:
//   V(theta) = | sum_n w_n e^{-i n theta} |.
// This is the pinned-packet limit of the interferometer, where only the
// internal-level-dependent phase survives.
double dephased_visibility(const std::vector<double>& weights, double theta);

}  // namespace relqm::hilbert
