#pragma once

#include <Eigen/Dense>
#include <vector>

#include "relqm/errors.hpp"

namespace relqm::charts {

// Uniformly accelerated chart against the instantaneous inertial frame that
// matches it on the slice t' = tbar. Valid on the right wedge 1 + gx/c^2 > 0;
// g = 0 degenerates to a pure time translation by tbar.
struct ChartParams {
    double g = 1.0;
    double c = 1.0;
    double tbar = 0.0;
};

struct TX {
    double t = 0.0;
    double x = 0.0;
};

// Transverse coordinates ride along unchanged.
struct Event {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// (t', x') -> (T, X):
//   c T = (x' + c^2/g) sinh(g(t' - tbar)/c)
//   X   = (x' + c^2/g) cosh(g(t' - tbar)/c) - c^2/g
// Throws WedgeError when 1 + g x'/c^2 <= 0.
TX rindler_to_inertial(double tp, double xp, const ChartParams& p);

// (T, X) -> (t', x'):
//   c t' = (c^2/g) atanh(cT / (X + c^2/g)) + c tbar
//   x'   = sqrt((X + c^2/g)^2 - c^2 T^2) - c^2/g
// Throws WedgeError ("outside Rindler wedge") when |cT| >= X + c^2/g.
TX inertial_to_rindler(double T, double X, const ChartParams& p);

Event rindler_to_inertial(const Event& e, const ChartParams& p);
Event inertial_to_rindler(const Event& e, const ChartParams& p);

// d(T,X)/d(t',x') on the matching slice t' = tbar: diag(1 + g x'/c^2, 1).
Eigen::Matrix2d jacobian_at_slice(double xp, const ChartParams& p);

// Central-difference Jacobian of rindler_to_inertial at (tp, xp).
Eigen::Matrix2d fd_jacobian(double tp, double xp, const ChartParams& p, double step = 1e-5);

// The redshift factor 1 + gX/c^2 scaling the static observer's time flow.
double killing_time_component(double X, const ChartParams& p);

// Pulls the flat metric back through the map with central-difference
// Jacobians in the scaled coordinates (ct', x') and compares against
// diag(-(1 + g x'/c^2)^2, 1) at every grid point; returns the largest
// absolute entry deviation.
double metric_pullback_residual(const std::vector<double>& tps, const std::vector<double>& xps,
                                const ChartParams& p, double step = 1e-5);

}  // namespace relqm::charts
