#include "relqm/charts/rindler.hpp"

#include <cmath>

namespace relqm::charts {

namespace {

void check_params(const ChartParams& p) {
    if (!(p.c > 0.0)) throw BindingError("chart requires c > 0");
}

void check_wedge_factor(double factor) {
    if (!(factor > 0.0)) throw WedgeError("outside Rindler wedge");
}

}  // namespace

TX rindler_to_inertial(double tp, double xp, const ChartParams& p) {
    check_params(p);
    if (p.g == 0.0) return {tp - p.tbar, xp};
    double c2g = p.c * p.c / p.g;
    check_wedge_factor(1.0 + p.g * xp / (p.c * p.c));
    double phase = p.g * (tp - p.tbar) / p.c;
    double radius = xp + c2g;
    return {radius * std::sinh(phase) / p.c, radius * std::cosh(phase) - c2g};
}

TX inertial_to_rindler(double T, double X, const ChartParams& p) {
    check_params(p);
    if (p.g == 0.0) return {T + p.tbar, X};
    double c2g = p.c * p.c / p.g;
    double radius = X + c2g;
    double light = p.c * T;
    if (p.g > 0.0) {
        if (!(std::abs(light) < radius)) throw WedgeError("outside Rindler wedge");
    } else {
        if (!(std::abs(light) < -radius)) throw WedgeError("outside Rindler wedge");
    }
    double tp = (c2g / p.c) * std::atanh(light / radius) + p.tbar;
    double xp = std::copysign(std::sqrt(radius * radius - light * light), radius) - c2g;
    return {tp, xp};
}

Event rindler_to_inertial(const Event& e, const ChartParams& p) {
    TX tx = rindler_to_inertial(e.t, e.x, p);
    return {tx.t, tx.x, e.y, e.z};
}

Event inertial_to_rindler(const Event& e, const ChartParams& p) {
    TX tx = inertial_to_rindler(e.t, e.x, p);
    return {tx.t, tx.x, e.y, e.z};
}

Eigen::Matrix2d jacobian_at_slice(double xp, const ChartParams& p) {
    check_params(p);
    double factor = 1.0 + p.g * xp / (p.c * p.c);
    check_wedge_factor(factor);
    Eigen::Matrix2d j;
    j << factor, 0.0, 0.0, 1.0;
    return j;
}

Eigen::Matrix2d fd_jacobian(double tp, double xp, const ChartParams& p, double step) {
    auto at = [&](double t, double x) { return rindler_to_inertial(t, x, p); };
    TX tplus = at(tp + step, xp), tminus = at(tp - step, xp);
    TX xplus = at(tp, xp + step), xminus = at(tp, xp - step);
    Eigen::Matrix2d j;
    j << (tplus.t - tminus.t) / (2.0 * step), (xplus.t - xminus.t) / (2.0 * step),
        (tplus.x - tminus.x) / (2.0 * step), (xplus.x - xminus.x) / (2.0 * step);
    return j;
}

double killing_time_component(double X, const ChartParams& p) {
    check_params(p);
    return 1.0 + p.g * X / (p.c * p.c);
}

double metric_pullback_residual(const std::vector<double>& tps, const std::vector<double>& xps,
                                const ChartParams& p, double step) {
    check_params(p);
    Eigen::Matrix2d eta;
    eta << -1.0, 0.0, 0.0, 1.0;
    // scaled map (u, v) = (c t', x') -> (c T, X); derivatives stay order one
    auto scaled = [&](double u, double v) {
        TX tx = rindler_to_inertial(u / p.c, v, p);
        return std::pair<double, double>(p.c * tx.t, tx.x);
    };
    double worst = 0.0;
    for (double tp : tps) {
        for (double xp : xps) {
            double u = p.c * tp;
            auto [tu_p, xu_p] = scaled(u + step, xp);
            auto [tu_m, xu_m] = scaled(u - step, xp);
            auto [tv_p, xv_p] = scaled(u, xp + step);
            auto [tv_m, xv_m] = scaled(u, xp - step);
            Eigen::Matrix2d j;
            j << (tu_p - tu_m) / (2.0 * step), (tv_p - tv_m) / (2.0 * step),
                (xu_p - xu_m) / (2.0 * step), (xv_p - xv_m) / (2.0 * step);
            Eigen::Matrix2d pulled = j.transpose() * eta * j;
            double factor = killing_time_component(xp, p);
            Eigen::Matrix2d target;
            target << -factor * factor, 0.0, 0.0, 1.0;
            worst = std::max(worst, (pulled - target).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

}  // namespace relqm::charts
