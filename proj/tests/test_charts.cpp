#include <cmath>
#include <random>

#include "doctest.h"
#include "relqm/charts/rindler.hpp"

using namespace relqm;
using namespace relqm::charts;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("matching slice maps to the inertial origin of time") {
    ChartParams p{1.0, 10.0, 0.25};
    for (double xp : {-50.0, -1.0, 0.0, 0.5, 30.0}) {
        TX tx = rindler_to_inertial(p.tbar, xp, p);
        CHECK(tx.t == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(tx.x == doctest::Approx(xp).epsilon(1e-15));
    }
}

TEST_CASE("round trips are identities across the wedge") {
    ChartParams p{2.0, 3.0, -0.7};
    std::mt19937 rng(417);
    double floor = -p.c * p.c / p.g;  // wedge edge at x' = -4.5
    std::uniform_real_distribution<double> xdist(floor * 0.95, 40.0);
    std::uniform_real_distribution<double> tdist(-3.0, 3.0);
    for (int k = 0; k < 1000; ++k) {
        double tp = p.tbar + tdist(rng), xp = xdist(rng);
        TX fwd = rindler_to_inertial(tp, xp, p);
        TX back = inertial_to_rindler(fwd.t, fwd.x, p);
        CHECK(rel_err(back.t, tp) <= 1e-12);
        CHECK(rel_err(back.x, xp) <= 1e-12);
    }
    // and in the other composition order, from points inside the horizon
    for (int k = 0; k < 1000; ++k) {
        double X = xdist(rng);
        double bound = (X - floor) / p.c;
        std::uniform_real_distribution<double> Tdist(-0.9 * bound, 0.9 * bound);
        double T = Tdist(rng);
        TX back = inertial_to_rindler(T, X, p);
        TX fwd = rindler_to_inertial(back.t, back.x, p);
        CHECK(rel_err(fwd.t, T) <= 1e-12);
        CHECK(rel_err(fwd.x, X) <= 1e-12);
    }
}

TEST_CASE("vanishing acceleration degenerates to a time translation") {
    ChartParams p{0.0, 10.0, 1.5};
    TX tx = rindler_to_inertial(2.5, 7.0, p);
    CHECK(tx.t == doctest::Approx(1.0));
    CHECK(tx.x == doctest::Approx(7.0));
    TX back = inertial_to_rindler(tx.t, tx.x, p);
    CHECK(back.t == doctest::Approx(2.5));
    CHECK(back.x == doctest::Approx(7.0));
    // small accelerations approach the same limit
    ChartParams small{1e-8, 10.0, 1.5};
    TX near = rindler_to_inertial(2.5, 7.0, small);
    CHECK(std::abs(near.x - 7.0) <= 1e-6);
    CHECK(std::abs(near.t - 1.0) <= 1e-6);
}

TEST_CASE("slice Jacobian has the closed diagonal form") {
    ChartParams p{1.0, 10.0, 0.0};
    Eigen::Matrix2d j = jacobian_at_slice(2.0, p);
    CHECK(j(0, 0) == doctest::Approx(1.02).epsilon(1e-15));
    CHECK(j(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(j(0, 1) == 0.0);
    CHECK(j(1, 0) == 0.0);
    Eigen::Matrix2d at_zero = jacobian_at_slice(0.0, p);
    CHECK(at_zero.isApprox(Eigen::Matrix2d::Identity(), 1e-15));
    CHECK(j.determinant() == doctest::Approx(1.02).epsilon(1e-12));
}

TEST_CASE("slice Jacobian matches central differences at random points") {
    ChartParams p{1.7, 4.0, 0.3};
    std::mt19937 rng(91);
    std::uniform_real_distribution<double> xdist(-8.0, 25.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        double xp = xdist(rng);
        Eigen::Matrix2d closed = jacobian_at_slice(xp, p);
        Eigen::Matrix2d fd = fd_jacobian(p.tbar, xp, p);
        worst = std::max(worst, (closed - fd).cwiseAbs().maxCoeff() / closed.norm());
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("static time flow scales with height") {
    ChartParams p{1.0, 10.0, 0.0};
    CHECK(killing_time_component(0.0, p) == 1.0);
    CHECK(killing_time_component(2.0, p) == doctest::Approx(1.02).epsilon(1e-15));
    ChartParams flat{0.0, 10.0, 0.0};
    CHECK(killing_time_component(123.0, flat) == 1.0);
}

TEST_CASE("flat metric pulls back to the static form") {
    ChartParams p{1.0, 10.0, 0.0};
    std::vector<double> tps, xps;
    for (int k = 0; k < 50; ++k) {
        tps.push_back(-2.0 + 4.0 * k / 49.0);
        xps.push_back(-60.0 + 120.0 * k / 49.0);
    }
    CHECK(metric_pullback_residual(tps, xps, p) <= 1e-8);

    // differencing a linear map leaves only rounding noise, ~ulp(c t')/step
    ChartParams flat{0.0, 10.0, 0.0};
    CHECK(metric_pullback_residual(tps, xps, flat) <= 2e-9);

    // on the central worldline the time-time entry is analytically -1
    CHECK(metric_pullback_residual({0.4}, {0.0}, p) <= 1e-8);
}

TEST_CASE("leaving the wedge raises the domain error") {
    ChartParams p{1.0, 10.0, 0.0};  // wedge edge at x' = -100
    CHECK_THROWS_AS(rindler_to_inertial(0.0, -100.0, p), WedgeError);
    CHECK_THROWS_AS(rindler_to_inertial(0.0, -150.0, p), WedgeError);
    CHECK_THROWS_WITH_AS(inertial_to_rindler(10.1, 1.0, p), "outside Rindler wedge", WedgeError);
    CHECK_THROWS_AS(inertial_to_rindler(-10.1, 1.0, p), WedgeError);
    CHECK_NOTHROW(inertial_to_rindler(10.0, 1.0, p));
    ChartParams bad{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(rindler_to_inertial(0.0, 0.0, bad), BindingError);
}

TEST_CASE("re-slicing composes with the matching time translation") {
    ChartParams p{1.3, 5.0, 0.0};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> xdist(-15.0, 15.0);
    std::uniform_real_distribution<double> tdist(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        double tp = tdist(rng), xp = xdist(rng), shift = tdist(rng);
        ChartParams shifted{p.g, p.c, p.tbar + shift};
        TX a = rindler_to_inertial(tp, xp, p);
        TX b = rindler_to_inertial(tp + shift, xp, shifted);
        CHECK(rel_err(b.t, a.t) <= 1e-12);
        CHECK(rel_err(b.x, a.x) <= 1e-12);
    }
}

TEST_CASE("transverse coordinates ride along") {
    ChartParams p{1.0, 10.0, 0.0};
    Event e{0.5, 2.0, 3.5, -4.25};
    Event f = rindler_to_inertial(e, p);
    CHECK(f.y == 3.5);
    CHECK(f.z == -4.25);
    Event back = inertial_to_rindler(f, p);
    CHECK(back.y == 3.5);
    CHECK(back.z == -4.25);
    CHECK(back.t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(back.x == doctest::Approx(2.0).epsilon(1e-12));
}
