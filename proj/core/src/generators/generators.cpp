#include "relqm/generators/generators.hpp"

namespace relqm::generators {

using opalg::GaussianRational;
using opalg::OperatorSeries;
using opalg::Rational;
using opalg::ScalarPoly;

namespace {

const ScalarPoly& half() {
    static const ScalarPoly h(GaussianRational(Rational(1, 2)));
    return h;
}

// sqrt(P^2 eps^-1 + (M eps^-1 + Hrel0 + eps Hrel1)^2) expanded to `order`
OperatorSeries h_cm(const CmSystem& sys, int order) {
    if (order < 0) throw AlgebraError("generator truncation order must be >= 0");
    OperatorSeries hrel = sys.h_internal();
    OperatorSeries arg = sys.p_squared().shifted_eps(-1) + hrel * hrel;
    return series_sqrt(arg, order);
}

}  // namespace

GeneratorSet build_free_generators(const FreeSystem& sys, int order) {
    if (order < 0) throw AlgebraError("generator truncation order must be >= 0");
    GeneratorSet gs;
    gs.form = GeneratorSet::Form::free_particles;
    gs.order = order;
    gs.dims = 3;
    gs.H = OperatorSeries::zero(sys.table);
    std::vector<OperatorSeries> kinetic;
    for (int mu = 0; mu < sys.n; ++mu) {
        OperatorSeries p2 = sys.mom(mu, 0, 2) + sys.mom(mu, 1, 2) + sys.mom(mu, 2, 2);
        OperatorSeries arg =
            p2.shifted_eps(-1) +
            OperatorSeries::scalar(sys.table, ScalarPoly::symbol(sys.mass[mu], 2), -2);
        kinetic.push_back(series_sqrt(arg, order));
        gs.H += kinetic.back();
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        gs.P[i] = OperatorSeries::zero(sys.table);
        gs.J[i] = OperatorSeries::zero(sys.table);
        gs.K[i] = OperatorSeries::zero(sys.table);
        for (int mu = 0; mu < sys.n; ++mu) {
            gs.P[i] += sys.mom(mu, i);
            gs.J[i] += sys.pos(mu, j) * sys.mom(mu, k) - sys.pos(mu, k) * sys.mom(mu, j);
            gs.K[i] += anticommutator(sys.pos(mu, i), kinetic[mu]);
        }
        gs.K[i] = gs.K[i].times(half()).shifted_eps(1);
    }
    return gs;
}

GeneratorSet build_cm_generators(const CmSystem& sys, int order) {
    GeneratorSet gs;
    gs.form = GeneratorSet::Form::center_of_mass;
    gs.order = order;
    gs.dims = sys.dims;
    gs.H = h_cm(sys, order);
    for (int i = 0; i < 3; ++i) {
        gs.P[i] = OperatorSeries::zero(sys.table);
        gs.J[i] = OperatorSeries::zero(sys.table);
        gs.K[i] = OperatorSeries::zero(sys.table);
    }
    for (int i = 0; i < sys.dims; ++i) {
        gs.P[i] = sys.p(i);
        gs.K[i] = anticommutator(sys.x(i), gs.H).times(half()).shifted_eps(1);
    }
    if (sys.dims == 3) {
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            gs.J[i] = sys.x(j) * sys.p(k) - sys.x(k) * sys.p(j);
        }
    }
    return gs;
}

OperatorSeries h_minkowski(const CmSystem& sys, int order) { return h_cm(sys, order); }

OperatorSeries h_rindler(const CmSystem& sys, int order, RindlerRoute route) {
    if (route == RindlerRoute::anticommutator) {
        OperatorSeries hm = h_cm(sys, order);
        ScalarPoly g_half = ScalarPoly::symbol(sys.g) * half();
        return hm + anticommutator(sys.x(0), hm).times(g_half).shifted_eps(1);
    }
    GeneratorSet gs = build_cm_generators(sys, order);
    return gs.H + gs.K[0].times(ScalarPoly::symbol(sys.g));
}

OperatorSeries u_support_classical_level0(const CmSystem& sys) {
    ScalarPoly mg = ScalarPoly::symbol(sys.M) * ScalarPoly::symbol(sys.g);
    return sys.x(0).times(-mg);
}

OperatorSeries u_first_order_quantum(const CmSystem& sys, const ScalarPoly& alpha,
                                     const ScalarPoly& beta) {
    if (alpha + beta != ScalarPoly::one())
        throw AlgebraError("operator-valued support requires alpha + beta = 1");
    ScalarPoly g = ScalarPoly::symbol(sys.g);
    ScalarPoly g_over_2m = g * ScalarPoly::symbol(sys.M, -1) * half();
    OperatorSeries x1 = sys.x(0);
    OperatorSeries pp = sys.p_squared();
    OperatorSeries mix = (x1 * pp).times(alpha) + (pp * x1).times(beta);
    return -(OperatorSeries::op(sys.table, sys.Hrel0) * x1).times(g) - mix.times(g_over_2m);
}

OperatorSeries u_support_quantum(const CmSystem& sys, const ScalarPoly& alpha,
                                 const ScalarPoly& beta) {
    return u_support_classical_level0(sys) + u_first_order_quantum(sys, alpha, beta).shifted_eps(1);
}

OperatorSeries no_acceleration_lhs(const CmSystem& sys, const OperatorSeries& u) {
    bool first = true;
    int grade = 0;
    for (const auto& [mono, coeff] : u.terms()) {
        if (first) {
            grade = mono.eps;
            first = false;
        } else if (mono.eps != grade) {
            throw AlgebraError("support term must sit at a single eps grade");
        }
    }
    ScalarPoly i_over_2h =
        ScalarPoly::imaginary_unit() * half() * ScalarPoly::symbol(sys.hbar, -1);
    OperatorSeries pp = sys.p_squared();
    return commutator(sys.p(0), u) - commutator(commutator(sys.x(0), u), pp).times(i_over_2h);
}

OperatorSeries no_acceleration_rhs(const CmSystem& sys) {
    ScalarPoly ihg = ScalarPoly::imaginary_unit() * ScalarPoly::symbol(sys.hbar) *
                     ScalarPoly::symbol(sys.g);
    ScalarPoly inv_2m = half() * ScalarPoly::symbol(sys.M, -1);
    OperatorSeries two_p1_sq = sys.p(0, 2).times(ScalarPoly(GaussianRational(Rational(2))));
    OperatorSeries inner = OperatorSeries::op(sys.table, sys.Hrel0) +
                           (sys.p_squared() - two_p1_sq).times(inv_2m);
    return inner.times(ihg);
}

IdentityCheck check_identity(const OperatorSeries& lhs, const OperatorSeries& rhs,
                             std::optional<int> order) {
    IdentityCheck out;
    out.residual = lhs - rhs;
    if (!order) {
        out.covered = true;
        out.ok = equals(lhs, rhs);
        return out;
    }
    if (out.residual.truncation_lossy()) {
        auto validity = out.residual.truncation_order();
        out.covered = validity && *validity >= *order;
    } else {
        out.covered = true;
    }
    out.ok = out.covered && truncate(out.residual, *order).is_zero();
    return out;
}

}  // namespace relqm::generators
