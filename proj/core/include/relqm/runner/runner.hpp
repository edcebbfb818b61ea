#pragma once

#include <string>
#include <vector>

#include "relqm/ehrenfest/ehrenfest.hpp"
#include "relqm/generators/generators.hpp"
#include "relqm/generators/identity_suite.hpp"
#include "relqm/hilbert/model.hpp"
#include "relqm/opexpr/config.hpp"

namespace relqm::runner {

// Symbolic generator of a configured scenario, ready for matrix binding.
//
// The frame part is picked by the scenario tag: (a) inertial, (b) uniformly
// accelerated, (c) inertial plus the accelerating potential under the
// documented factory convention (so (b) and (c) are the same series through
// the working order), (d) accelerated plus the order-1 support operator.
// The support axis stacks an additional potential on top: the static
// level-0 support, the level-0 support with the time-dependent first-order
// knob (driven by a control loop during propagation), or the order-1
// support operator.
//
// The assembled series is truncated at the configured expansion order and
// the scalar rest term (negative order) is removed exactly — it commutes
// with everything and only shifts the global phase, while keeping it would
// drown the matrix scale by a factor c^2.
struct ScenarioOperators {
    opalg::OperatorSeries h;         // propagated generator, rest term removed
    opalg::OperatorSeries accel;     // symbolic acceleration operator of h
    opalg::OperatorSeries coupling;  // knob the tuned coefficient multiplies (zero unless tuned)
    bool tuned = false;
    std::string rest_note;           // which scalar terms were removed
};

ScenarioOperators assemble_scenario(const generators::CmSystem& sys,
                                    const opexpr::ScenarioConfig& cfg);

// One sample of an ensemble run; all moments are thermal-ensemble means over
// members and branches.
struct CurveSample {
    double t = 0.0;
    double x = 0.0;
    double p = 0.0;
    double var_x = 0.0;
    double hrel0 = 0.0;
    double visibility = 0.0;
    double norm_defect = 0.0;  // worst | ||psi|| - 1 | over the ensemble
};

struct RunResult {
    opexpr::ScenarioConfig cfg;
    std::vector<CurveSample> curve;

    bool frozen = false;      // pure-phase mode: no Hilbert binding, no propagation
    bool propagated = false;

    hilbert::ModelChecks checks;  // binding validation (propagated runs)
    ehrenfest::EhrenfestReport ehrenfest;
    bool have_ehrenfest = false;

    double energy_drift_rel = 0.0;  // static-generator runs only
    bool have_energy_drift = false;
    double max_norm_defect = 0.0;

    long steps = 0;
    double wall_seconds = 0.0;

    std::vector<std::string> notes;
    std::vector<std::string> failures;  // rollup reasons, empty on pass
    bool pass = true;
};

// Runs one scenario to completion in memory (no files written).
// Configuration and binding problems propagate as exceptions; tolerance
// failures (Ehrenfest budget, energy drift) are recorded in `failures`.
RunResult run_scenario(const opexpr::ScenarioConfig& cfg);

// Curve serialization. CSV is the determinism surface: fixed column order
//   t,x,p,var_x,hrel0,visibility,norm_defect
// and round-trip ("%.17g") formatting, so identical runs are byte-identical.
std::string curve_csv(const std::vector<CurveSample>& curve);
std::string curve_json(const std::vector<CurveSample>& curve);

// Self-contained JSON scenario report (embeds the config echo, binding
// checks, identity-suite summary, Ehrenfest numbers, and the rollup).
// `suite` may be null when no identity suite ran; `curve_file` names the
// sibling curve file the report points at. Wall-clock fields are
// informational and excluded from determinism claims.
std::string report_json(const RunResult& r, const generators::IdentityReport* suite,
                        const std::string& curve_file);

}  // namespace relqm::runner
