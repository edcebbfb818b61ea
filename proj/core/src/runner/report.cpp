#include <cstdio>
#include <string>

#include "json.hpp"

#include "relqm/runner/runner.hpp"

namespace relqm::runner {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json curve_rows(const std::vector<CurveSample>& curve) {
    json rows = json::array();
    for (const auto& s : curve) {
        rows.push_back({{"t", s.t},
                        {"x", s.x},
                        {"p", s.p},
                        {"var_x", s.var_x},
                        {"hrel0", s.hrel0},
                        {"visibility", s.visibility},
                        {"norm_defect", s.norm_defect}});
    }
    return rows;
}

json config_echo(const opexpr::ScenarioConfig& cfg) {
    json j;
    j["scenario"] = opexpr::to_string(cfg.scenario);
    j["support"] = opexpr::to_string(cfg.support);
    j["alpha"] = cfg.alpha.get_str();
    j["beta"] = cfg.beta.get_str();
    j["frozen_cm"] = cfg.frozen_cm;
    j["g"] = cfg.g_d();
    j["c"] = cfg.c_d();
    j["mass"] = cfg.mass_d();
    j["omega_int"] = cfg.omega_int_d();
    j["omega_cm"] = cfg.omega_cm_d();
    j["cm_trap"] = cfg.cm_trap;
    j["nbar"] = cfg.nbar_d();
    j["delta_x"] = cfg.delta_x_d();
    j["center"] = cfg.center_d();
    if (cfg.width) j["width"] = cfg.width->get_d();
    j["lambda"] = cfg.lambda_d();
    j["d_cm"] = cfg.d_cm;
    j["d_int"] = cfg.d_int;
    j["n_max"] = cfg.n_max;
    j["thermal_tail"] = cfg.thermal_tail.get_d();
    j["eps_order"] = cfg.eps_order;
    j["dt"] = cfg.dt_d();
    j["t_max"] = cfg.t_max_d();
    j["krylov_dim"] = cfg.krylov_dim;
    j["unitarity_tol"] = cfg.unitarity_tol.get_d();
    j["sample_every"] = cfg.sample_every;
    j["format"] = opexpr::to_string(cfg.format);
    if (!cfg.source_path.empty()) j["source_path"] = cfg.source_path;
    return j;
}

}  // namespace

std::string curve_csv(const std::vector<CurveSample>& curve) {
    std::string out = "t,x,p,var_x,hrel0,visibility,norm_defect\n";
    for (const auto& s : curve) {
        out += fmt(s.t);
        out += ',';
        out += fmt(s.x);
        out += ',';
        out += fmt(s.p);
        out += ',';
        out += fmt(s.var_x);
        out += ',';
        out += fmt(s.hrel0);
        out += ',';
        out += fmt(s.visibility);
        out += ',';
        out += fmt(s.norm_defect);
        out += '\n';
    }
    return out;
}

std::string curve_json(const std::vector<CurveSample>& curve) {
    json j;
    j["columns"] = {"t", "x", "p", "var_x", "hrel0", "visibility", "norm_defect"};
    j["rows"] = curve_rows(curve);
    return j.dump(2) + "\n";
}

std::string report_json(const RunResult& r, const generators::IdentityReport* suite,
                        const std::string& curve_file) {
    json j;
    j["schema"] = "relqm-report/1";
    j["config"] = config_echo(r.cfg);

    if (suite) {
        j["identity_suite"] = {{"cases", suite->results.size()},
                               {"passed", suite->passed},
                               {"failed", suite->failed},
                               {"all_passed", suite->all_passed()}};
    } else {
        j["identity_suite"] = nullptr;
    }

    if (r.propagated) {
        json rules = json::array();
        for (const auto& rc : r.checks.bulk) rules.push_back({{"rule", rc.rule}, {"residual", rc.residual}});
        j["binding_checks"] = {{"hermiticity_defect", r.checks.hermiticity_defect},
                               {"bulk_levels_cm", r.checks.bulk_levels_cm},
                               {"bulk_levels_int", r.checks.bulk_levels_int},
                               {"rules", rules}};
    } else {
        j["binding_checks"] = nullptr;
    }

    j["mode"] = r.frozen ? "pure-phase" : "propagated";
    j["curve"] = {{"file", curve_file},
                  {"samples", r.curve.size()},
                  {"columns", {"t", "x", "p", "var_x", "hrel0", "visibility", "norm_defect"}}};
    if (!r.curve.empty()) {
        j["visibility_initial"] = r.curve.front().visibility;
        j["visibility_final"] = r.curve.back().visibility;
    }

    if (r.have_ehrenfest) {
        j["ehrenfest"] = {{"scenario", r.ehrenfest.scenario},
                          {"max_residual", r.ehrenfest.max_residual},
                          {"dt_allowance", r.ehrenfest.dt_allowance},
                          {"base_tolerance", r.ehrenfest.base_tolerance},
                          {"samples", r.ehrenfest.residual.size()},
                          {"pass", r.ehrenfest.pass}};
    } else {
        j["ehrenfest"] = nullptr;
    }

    j["propagation"] = {{"steps", r.steps},
                        {"dt", r.cfg.dt_d()},
                        {"max_norm_defect", r.max_norm_defect},
                        {"energy_drift_rel",
                         r.have_energy_drift ? json(r.energy_drift_rel) : json(nullptr)},
                        {"wall_seconds", r.wall_seconds}};

    j["notes"] = r.notes;
    j["failures"] = r.failures;
    j["pass"] = r.pass && (!suite || suite->all_passed());
    return j.dump(2) + "\n";
}

}  // namespace relqm::runner
