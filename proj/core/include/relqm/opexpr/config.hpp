#pragma once

#include <optional>
#include <string>

#include "relqm/opalg/rational.hpp"
#include "relqm/opexpr/parse.hpp"

namespace relqm::opexpr {

enum class ScenarioTag { a, b, c, d };
enum class SupportMode { none, classical_level0, classical_tuned, quantum_operator };
enum class CurveFormat { csv, json };

// Scenario file schema is documented in docs/config_schema.md. Values are
// exact rationals; the raw file text is kept so reports can echo the config
// byte for byte.
struct ScenarioConfig {
    ScenarioTag scenario = ScenarioTag::a;
    SupportMode support = SupportMode::none;
    opalg::Rational alpha{1, 2};
    opalg::Rational beta{1, 2};
    bool frozen_cm = false;
    bool curvature = false;

    opalg::Rational g{1};
    opalg::Rational c{10};
    opalg::Rational mass{1};
    opalg::Rational omega_int{1};
    opalg::Rational omega_cm{1, 100};
    bool cm_trap = false;
    opalg::Rational nbar{1};
    opalg::Rational delta_x{1};
    opalg::Rational center{0};
    std::optional<opalg::Rational> width;  // absent: ground-state width
    opalg::Rational lambda{0};

    int d_cm = 32;
    int d_int = 16;
    int n_max = 0;  // 0: derive from thermal_tail
    opalg::Rational thermal_tail{1, 10000000000L};
    int eps_order = 1;

    opalg::Rational dt{1, 100};
    opalg::Rational t_max{1};
    int krylov_dim = 24;
    opalg::Rational unitarity_tol{1, 1000000000L};

    std::string out_dir = "out";
    CurveFormat format = CurveFormat::csv;
    int sample_every = 1;

    std::string raw_text;
    std::string source_path;

    double g_d() const { return g.get_d(); }
    double c_d() const { return c.get_d(); }
    double mass_d() const { return mass.get_d(); }
    double omega_int_d() const { return omega_int.get_d(); }
    double omega_cm_d() const { return omega_cm.get_d(); }
    double nbar_d() const { return nbar.get_d(); }
    double delta_x_d() const { return delta_x.get_d(); }
    double center_d() const { return center.get_d(); }
    double lambda_d() const { return lambda.get_d(); }
    double dt_d() const { return dt.get_d(); }
    double t_max_d() const { return t_max.get_d(); }
};

const char* to_string(ScenarioTag t);
const char* to_string(SupportMode m);
const char* to_string(CurveFormat f);

// Parses and validates a scenario config. Failures throw ParseError with the
// offending line; constraint violations name the failed constraint.
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario(const std::string& path);

}  // namespace relqm::opexpr
