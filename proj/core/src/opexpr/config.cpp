#include "relqm/opexpr/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace relqm::opexpr {

using opalg::Rational;

namespace {

struct Entry {
    std::string value;
    int line;
};

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(line, 1, msg);
}

Rational parse_rational(const Entry& e, const std::string& key) {
    const std::string& v = e.value;
    std::size_t i = 0;
    if (i < v.size() && (v[i] == '+' || v[i] == '-')) ++i;
    bool digits = false;
    while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) {
        ++i;
        digits = true;
    }
    if (!digits) fail(e.line, key + ": expected an integer or ratio, got '" + v + "'");
    if (i < v.size() && v[i] == '.')
        fail(e.line, key + ": decimal literals are not supported; use an integer ratio");
    if (i < v.size()) {
        if (v[i] != '/') fail(e.line, key + ": expected an integer or ratio, got '" + v + "'");
        ++i;
        bool den = false;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) {
            ++i;
            den = true;
        }
        if (!den || i != v.size())
            fail(e.line, key + ": expected an integer or ratio, got '" + v + "'");
    }
    Rational r(v);
    r.canonicalize();
    return r;
}

int parse_int(const Entry& e, const std::string& key) {
    Rational r = parse_rational(e, key);
    if (r.get_den() != 1) fail(e.line, key + ": expected an integer, got '" + e.value + "'");
    if (!r.get_num().fits_sint_p()) fail(e.line, key + ": value out of range");
    return static_cast<int>(r.get_num().get_si());
}

bool parse_flag(const Entry& e, const std::string& key) {
    if (e.value == "on") return true;
    if (e.value == "off") return false;
    fail(e.line, key + ": expected 'on' or 'off', got '" + e.value + "'");
}

// section -> key -> entry
using Table = std::map<std::string, std::map<std::string, Entry>>;

Table read_sections(const std::string& text) {
    Table out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(lineno, "empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (value.empty()) fail(lineno, "empty value for key '" + key + "'");
        if (section.empty()) fail(lineno, "key '" + key + "' appears before any section");
        auto [it, fresh] = out[section].emplace(key, Entry{value, lineno});
        if (!fresh)
            fail(lineno, "duplicate key '" + key + "' (first set on line " +
                             std::to_string(it->second.line) + ")");
    }
    return out;
}

class SchemaReader {
  public:
    explicit SchemaReader(Table table) : table_(std::move(table)) {}

    const Entry* find(const std::string& section, const std::string& key) {
        seen_[section].insert(key);
        auto s = table_.find(section);
        if (s == table_.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    void finish() const {
        for (const auto& [section, keys] : table_) {
            auto s = seen_.find(section);
            if (s == seen_.end()) {
                fail(keys.begin()->second.line, "unknown section '" + section + "'");
            }
            for (const auto& [key, entry] : keys) {
                if (!s->second.count(key))
                    fail(entry.line, "unknown key '" + key + "' in section [" + section + "]");
            }
        }
    }

  private:
    Table table_;
    std::map<std::string, std::set<std::string>> seen_;
};

[[noreturn]] void constraint(const std::string& msg) {
    throw ParseError(0, 0, "constraint violated: " + msg);
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.d_cm < 2) constraint("D_cm >= 2");
    if (cfg.d_int < 2) constraint("D_int >= 2");
    if (cfg.dt <= 0) constraint("dt > 0");
    if (cfg.t_max < cfg.dt) constraint("t_max >= dt");
    if (cfg.c <= 0) constraint("c > 0");
    if (cfg.nbar < 0) constraint("nbar >= 0");
    if (cfg.eps_order != 0 && cfg.eps_order != 1) constraint("eps_order in {0,1}");
    if (cfg.mass <= 0) constraint("M > 0");
    if (cfg.omega_int <= 0) constraint("omega_int > 0");
    if (cfg.omega_cm <= 0) constraint("omega_cm > 0");
    if (cfg.width && *cfg.width <= 0) constraint("width > 0");
    if (cfg.thermal_tail <= 0) constraint("thermal_tail > 0");
    if (cfg.n_max < 0) constraint("n_max >= 0");
    if (cfg.krylov_dim < 2) constraint("krylov_dim >= 2");
    if (cfg.unitarity_tol <= 0) constraint("unitarity_tol > 0");
    if (cfg.sample_every < 1) constraint("sample_every >= 1");
    if (cfg.support == SupportMode::quantum_operator && cfg.alpha + cfg.beta != 1)
        constraint("alpha + beta = 1 for support = quantum_operator");
    if (cfg.curvature) constraint("curvature terms are not implemented; set curvature = off");
}

}  // namespace

const char* to_string(ScenarioTag t) {
    switch (t) {
        case ScenarioTag::a: return "a";
        case ScenarioTag::b: return "b";
        case ScenarioTag::c: return "c";
        case ScenarioTag::d: return "d";
    }
    return "?";
}

const char* to_string(SupportMode m) {
    switch (m) {
        case SupportMode::none: return "none";
        case SupportMode::classical_level0: return "classical_level0";
        case SupportMode::classical_tuned: return "classical_tuned";
        case SupportMode::quantum_operator: return "quantum_operator";
    }
    return "?";
}

const char* to_string(CurveFormat f) {
    return f == CurveFormat::csv ? "csv" : "json";
}

ScenarioConfig parse_scenario_text(const std::string& text) {
    SchemaReader reader(read_sections(text));
    ScenarioConfig cfg;
    cfg.raw_text = text;

    const Entry* e = reader.find("scenario", "scenario");
    if (!e) throw ParseError(0, 0, "missing required key 'scenario' in section [scenario]");
    if (e->value == "a") cfg.scenario = ScenarioTag::a;
    else if (e->value == "b") cfg.scenario = ScenarioTag::b;
    else if (e->value == "c") cfg.scenario = ScenarioTag::c;
    else if (e->value == "d") cfg.scenario = ScenarioTag::d;
    else fail(e->line, "scenario: expected one of a|b|c|d, got '" + e->value + "'");

    if ((e = reader.find("scenario", "support"))) {
        if (e->value == "none") cfg.support = SupportMode::none;
        else if (e->value == "classical_level0") cfg.support = SupportMode::classical_level0;
        else if (e->value == "classical_tuned") cfg.support = SupportMode::classical_tuned;
        else if (e->value == "quantum_operator") cfg.support = SupportMode::quantum_operator;
        else fail(e->line,
                  "support: expected none|classical_level0|classical_tuned|quantum_operator");
    }
    if ((e = reader.find("scenario", "alpha"))) cfg.alpha = parse_rational(*e, "alpha");
    if ((e = reader.find("scenario", "beta"))) cfg.beta = parse_rational(*e, "beta");
    if ((e = reader.find("scenario", "frozen_cm"))) cfg.frozen_cm = parse_flag(*e, "frozen_cm");
    if ((e = reader.find("scenario", "curvature"))) cfg.curvature = parse_flag(*e, "curvature");

    if ((e = reader.find("physics", "g"))) cfg.g = parse_rational(*e, "g");
    if ((e = reader.find("physics", "c"))) cfg.c = parse_rational(*e, "c");
    if ((e = reader.find("physics", "M"))) cfg.mass = parse_rational(*e, "M");
    if ((e = reader.find("physics", "omega_int"))) cfg.omega_int = parse_rational(*e, "omega_int");
    if ((e = reader.find("physics", "omega_cm"))) cfg.omega_cm = parse_rational(*e, "omega_cm");
    if ((e = reader.find("physics", "cm_trap"))) cfg.cm_trap = parse_flag(*e, "cm_trap");
    if ((e = reader.find("physics", "nbar"))) cfg.nbar = parse_rational(*e, "nbar");
    if ((e = reader.find("physics", "delta_x"))) cfg.delta_x = parse_rational(*e, "delta_x");
    if ((e = reader.find("physics", "center"))) cfg.center = parse_rational(*e, "center");
    if ((e = reader.find("physics", "width"))) cfg.width = parse_rational(*e, "width");
    if ((e = reader.find("physics", "lambda"))) cfg.lambda = parse_rational(*e, "lambda");

    if ((e = reader.find("truncation", "D_cm"))) cfg.d_cm = parse_int(*e, "D_cm");
    if ((e = reader.find("truncation", "D_int"))) cfg.d_int = parse_int(*e, "D_int");
    if ((e = reader.find("truncation", "n_max"))) cfg.n_max = parse_int(*e, "n_max");
    if ((e = reader.find("truncation", "thermal_tail")))
        cfg.thermal_tail = parse_rational(*e, "thermal_tail");
    if ((e = reader.find("truncation", "eps_order"))) cfg.eps_order = parse_int(*e, "eps_order");

    if ((e = reader.find("propagator", "dt"))) cfg.dt = parse_rational(*e, "dt");
    if ((e = reader.find("propagator", "t_max"))) cfg.t_max = parse_rational(*e, "t_max");
    if ((e = reader.find("propagator", "krylov_dim")))
        cfg.krylov_dim = parse_int(*e, "krylov_dim");
    if ((e = reader.find("propagator", "unitarity_tol")))
        cfg.unitarity_tol = parse_rational(*e, "unitarity_tol");

    if ((e = reader.find("output", "out_dir"))) cfg.out_dir = e->value;
    if ((e = reader.find("output", "format"))) {
        if (e->value == "csv") cfg.format = CurveFormat::csv;
        else if (e->value == "json") cfg.format = CurveFormat::json;
        else fail(e->line, "format: expected csv|json, got '" + e->value + "'");
    }
    if ((e = reader.find("output", "sample_every")))
        cfg.sample_every = parse_int(*e, "sample_every");

    reader.finish();
    validate(cfg);
    return cfg;
}

ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, 0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    ScenarioConfig cfg = parse_scenario_text(buf.str());
    cfg.source_path = path;
    return cfg;
}

}  // namespace relqm::opexpr
