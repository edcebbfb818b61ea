#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "relqm/opexpr/config.hpp"
#include "relqm/opexpr/parse.hpp"

using namespace relqm;
using namespace relqm::opalg;
using namespace relqm::opexpr;

namespace {

ScalarPoly rat(long n, long d = 1) { return ScalarPoly(GaussianRational(make_rational(n, d))); }

struct Fixture {
    std::shared_ptr<SymbolTable> t;
    OpId X, P, H0, H1;
    ScalarId hbar, M;
    ScalarPoly ihbar;
};

Fixture make_fixture() {
    Fixture f;
    f.t = SymbolTable::create();
    f.X = f.t->declare_operator("X");
    f.P = f.t->declare_operator("P");
    f.H0 = f.t->declare_operator("Hrel0");
    f.H1 = f.t->declare_operator("Hrel1");
    f.hbar = f.t->declare_scalar("hbar");
    f.M = f.t->declare_scalar("M");
    f.ihbar = ScalarPoly::imaginary_unit() * ScalarPoly::symbol(f.hbar);
    f.t->set_commutator(f.X, f.P, f.ihbar);
    f.t->set_commute(f.X, f.H0);
    f.t->set_commute(f.X, f.H1);
    f.t->set_commute(f.P, f.H0);
    f.t->set_commute(f.P, f.H1);
    f.t->set_commute(f.H0, f.H1);
    return f;
}

ScalarPoly random_coeff(std::mt19937& rng, ScalarId hbar, ScalarId m) {
    switch (rng() % 8) {
        case 0: return rat(1);
        case 1: return rat(-2);
        case 2: return rat(5, 3);
        case 3: return ScalarPoly(GaussianRational(Rational(0), make_rational(1, 2)));
        case 4: return ScalarPoly::symbol(hbar, 1 + static_cast<int>(rng() % 2));
        case 5: return ScalarPoly::symbol(m, -1 - static_cast<int>(rng() % 2));
        case 6: return rat(3) * ScalarPoly::symbol(hbar) * ScalarPoly::symbol(m, -2);
        default:
            return ScalarPoly(GaussianRational(make_rational(-1, 4), make_rational(7, 2))) *
                   ScalarPoly::symbol(hbar, -1);
    }
}

OperatorSeries random_series(std::mt19937& rng, const Fixture& f) {
    std::vector<OpId> ops{f.X, f.P, f.H0, f.H1};
    OperatorSeries s(f.t);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
        std::vector<std::pair<OpId, int>> word;
        int len = static_cast<int>(rng() % 4);
        for (int k = 0; k < len; ++k)
            word.emplace_back(ops[rng() % ops.size()], 1 + static_cast<int>(rng() % 3));
        int eps = static_cast<int>(rng() % 5) - 2;
        s.add_word(random_coeff(rng, f.hbar, f.M), eps, word);
    }
    return s;
}

}  // namespace

TEST_CASE("basic expressions evaluate through the algebra") {
    Fixture f = make_fixture();

    OperatorSeries comm = parse_expr("[X,P]", f.t);
    CHECK(equals(comm, OperatorSeries::scalar(f.t, f.ihbar)));

    OperatorSeries acomm = parse_expr("{X,P}", f.t);
    CHECK(equals(acomm, anticommutator(OperatorSeries::op(f.t, f.X),
                                       OperatorSeries::op(f.t, f.P))));

    OperatorSeries half_x = parse_expr("1/2*X", f.t);
    CHECK(equals(half_x, OperatorSeries::op(f.t, f.X).times(rat(1, 2))));

    OperatorSeries sq = parse_expr("(X+P)^2", f.t);
    OperatorSeries xp = OperatorSeries::op(f.t, f.X) + OperatorSeries::op(f.t, f.P);
    CHECK(equals(sq, xp * xp));

    OperatorSeries root = parse_expr("sqrt_series(M^2*eps^-2, 1)", f.t);
    CHECK(equals(root, OperatorSeries::scalar(f.t, ScalarPoly::symbol(f.M), -1)));

    OperatorSeries lit = parse_expr("3/4 + 2i", f.t);
    CHECK(equals(lit, OperatorSeries::scalar(
                          f.t, ScalarPoly(GaussianRational(make_rational(3, 4), Rational(2))))));

    OperatorSeries unit = parse_expr("i*i", f.t);
    CHECK(equals(unit, OperatorSeries::scalar(f.t, -ScalarPoly::one())));

    OperatorSeries division = parse_expr("X/(2*M)", f.t);
    CHECK(equals(division, OperatorSeries::op(f.t, f.X)
                               .times(rat(1, 2) * ScalarPoly::symbol(f.M, -1))));

    OperatorSeries graded = parse_expr("M*eps^-1 + Hrel0 + eps*Hrel1", f.t);
    CHECK(graded.min_eps() == -1);
    CHECK(graded.terms().size() == 3);

    OperatorSeries spaced = parse_expr("  - X \n + X ", f.t);
    CHECK(spaced.is_zero());
}

TEST_CASE("definition environment resolves bound names") {
    Fixture f = make_fixture();
    Definitions defs;
    defs.emplace("H0", OperatorSeries::op(f.t, f.P, 2).times(rat(1, 2) *
                                                             ScalarPoly::symbol(f.M, -1)) +
                           OperatorSeries::op(f.t, f.H0));
    OperatorSeries got = parse_expr("[X, H0]", f.t, &defs);
    OperatorSeries expected =
        OperatorSeries::op(f.t, f.P).times(f.ihbar * ScalarPoly::symbol(f.M, -1));
    CHECK(equals(got, expected));
    CHECK_THROWS_AS(parse_expr("H0", f.t), ParseError);
}

TEST_CASE("positioned parse errors") {
    Fixture f = make_fixture();

    try {
        parse_expr("X + 0.5", f.t);
        FAIL("expected rejection of decimal literal");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 5);
        CHECK(std::string(e.what()).find("decimal") != std::string::npos);
    }

    try {
        parse_expr("X + Y", f.t);
        FAIL("expected unknown-symbol error");
    } catch (const ParseError& e) {
        CHECK(e.col == 5);
        CHECK(std::string(e.what()).find("Y") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_expr("", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("[X", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("[X,P", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X P", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X^P", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X^-1", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X/P", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X/(X - X)", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("sqrt_series(X)", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("sqrt_series(X, X)", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("sqrt_series(X, 1)", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("2x", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("X & P", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr("(X", f.t), ParseError);
    CHECK_THROWS_AS(parse_expr(")", f.t), ParseError);
}

TEST_CASE("format and reparse round-trips on random series") {
    Fixture f = make_fixture();
    std::mt19937 rng(99331);
    for (int iter = 0; iter < 1200; ++iter) {
        OperatorSeries s = random_series(rng, f);
        std::string text = format_canonical(s);
        OperatorSeries back = parse_expr(text, f.t);
        REQUIRE_MESSAGE(equals(back, s), "round-trip at iteration ", iter, ": ", text);
    }
}

TEST_CASE("parser is total on fuzzed input") {
    Fixture f = make_fixture();
    const std::string charset =
        "XPQM()[]{}^*/+-,0123456789i eps_\t\n.\\\"';&|~#!%=<>@`?:$";
    std::mt19937 rng(123456789);

    for (int iter = 0; iter < 3000; ++iter) {
        std::string text;
        int len = static_cast<int>(rng() % 48);
        for (int k = 0; k < len; ++k) text += charset[rng() % charset.size()];
        try {
            OperatorSeries s = parse_expr(text, f.t);
            (void)format_canonical(s);
        } catch (const ParseError&) {
            // the only acceptable failure
        }
    }
    CHECK(true);
}

TEST_CASE("parser is total on the stored fuzz corpus") {
    Fixture f = make_fixture();
    std::filesystem::path dir = std::filesystem::path(RELQM_REPO_DIR) / "tests" / "fuzz_corpus";
    REQUIRE(std::filesystem::exists(dir));
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        ++files;
        try {
            (void)parse_expr(buf.str(), f.t);
        } catch (const ParseError&) {
        }
    }
    CHECK(files >= 8);
}

TEST_CASE("scenario config defaults") {
    ScenarioConfig cfg = parse_scenario_text("[scenario]\nscenario = b\n");
    CHECK(cfg.scenario == ScenarioTag::b);
    CHECK(cfg.support == SupportMode::none);
    CHECK(cfg.d_cm == 32);
    CHECK(cfg.d_int == 16);
    CHECK(cfg.eps_order == 1);
    CHECK(!cfg.frozen_cm);
    CHECK(!cfg.cm_trap);
    CHECK(!cfg.width.has_value());
    bool dt_ok = (cfg.dt == make_rational(1, 100));
    CHECK(dt_ok);
    CHECK(cfg.format == CurveFormat::csv);
    CHECK(cfg.raw_text == "[scenario]\nscenario = b\n");
}

TEST_CASE("scenario config full round") {
    std::string text =
        "# full scenario file\n"
        "[scenario]\n"
        "scenario = d\n"
        "support = quantum_operator\n"
        "alpha = 1/3\n"
        "beta = 2/3\n"
        "frozen_cm = off\n"
        "curvature = off\n"
        "[physics]\n"
        "g = 1\n"
        "c = 10\n"
        "M = 1\n"
        "omega_int = 20\n"
        "omega_cm = 1 # basis frequency\n"
        "cm_trap = off\n"
        "nbar = 1\n"
        "delta_x = 4\n"
        "center = 0\n"
        "width = 1/2\n"
        "lambda = 0\n"
        "[truncation]\n"
        "D_cm = 64\n"
        "D_int = 16\n"
        "n_max = 15\n"
        "thermal_tail = 1/10000\n"
        "eps_order = 1\n"
        "[propagator]\n"
        "dt = 1/250\n"
        "t_max = 2\n"
        "krylov_dim = 24\n"
        "unitarity_tol = 1/1000000000\n"
        "[output]\n"
        "out_dir = out/run_d\n"
        "format = csv\n"
        "sample_every = 5\n";
    ScenarioConfig cfg = parse_scenario_text(text);
    CHECK(cfg.scenario == ScenarioTag::d);
    CHECK(cfg.support == SupportMode::quantum_operator);
    bool ab = (cfg.alpha + cfg.beta == 1);
    CHECK(ab);
    CHECK(cfg.d_cm == 64);
    CHECK(cfg.n_max == 15);
    CHECK(cfg.out_dir == "out/run_d");
    CHECK(cfg.sample_every == 5);
    bool w = (cfg.width && *cfg.width == make_rational(1, 2));
    CHECK(w);
}

TEST_CASE("scenario config rejections") {
    auto reject = [](const std::string& text, const std::string& needle) {
        try {
            parse_scenario_text(text);
            FAIL_CHECK("expected rejection: ", needle, " in\n", text);
        } catch (const ParseError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                          "wanted '", needle, "' in error '", e.what(), "'");
        }
    };

    reject("[scenario]\nscenario = q\n", "a|b|c|d");
    reject("scenario = b\n", "before any section");
    reject("[scenario]\n", "missing required key");
    reject("[scenario]\nscenario = b\nbogus = 1\n", "unknown key 'bogus'");
    reject("[scenario]\nscenario = b\n[junk]\nx = 1\n", "unknown section 'junk'");
    reject("[scenario]\nscenario = b\nscenario = c\n", "duplicate key");
    reject("[scenario]\nscenario = b\n[truncation]\nD_int = 1\n", "D_int >= 2");
    reject("[scenario]\nscenario = b\n[physics]\ng = 0.5\n", "decimal");
    reject("[scenario]\nscenario = b\n[propagator]\ndt = 0\n", "dt > 0");
    reject("[scenario]\nscenario = b\n[propagator]\ndt = 2\nt_max = 1\n", "t_max >= dt");
    reject("[scenario]\nscenario = b\n[physics]\nc = -10\n", "c > 0");
    reject("[scenario]\nscenario = b\n[physics]\nnbar = -1\n", "nbar >= 0");
    reject("[scenario]\nscenario = b\n[truncation]\neps_order = 2\n", "eps_order");
    reject("[scenario]\nscenario = d\nsupport = quantum_operator\nalpha = 1\nbeta = 1\n",
           "alpha + beta");
    reject("[scenario]\nscenario = b\ncurvature = on\n", "curvature");
    reject("[scenario]\nscenario = b\nfrozen_cm = yes\n", "'on' or 'off'");
    reject("[scenario]\nscenario = b\n[physics]\ng\n", "key = value");
    reject("[scenario]\nscenario = b\n[physics]\ng =\n", "empty value");
    reject("[scenario\nscenario = b\n", "unterminated section");
}

TEST_CASE("scenario config reports the offending line") {
    try {
        parse_scenario_text("[scenario]\nscenario = b\n[physics]\nmystery = 3\n");
        FAIL("expected unknown-key error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("config file loading") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "relqm_cfg_test";
    fs::create_directories(dir);
    fs::path p = dir / "sc.cfg";
    {
        std::ofstream out(p, std::ios::binary);
        out << "[scenario]\nscenario = a\n";
    }
    ScenarioConfig cfg = parse_scenario(p.string());
    CHECK(cfg.scenario == ScenarioTag::a);
    CHECK(cfg.source_path == p.string());
    CHECK_THROWS_AS(parse_scenario((dir / "absent.cfg").string()), ParseError);
}
