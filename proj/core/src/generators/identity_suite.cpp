#include "relqm/generators/identity_suite.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "relqm/generators/generators.hpp"
#include "relqm/opexpr/parse.hpp"

namespace relqm::generators {

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && ws(s.front())) s.erase(s.begin());
    while (!s.empty() && ws(s.back())) s.pop_back();
    return s;
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::optional<int> parse_order_token(const std::string& tok, int line) {
    if (tok == "exact") return std::nullopt;
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw SuiteFormatError(line, "order must be an integer or 'exact', got '" + tok + "'");
    }
    if (pos != tok.size())
        throw SuiteFormatError(line, "order must be an integer or 'exact', got '" + tok + "'");
    return value;
}

IdentityCase parse_case_line(const std::string& rest, int line) {
    IdentityCase c;
    c.line = line;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    };
    skip_ws();
    std::size_t name_start = i;
    while (i < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[i])) || rest[i] == '_'))
        ++i;
    c.name = rest.substr(name_start, i - name_start);
    if (!is_ident(c.name)) throw SuiteFormatError(line, "case requires a name");
    skip_ws();
    if (i >= rest.size() || rest[i] != '@')
        throw SuiteFormatError(line, "case '" + c.name + "': expected @<order|exact>");
    ++i;
    skip_ws();
    std::size_t ord_start = i;
    while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    c.order = parse_order_token(rest.substr(ord_start, i - ord_start), line);
    skip_ws();
    if (i >= rest.size() || rest[i] != '"')
        throw SuiteFormatError(line, "case '" + c.name + "': expected a quoted anchor");
    std::size_t close = rest.find('"', i + 1);
    if (close == std::string::npos)
        throw SuiteFormatError(line, "case '" + c.name + "': unterminated anchor");
    c.anchor = rest.substr(i + 1, close - i - 1);
    i = close + 1;
    skip_ws();
    if (i >= rest.size() || rest[i] != ':')
        throw SuiteFormatError(line, "case '" + c.name + "': expected ':' after the anchor");
    std::string body = rest.substr(i + 1);
    std::size_t eq = body.find("==");
    if (eq == std::string::npos)
        throw SuiteFormatError(line, "case '" + c.name + "': expected '=='");
    if (body.find("==", eq + 2) != std::string::npos)
        throw SuiteFormatError(line, "case '" + c.name + "': more than one '=='");
    c.lhs = trim(body.substr(0, eq));
    c.rhs = trim(body.substr(eq + 2));
    if (c.lhs.empty() || c.rhs.empty())
        throw SuiteFormatError(line, "case '" + c.name + "': empty side");
    return c;
}

}  // namespace

IdentitySuite parse_identity_suite(const std::string& text) {
    IdentitySuite suite;
    std::set<std::string> case_names;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        std::size_t sp = s.find_first_of(" \t");
        std::string word = s.substr(0, sp);
        std::string rest = sp == std::string::npos ? std::string() : trim(s.substr(sp + 1));
        if (word == "table") {
            if (!is_ident(rest))
                throw SuiteFormatError(line, "table directive requires a single name");
            suite.blocks.push_back(TableBlock{rest, line, {}, {}});
        } else if (word == "def") {
            if (suite.blocks.empty())
                throw SuiteFormatError(line, "def before any table directive");
            std::size_t eq = rest.find('=');
            if (eq == std::string::npos) throw SuiteFormatError(line, "def requires '='");
            SuiteDefinition d;
            d.name = trim(rest.substr(0, eq));
            d.expr = trim(rest.substr(eq + 1));
            d.line = line;
            if (!is_ident(d.name)) throw SuiteFormatError(line, "def requires a valid name");
            if (d.expr.empty()) throw SuiteFormatError(line, "def requires an expression");
            for (const auto& prev : suite.blocks.back().defs)
                if (prev.name == d.name)
                    throw SuiteFormatError(line, "definition '" + d.name + "' repeated in block");
            suite.blocks.back().defs.push_back(std::move(d));
        } else if (word == "case") {
            if (suite.blocks.empty())
                throw SuiteFormatError(line, "case before any table directive");
            IdentityCase c = parse_case_line(rest, line);
            if (!case_names.insert(c.name).second)
                throw SuiteFormatError(line, "case name '" + c.name + "' repeated");
            suite.blocks.back().cases.push_back(std::move(c));
        } else {
            throw SuiteFormatError(line, "unknown directive '" + word + "'");
        }
    }
    return suite;
}

IdentitySuite load_identity_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SuiteFormatError(0, "cannot open suite file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_identity_suite(buf.str());
}

std::shared_ptr<opalg::SymbolTable> suite_table(const std::string& name) {
    if (name == "cm_1d") return make_cm_system(1).table;
    if (name == "cm_3d") return make_cm_system(3).table;
    if (name == "free_1") return make_free_system(1).table;
    if (name == "free_2") return make_free_system(2).table;
    throw AlgebraError("unknown suite table '" + name + "'");
}

IdentityReport run_identity_suite(const IdentitySuite& suite) {
    IdentityReport rep;
    for (const auto& block : suite.blocks) {
        std::shared_ptr<opalg::SymbolTable> table;
        try {
            table = suite_table(block.table);
        } catch (const Error& e) {
            throw SuiteFormatError(block.line, e.what());
        }
        opexpr::Definitions defs;
        for (const auto& d : block.defs) {
            if (table->find_operator(d.name) || table->find_scalar(d.name))
                throw SuiteFormatError(d.line,
                                       "definition '" + d.name + "' shadows a table symbol");
            try {
                defs.emplace(d.name, opexpr::parse_expr(d.expr, table, &defs));
            } catch (const Error& e) {
                throw SuiteFormatError(d.line,
                                       "in definition '" + d.name + "': " + std::string(e.what()));
            }
        }
        for (const auto& c : block.cases) {
            opalg::OperatorSeries lhs, rhs;
            try {
                lhs = opexpr::parse_expr(c.lhs, table, &defs);
                rhs = opexpr::parse_expr(c.rhs, table, &defs);
            } catch (const Error& e) {
                throw SuiteFormatError(c.line,
                                       "in case '" + c.name + "': " + std::string(e.what()));
            }
            IdentityCheck chk = check_identity(lhs, rhs, c.order);
            CaseResult res;
            res.name = c.name;
            res.table = block.table;
            res.order = c.order;
            res.anchor = c.anchor;
            res.line = c.line;
            res.passed = chk.ok;
            res.covered = chk.covered;
            if (!chk.ok) res.residual = opalg::to_canonical_string(chk.residual);
            (chk.ok ? rep.passed : rep.failed) += 1;
            rep.results.push_back(std::move(res));
        }
    }
    return rep;
}

std::vector<std::string> format_report_lines(const IdentityReport& report) {
    std::vector<std::string> lines;
    lines.reserve(report.results.size());
    for (const auto& r : report.results) {
        std::ostringstream os;
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << r.table << " @"
           << (r.order ? std::to_string(*r.order) : std::string("exact")) << "] " << r.anchor;
        if (!r.passed) {
            if (!r.covered) os << " (series validity short of the compared order)";
            os << " residual: " << r.residual;
        }
        lines.push_back(os.str());
    }
    return lines;
}

}  // namespace relqm::generators
