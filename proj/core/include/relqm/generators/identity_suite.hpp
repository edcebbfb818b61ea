#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relqm/opalg/series.hpp"

namespace relqm::generators {

// Malformed suite file or an expression that does not evaluate: configuration
// problems, distinguished from residual failures (which are report entries).
struct SuiteFormatError : Error {
    SuiteFormatError(int line_, const std::string& msg)
        : Error("identity suite line " + std::to_string(line_) + ": " + msg), line(line_) {}
    int line;
};

// One declarative algebra check: two expression strings evaluated over a
// named symbol table, compared exactly (order empty) or through eps^order.
struct IdentityCase {
    std::string name;
    std::optional<int> order;  // empty: exact comparison of canonical forms
    std::string anchor;        // short statement of the relation certified
    std::string lhs;
    std::string rhs;
    int line = 0;
};

// Named series bound before the cases of its block are evaluated.
struct SuiteDefinition {
    std::string name;
    std::string expr;
    int line = 0;
};

// Cases grouped under one `table` directive; definitions are replayed in
// source order before any case of the block runs.
struct TableBlock {
    std::string table;  // cm_1d | cm_3d | free_1 | free_2
    int line = 0;
    std::vector<SuiteDefinition> defs;
    std::vector<IdentityCase> cases;
};

struct IdentitySuite {
    std::vector<TableBlock> blocks;
    std::size_t case_count() const {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.cases.size();
        return n;
    }
};

struct CaseResult {
    std::string name;
    std::string table;
    std::optional<int> order;
    std::string anchor;
    bool passed = false;
    bool covered = true;    // false: tracked series validity fell short of the order
    std::string residual;   // canonical form of lhs - rhs, filled on failure
    int line = 0;
};

struct IdentityReport {
    std::vector<CaseResult> results;
    int passed = 0;
    int failed = 0;
    bool all_passed() const { return failed == 0; }
};

// Line-oriented format:
//   # comment
//   table <name>
//   def <name> = <expression>
//   case <name> @<order|exact> "<anchor>" : <lhs> == <rhs>
// Case names are unique across the whole file. Throws SuiteFormatError.
IdentitySuite parse_identity_suite(const std::string& text);
IdentitySuite load_identity_suite(const std::string& path);

// Instantiate a suite table by registry name; throws SuiteFormatError
// semantics via AlgebraError for unknown names (callers add line context).
std::shared_ptr<opalg::SymbolTable> suite_table(const std::string& name);

// Evaluate every case. Expression or table problems throw SuiteFormatError;
// nonzero residuals and validity shortfalls are failed entries, not errors.
IdentityReport run_identity_suite(const IdentitySuite& suite);

// Fixed-width per-case lines ("PASS <name> ..."), one per result.
std::vector<std::string> format_report_lines(const IdentityReport& report);

}  // namespace relqm::generators
