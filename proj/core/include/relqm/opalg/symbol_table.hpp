#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relqm/opalg/scalar_poly.hpp"

namespace relqm::opalg {

class OperatorSeries;

using OpId = int;

// What [A, B] is for an unordered operator pair, stored for A < B in
// canonical (declaration) order.
struct PairRule {
    enum class Kind { commute, scalar, series };
    Kind kind = Kind::commute;
    // kind == scalar: [lo, hi] equals this scalar polynomial times the identity.
    ScalarPoly scalar;
    // kind == series: [lo, hi] equals an arbitrary operator series.
    std::shared_ptr<const OperatorSeries> series;
};

// Registry of operator and scalar symbols plus pairwise commutation rules.
// Declaration order of operators defines the canonical factor order used by
// normal ordering. Tables are immutable once shared; series reference them
// through shared_ptr and refuse to mix distinct tables.
class SymbolTable : public std::enable_shared_from_this<SymbolTable> {
  public:
    static std::shared_ptr<SymbolTable> create() {
        return std::shared_ptr<SymbolTable>(new SymbolTable());
    }

    OpId declare_operator(const std::string& name);
    ScalarId declare_scalar(const std::string& name);

    // Rules are stated for the pair in either order; they are stored canonically.
    void set_commute(OpId a, OpId b);
    void set_commutator(OpId a, OpId b, ScalarPoly value_of_ab);
    void set_commutator(OpId a, OpId b, const OperatorSeries& value_of_ab);

    std::size_t operator_count() const { return op_names_.size(); }
    std::size_t scalar_count() const { return scalar_names_.size(); }

    const std::string& operator_name(OpId id) const { return op_names_.at(id); }
    const std::string& scalar_name(ScalarId id) const { return scalar_names_.at(id); }

    std::optional<OpId> find_operator(const std::string& name) const;
    std::optional<ScalarId> find_scalar(const std::string& name) const;

    OpId operator_id(const std::string& name) const;
    ScalarId scalar_id(const std::string& name) const;

    bool has_rule(OpId a, OpId b) const;
    // Rule for the canonically ordered pair (lo, hi); throws MissingRuleError.
    const PairRule& rule(OpId lo, OpId hi) const;
    // True when the two operators commute according to the table (or are equal).
    bool commutes(OpId a, OpId b) const;

  private:
    SymbolTable() = default;
    static void check_name(const std::string& name);

    std::vector<std::string> op_names_;
    std::vector<std::string> scalar_names_;
    std::map<std::string, OpId> op_ids_;
    std::map<std::string, ScalarId> scalar_ids_;
    std::map<std::pair<OpId, OpId>, PairRule> rules_;
};

}  // namespace relqm::opalg
