#include "relqm/opalg/symbol_table.hpp"

#include <algorithm>
#include <cctype>

#include "relqm/opalg/series.hpp"

namespace relqm::opalg {

namespace {
bool is_reserved(const std::string& name) {
    return name == "eps" || name == "i" || name == "sqrt_series";
}
}  // namespace

void SymbolTable::check_name(const std::string& name) {
    if (name.empty()) throw AlgebraError("symbol name must be nonempty");
    if (is_reserved(name)) throw AlgebraError("symbol name '" + name + "' is reserved");
    char c0 = name.front();
    if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_'))
        throw AlgebraError("symbol name '" + name + "' must start with a letter");
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            throw AlgebraError("symbol name '" + name + "' has invalid characters");
    }
}

OpId SymbolTable::declare_operator(const std::string& name) {
    check_name(name);
    if (op_ids_.count(name) || scalar_ids_.count(name))
        throw AlgebraError("symbol '" + name + "' already declared");
    OpId id = static_cast<OpId>(op_names_.size());
    op_names_.push_back(name);
    op_ids_.emplace(name, id);
    return id;
}

ScalarId SymbolTable::declare_scalar(const std::string& name) {
    check_name(name);
    if (op_ids_.count(name) || scalar_ids_.count(name))
        throw AlgebraError("symbol '" + name + "' already declared");
    ScalarId id = static_cast<ScalarId>(scalar_names_.size());
    scalar_names_.push_back(name);
    scalar_ids_.emplace(name, id);
    return id;
}

std::optional<OpId> SymbolTable::find_operator(const std::string& name) const {
    auto it = op_ids_.find(name);
    if (it == op_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<ScalarId> SymbolTable::find_scalar(const std::string& name) const {
    auto it = scalar_ids_.find(name);
    if (it == scalar_ids_.end()) return std::nullopt;
    return it->second;
}

OpId SymbolTable::operator_id(const std::string& name) const {
    auto id = find_operator(name);
    if (!id) throw AlgebraError("unknown operator symbol '" + name + "'");
    return *id;
}

ScalarId SymbolTable::scalar_id(const std::string& name) const {
    auto id = find_scalar(name);
    if (!id) throw AlgebraError("unknown scalar symbol '" + name + "'");
    return *id;
}

void SymbolTable::set_commute(OpId a, OpId b) {
    if (a == b) return;
    auto key = std::minmax(a, b);
    rules_[{key.first, key.second}] = PairRule{PairRule::Kind::commute, {}, nullptr};
}

void SymbolTable::set_commutator(OpId a, OpId b, ScalarPoly value_of_ab) {
    if (a == b) throw AlgebraError("commutator of a symbol with itself is zero");
    if (a < b) {
        rules_[{a, b}] = PairRule{PairRule::Kind::scalar, std::move(value_of_ab), nullptr};
    } else {
        rules_[{b, a}] = PairRule{PairRule::Kind::scalar, -value_of_ab, nullptr};
    }
}

void SymbolTable::set_commutator(OpId a, OpId b, const OperatorSeries& value_of_ab) {
    if (a == b) throw AlgebraError("commutator of a symbol with itself is zero");
    auto stored = std::make_shared<OperatorSeries>(a < b ? value_of_ab : -value_of_ab);
    auto key = std::minmax(a, b);
    rules_[{key.first, key.second}] = PairRule{PairRule::Kind::series, {}, std::move(stored)};
}

bool SymbolTable::has_rule(OpId a, OpId b) const {
    if (a == b) return true;
    auto key = std::minmax(a, b);
    return rules_.count({key.first, key.second}) > 0;
}

const PairRule& SymbolTable::rule(OpId lo, OpId hi) const {
    auto it = rules_.find({lo, hi});
    if (it == rules_.end())
        throw MissingRuleError("no commutation rule for (" + operator_name(lo) + ", " +
                               operator_name(hi) + ")");
    return it->second;
}

bool SymbolTable::commutes(OpId a, OpId b) const {
    if (a == b) return true;
    auto key = std::minmax(a, b);
    auto it = rules_.find({key.first, key.second});
    if (it == rules_.end())
        throw MissingRuleError("no commutation rule for (" + operator_name(key.first) + ", " +
                               operator_name(key.second) + ")");
    switch (it->second.kind) {
        case PairRule::Kind::commute:
            return true;
        case PairRule::Kind::scalar:
            return it->second.scalar.is_zero();
        case PairRule::Kind::series:
            return it->second.series->is_zero();
    }
    return false;
}

}  // namespace relqm::opalg
