#include <vector>

#include "relqm/opalg/series.hpp"

namespace relqm::opalg {

namespace {

// Guard against a rewrite system that fails to terminate (possible only with
// pathological user-supplied series rules).
constexpr std::size_t kMaxRewriteSteps = 20'000'000;

struct WorkItem {
    ScalarPoly coeff;
    int eps;
    std::vector<OpId> word;  // fully expanded, one entry per operator power
};

void flatten_into(std::vector<OpId>& flat, const std::vector<std::pair<OpId, int>>& factors) {
    for (const auto& [op, p] : factors) {
        if (p < 0) throw AlgebraError("negative operator power in monomial");
        for (int k = 0; k < p; ++k) flat.push_back(op);
    }
}

std::vector<std::pair<OpId, int>> merge_powers(const std::vector<OpId>& word) {
    std::vector<std::pair<OpId, int>> out;
    for (OpId op : word) {
        if (!out.empty() && out.back().first == op) {
            ++out.back().second;
        } else {
            out.emplace_back(op, 1);
        }
    }
    return out;
}

}  // namespace

// Rewrites coeff * eps^k * word to canonical order by adjacent
// transpositions: whenever two neighbours sit in reverse canonical order,
// A B -> B A - [B, A], splitting the term. Scalar-valued rules strictly
// reduce either the inversion count or the word length, so the queue drains.
void OperatorSeries::add_word(ScalarPoly coeff, int eps_power,
                              const std::vector<std::pair<OpId, int>>& word) {
    if (!table_) throw AlgebraError("series has no symbol table");
    if (coeff.is_zero()) return;

    // Truncation pruning mid-rewrite is only sound when no series rule can
    // lower the eps grade of a term.
    bool can_prune = true;
    for (std::size_t a = 0; a < table_->operator_count() && can_prune; ++a) {
        for (std::size_t b = a + 1; b < table_->operator_count(); ++b) {
            if (!table_->has_rule(static_cast<OpId>(a), static_cast<OpId>(b))) continue;
            const PairRule& r = table_->rule(static_cast<OpId>(a), static_cast<OpId>(b));
            if (r.kind == PairRule::Kind::series && !r.series->is_zero() &&
                r.series->min_eps() < 0) {
                can_prune = false;
                break;
            }
        }
    }

    std::vector<WorkItem> queue;
    {
        WorkItem first{std::move(coeff), eps_power, {}};
        flatten_into(first.word, word);
        queue.push_back(std::move(first));
    }

    std::size_t steps = 0;
    while (!queue.empty()) {
        WorkItem item = std::move(queue.back());
        queue.pop_back();
        if (++steps > kMaxRewriteSteps)
            throw AlgebraError("normal ordering did not terminate; series rules do not "
                               "form a reducing rewrite system");
        if (can_prune && trunc_ && item.eps > *trunc_) {
            lossy_ = true;
            continue;
        }

        bool split = false;
        for (std::size_t i = 0; i + 1 < item.word.size(); ++i) {
            OpId a = item.word[i];
            OpId b = item.word[i + 1];
            if (a <= b) continue;

            // a > b, so the stored rule is for (b, a): [b, a] = R, and
            // a b = b a + [a, b] = b a - R.
            const PairRule& r = table_->rule(b, a);

            switch (r.kind) {
                case PairRule::Kind::commute:
                    break;
                case PairRule::Kind::scalar:
                    if (!r.scalar.is_zero()) {
                        WorkItem extra;
                        extra.coeff = item.coeff * (-r.scalar);
                        extra.eps = item.eps;
                        extra.word.assign(item.word.begin(), item.word.begin() + i);
                        extra.word.insert(extra.word.end(), item.word.begin() + i + 2,
                                          item.word.end());
                        queue.push_back(std::move(extra));
                    }
                    break;
                case PairRule::Kind::series:
                    for (const auto& [mono, c] : r.series->terms()) {
                        WorkItem extra;
                        extra.coeff = item.coeff * (-c);
                        extra.eps = item.eps + mono.eps;
                        extra.word.assign(item.word.begin(), item.word.begin() + i);
                        flatten_into(extra.word, mono.factors);
                        extra.word.insert(extra.word.end(), item.word.begin() + i + 2,
                                          item.word.end());
                        queue.push_back(std::move(extra));
                    }
                    break;
            }

            std::swap(item.word[i], item.word[i + 1]);
            queue.push_back(std::move(item));
            split = true;
            break;
        }

        if (!split) insert(Monomial{item.eps, merge_powers(item.word)}, std::move(item.coeff));
    }
}

OperatorSeries normal_order(std::shared_ptr<const SymbolTable> table, ScalarPoly coeff,
                            int eps_power, const std::vector<std::pair<OpId, int>>& word,
                            std::optional<int> truncation) {
    OperatorSeries out(std::move(table), truncation);
    out.add_word(std::move(coeff), eps_power, word);
    return out;
}

}  // namespace relqm::opalg
