#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/error.hpp"

namespace fairaudit {

// Extra (non-mapped) column kept for conditioning. A column is numeric when
// every value parses as a number; otherwise every value is kept as text.
struct ExtraColumn {
    bool numeric = false;
    std::vector<double> nums;
    std::vector<std::string> strs;

    std::size_t size() const { return numeric ? nums.size() : strs.size(); }
};

struct CutoffRule {
    double cutoff = 0.5;
};

CutoffRule make_cutoff(double cutoff);  // validates 0 <= cutoff <= 1

enum class ConditionOp { Lt, Le, Gt, Ge, Eq, Ne };

struct ConditionSpec {
    ConditionOp op;
    bool numeric = false;   // literal parsed as a number
    double num_value = 0.0;
    std::string str_value;  // original literal text

    std::string describe() const;  // e.g. ">= 60"
};

// Parses "<op><literal>" or "<op> <literal>", e.g. ">=60" or "== Male".
// Ordering operators require a numeric literal.
ConditionSpec parse_condition(const std::string& text);

// Validated immutable prediction table. Outcome and group are stored as
// 0.0/1.0 doubles so the compute kernels can consume the columns directly;
// group index 0 is the first label in `group_labels` (lexicographic order
// unless a reference group was forced at load time).
class AuditTable {
public:
    AuditTable(std::vector<double> outcome,
               std::vector<std::string> group,
               std::vector<double> prob,
               std::map<std::string, ExtraColumn> extras = {},
               std::array<std::string, 3> column_names = {"outcome", "group", "prob"},
               const std::optional<std::string>& reference_group = std::nullopt);

    std::size_t n() const { return prob_.size(); }
    double prob(std::size_t i) const { return prob_[i]; }
    int outcome(std::size_t i) const { return static_cast<int>(outcome_[i]); }
    int group_index(std::size_t i) const { return static_cast<int>(group_[i]); }
    const std::string& group_label(int g) const { return group_labels_[g]; }
    const std::array<std::string, 2>& group_labels() const { return group_labels_; }
    const std::array<std::string, 3>& column_names() const { return column_names_; }

    const std::vector<double>& prob_column() const { return prob_; }
    const std::vector<double>& outcome_column() const { return outcome_; }
    const std::vector<double>& group_column() const { return group_; }

    bool has_extra(const std::string& name) const { return extras_.count(name) > 0; }
    const ExtraColumn& extra(const std::string& name) const;
    const std::map<std::string, ExtraColumn>& extras() const { return extras_; }

private:
    std::vector<double> outcome_;  // 0.0 / 1.0
    std::vector<double> group_;    // 0.0 / 1.0 (index into group_labels_)
    std::vector<double> prob_;
    std::array<std::string, 2> group_labels_;
    std::map<std::string, ExtraColumn> extras_;
    std::array<std::string, 3> column_names_;  // outcome, group, prob
};

// Per-row 0/1 mask of rows satisfying the condition on `col`.
std::vector<std::uint32_t> condition_mask(const AuditTable& t, const std::string& col,
                                          const ConditionSpec& c);

// Subtable of rows satisfying the condition; group cardinality is
// revalidated (a vanished group is an error, as is an empty result).
AuditTable filter_rows(const AuditTable& t, const std::string& col, const ConditionSpec& c);

// prediction_i = 1 iff prob_i >= cutoff
std::vector<std::uint8_t> classify(const AuditTable& t, const CutoffRule& rule);

}  // namespace fairaudit
