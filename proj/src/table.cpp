#include "fairaudit/table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

namespace fairaudit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::MissingValue: return "MissingValue";
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::NonBinaryOutcome: return "NonBinaryOutcome";
        case ErrorCode::ProbOutOfRange: return "ProbOutOfRange";
        case ErrorCode::GroupCardinality: return "GroupCardinality";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::UnparsableCondition: return "UnparsableCondition";
        case ErrorCode::ConditionTypeMismatch: return "ConditionTypeMismatch";
        case ErrorCode::EmptySubgroup: return "EmptySubgroup";
        case ErrorCode::InvalidPlantedParameters: return "InvalidPlantedParameters";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::UndefinedPointEstimate: return "UndefinedPointEstimate";
        case ErrorCode::TooManyDegenerateReplicates: return "TooManyDegenerateReplicates";
        case ErrorCode::EmptyReplicateSet: return "EmptyReplicateSet";
    }
    return "UnknownError";
}

bool is_inference_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::UndefinedPointEstimate:
        case ErrorCode::TooManyDegenerateReplicates:
        case ErrorCode::EmptyReplicateSet:
            return true;
        default:
            return false;
    }
}

CutoffRule make_cutoff(double cutoff) {
    if (!(cutoff >= 0.0 && cutoff <= 1.0))
        throw AuditError(ErrorCode::InvalidConfig,
                         "cutoff must lie in [0, 1], got " + std::to_string(cutoff));
    return CutoffRule{cutoff};
}

namespace {

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

const char* op_text(ConditionOp op) {
    switch (op) {
        case ConditionOp::Lt: return "<";
        case ConditionOp::Le: return "<=";
        case ConditionOp::Gt: return ">";
        case ConditionOp::Ge: return ">=";
        case ConditionOp::Eq: return "==";
        case ConditionOp::Ne: return "!=";
    }
    return "?";
}

bool is_ordering(ConditionOp op) {
    return op == ConditionOp::Lt || op == ConditionOp::Le || op == ConditionOp::Gt ||
           op == ConditionOp::Ge;
}

bool apply_op_num(ConditionOp op, double lhs, double rhs) {
    switch (op) {
        case ConditionOp::Lt: return lhs < rhs;
        case ConditionOp::Le: return lhs <= rhs;
        case ConditionOp::Gt: return lhs > rhs;
        case ConditionOp::Ge: return lhs >= rhs;
        case ConditionOp::Eq: return lhs == rhs;
        case ConditionOp::Ne: return lhs != rhs;
    }
    return false;
}

}  // namespace

std::string ConditionSpec::describe() const {
    return std::string(op_text(op)) + " " + str_value;
}

ConditionSpec parse_condition(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;

    ConditionOp op;
    if (text.compare(i, 2, "<=") == 0) { op = ConditionOp::Le; i += 2; }
    else if (text.compare(i, 2, ">=") == 0) { op = ConditionOp::Ge; i += 2; }
    else if (text.compare(i, 2, "==") == 0) { op = ConditionOp::Eq; i += 2; }
    else if (text.compare(i, 2, "!=") == 0) { op = ConditionOp::Ne; i += 2; }
    else if (i < text.size() && text[i] == '<') { op = ConditionOp::Lt; i += 1; }
    else if (i < text.size() && text[i] == '>') { op = ConditionOp::Gt; i += 1; }
    else
        throw AuditError(ErrorCode::UnparsableCondition,
                         "expected an operator (<, <=, >, >=, ==, !=) in \"" + text + "\"");

    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string literal = text.substr(i);
    while (!literal.empty() && std::isspace(static_cast<unsigned char>(literal.back())))
        literal.pop_back();
    if (literal.empty())
        throw AuditError(ErrorCode::UnparsableCondition, "missing literal in \"" + text + "\"");

    ConditionSpec spec;
    spec.op = op;
    spec.str_value = literal;
    spec.numeric = parse_number(literal, spec.num_value);
    if (is_ordering(op) && !spec.numeric)
        throw AuditError(ErrorCode::UnparsableCondition,
                         "operator " + std::string(op_text(op)) +
                             " requires a numeric literal, got \"" + literal + "\"");
    return spec;
}

AuditTable::AuditTable(std::vector<double> outcome,
                       std::vector<std::string> group,
                       std::vector<double> prob,
                       std::map<std::string, ExtraColumn> extras,
                       std::array<std::string, 3> column_names,
                       const std::optional<std::string>& reference_group)
    : outcome_(std::move(outcome)),
      prob_(std::move(prob)),
      extras_(std::move(extras)),
      column_names_(std::move(column_names)) {
    const std::size_t n = prob_.size();
    if (n == 0)
        throw AuditError(ErrorCode::EmptyInput, "table has no rows");
    if (outcome_.size() != n || group.size() != n)
        throw AuditError(ErrorCode::MalformedInput, "column lengths differ");
    if (n < 2)
        throw AuditError(ErrorCode::GroupCardinality,
                         "need at least 2 rows to cover two groups");

    for (std::size_t i = 0; i < n; ++i) {
        if (outcome_[i] != 0.0 && outcome_[i] != 1.0)
            throw AuditError(ErrorCode::NonBinaryOutcome,
                             "outcome must be 0 or 1 at row " + std::to_string(i + 1));
        if (!(prob_[i] >= 0.0 && prob_[i] <= 1.0))
            throw AuditError(ErrorCode::ProbOutOfRange,
                             "probability " + std::to_string(prob_[i]) +
                                 " outside [0, 1] at row " + std::to_string(i + 1));
    }

    std::set<std::string> labels(group.begin(), group.end());
    if (labels.size() != 2)
        throw AuditError(ErrorCode::GroupCardinality,
                         "expected exactly 2 distinct group labels, found " +
                             std::to_string(labels.size()));
    group_labels_[0] = *labels.begin();
    group_labels_[1] = *std::next(labels.begin());
    if (reference_group) {
        if (*reference_group == group_labels_[1])
            std::swap(group_labels_[0], group_labels_[1]);
        else if (*reference_group != group_labels_[0])
            throw AuditError(ErrorCode::InvalidConfig,
                             "reference group \"" + *reference_group +
                                 "\" is not one of the table's group labels");
    }

    group_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        group_[i] = (group[i] == group_labels_[0]) ? 0.0 : 1.0;

    for (const auto& [name, col] : extras_)
        if (col.size() != n)
            throw AuditError(ErrorCode::MalformedInput,
                             "extra column \"" + name + "\" has wrong length");
}

const ExtraColumn& AuditTable::extra(const std::string& name) const {
    auto it = extras_.find(name);
    if (it == extras_.end())
        throw AuditError(ErrorCode::MissingColumn, "no column named \"" + name + "\"");
    return it->second;
}

std::vector<std::uint32_t> condition_mask(const AuditTable& t, const std::string& col,
                                          const ConditionSpec& c) {
    const ExtraColumn& column = t.extra(col);
    const std::size_t n = t.n();
    std::vector<std::uint32_t> mask(n, 0);

    if (column.numeric) {
        if (!c.numeric)
            throw AuditError(ErrorCode::ConditionTypeMismatch,
                             "column \"" + col + "\" is numeric but literal \"" +
                                 c.str_value + "\" is not");
        for (std::size_t i = 0; i < n; ++i)
            mask[i] = apply_op_num(c.op, column.nums[i], c.num_value) ? 1u : 0u;
    } else {
        if (is_ordering(c.op))
            throw AuditError(ErrorCode::ConditionTypeMismatch,
                             "ordering comparison on non-numeric column \"" + col + "\"");
        for (std::size_t i = 0; i < n; ++i) {
            bool eq = column.strs[i] == c.str_value;
            mask[i] = (c.op == ConditionOp::Eq ? eq : !eq) ? 1u : 0u;
        }
    }
    return mask;
}

AuditTable filter_rows(const AuditTable& t, const std::string& col, const ConditionSpec& c) {
    std::vector<std::uint32_t> mask = condition_mask(t, col, c);

    std::vector<double> outcome, prob;
    std::vector<std::string> group;
    for (std::size_t i = 0; i < t.n(); ++i) {
        if (!mask[i]) continue;
        outcome.push_back(t.outcome_column()[i]);
        prob.push_back(t.prob_column()[i]);
        group.push_back(t.group_label(t.group_index(i)));
    }
    if (prob.empty())
        throw AuditError(ErrorCode::EmptySubgroup,
                         "no rows satisfy condition " + c.describe() + " on \"" + col + "\"");

    std::map<std::string, ExtraColumn> extras;
    for (const auto& [name, src] : t.extras()) {
        ExtraColumn sub;
        sub.numeric = src.numeric;
        for (std::size_t i = 0; i < t.n(); ++i) {
            if (!mask[i]) continue;
            if (src.numeric) sub.nums.push_back(src.nums[i]);
            else sub.strs.push_back(src.strs[i]);
        }
        extras.emplace(name, std::move(sub));
    }

    bool seen[2] = {false, false};
    for (std::size_t i = 0; i < t.n(); ++i)
        if (mask[i]) seen[t.group_index(i)] = true;
    if (!seen[0] || !seen[1])
        throw AuditError(ErrorCode::GroupCardinality,
                         "group \"" + t.group_label(seen[0] ? 1 : 0) +
                             "\" has no rows after conditioning");

    // Keep the parent's group order; both labels survived, so the reference
    // override is inherited verbatim.
    return AuditTable(std::move(outcome), std::move(group), std::move(prob),
                      std::move(extras), t.column_names(), t.group_label(0));
}

std::vector<std::uint8_t> classify(const AuditTable& t, const CutoffRule& rule) {
    std::vector<std::uint8_t> pred(t.n());
    for (std::size_t i = 0; i < t.n(); ++i)
        pred[i] = t.prob(i) >= rule.cutoff ? 1 : 0;
    return pred;
}

}  // namespace fairaudit
