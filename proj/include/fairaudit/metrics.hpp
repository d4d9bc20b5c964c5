#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/kernels.hpp"
#include "fairaudit/table.hpp"

namespace fairaudit {

// The eleven group fairness criteria, in report order.
enum class MetricId {
    StatisticalParity = 0,
    ConditionalStatisticalParity,
    EqualOpportunity,         // false negative rates
    PredictiveEquality,       // false positive rates
    BalancePositiveClass,     // mean predicted prob among positives
    BalanceNegativeClass,     // mean predicted prob among negatives
    PositivePredictiveParity,
    NegativePredictiveParity,
    BrierScoreParity,
    AccuracyParity,
    TreatmentEquality,        // FN / FP ratio
};

inline constexpr std::array<MetricId, 11> kAllMetrics = {
    MetricId::StatisticalParity,       MetricId::ConditionalStatisticalParity,
    MetricId::EqualOpportunity,        MetricId::PredictiveEquality,
    MetricId::BalancePositiveClass,    MetricId::BalanceNegativeClass,
    MetricId::PositivePredictiveParity, MetricId::NegativePredictiveParity,
    MetricId::BrierScoreParity,        MetricId::AccuracyParity,
    MetricId::TreatmentEquality,
};

const char* metric_key(MetricId id);            // CLI / JSON identifier
const char* metric_fairness_name(MetricId id);  // e.g. "Statistical Parity"
const char* metric_performance_name(MetricId id);  // e.g. "Positive Prediction Rate"
std::string metric_criterion_phrase(MetricId id);  // lowercase, for verdicts
std::optional<MetricId> parse_metric(const std::string& key);

// True for metrics whose value ignores the classification cutoff.
bool metric_cutoff_independent(MetricId id);

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::uint64_t total() const { return tp + fp + tn + fn; }
};

// Per-group point values of one criterion. A group's value is undefined
// (defined flag false) when its denominator is zero; values are never NaN.
struct GroupStatistic {
    MetricId metric;
    std::array<double, 2> value = {0.0, 0.0};
    std::array<bool, 2> defined = {false, false};
};

// One criterion from two accumulators. The single evaluation path shared by
// point estimates and bootstrap replicates.
GroupStatistic stat_from_accums(MetricId id, const std::array<kernels::GroupAccum, 2>& acc);

kernels::TableView view_of(const AuditTable& t);

std::array<ConfusionCounts, 2> confusion_counts(const AuditTable& t, const CutoffRule& rule);

GroupStatistic statistical_parity(const AuditTable& t, const CutoffRule& rule);
GroupStatistic conditional_statistical_parity(const AuditTable& t, const std::string& col,
                                              const ConditionSpec& c, const CutoffRule& rule);
GroupStatistic equal_opportunity(const AuditTable& t, const CutoffRule& rule);
GroupStatistic predictive_equality(const AuditTable& t, const CutoffRule& rule);
GroupStatistic balance_positive_class(const AuditTable& t);
GroupStatistic balance_negative_class(const AuditTable& t);
GroupStatistic positive_predictive_parity(const AuditTable& t, const CutoffRule& rule);
GroupStatistic negative_predictive_parity(const AuditTable& t, const CutoffRule& rule);
GroupStatistic brier_score_parity(const AuditTable& t);
GroupStatistic accuracy_parity(const AuditTable& t, const CutoffRule& rule);
GroupStatistic treatment_equality(const AuditTable& t, const CutoffRule& rule);

// Uniform entry point; conditional parity needs `col`+`cond`.
GroupStatistic group_statistic(const AuditTable& t, MetricId id, const CutoffRule& rule,
                               const std::optional<std::pair<std::string, ConditionSpec>>& cond =
                                   std::nullopt);

}  // namespace fairaudit
