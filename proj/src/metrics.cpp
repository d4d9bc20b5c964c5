#include "fairaudit/metrics.hpp"

#include <cctype>

namespace fairaudit {

const char* metric_key(MetricId id) {
    switch (id) {
        case MetricId::StatisticalParity: return "statistical_parity";
        case MetricId::ConditionalStatisticalParity: return "conditional_statistical_parity";
        case MetricId::EqualOpportunity: return "equal_opportunity";
        case MetricId::PredictiveEquality: return "predictive_equality";
        case MetricId::BalancePositiveClass: return "balance_positive_class";
        case MetricId::BalanceNegativeClass: return "balance_negative_class";
        case MetricId::PositivePredictiveParity: return "positive_predictive_parity";
        case MetricId::NegativePredictiveParity: return "negative_predictive_parity";
        case MetricId::BrierScoreParity: return "brier_score_parity";
        case MetricId::AccuracyParity: return "accuracy_parity";
        case MetricId::TreatmentEquality: return "treatment_equality";
    }
    return "?";
}

const char* metric_fairness_name(MetricId id) {
    switch (id) {
        case MetricId::StatisticalParity: return "Statistical Parity";
        case MetricId::ConditionalStatisticalParity: return "Conditional Statistical Parity";
        case MetricId::EqualOpportunity: return "Equal Opportunity";
        case MetricId::PredictiveEquality: return "Predictive Equality";
        case MetricId::BalancePositiveClass: return "Balance for Positive Class";
        case MetricId::BalanceNegativeClass: return "Balance for Negative Class";
        case MetricId::PositivePredictiveParity: return "Positive Predictive Parity";
        case MetricId::NegativePredictiveParity: return "Negative Predictive Parity";
        case MetricId::BrierScoreParity: return "Brier Score Parity";
        case MetricId::AccuracyParity: return "Overall Accuracy Parity";
        case MetricId::TreatmentEquality: return "Treatment Equality";
    }
    return "?";
}

const char* metric_performance_name(MetricId id) {
    switch (id) {
        case MetricId::StatisticalParity:
        case MetricId::ConditionalStatisticalParity: return "Positive Prediction Rate";
        case MetricId::EqualOpportunity: return "False Negative Rate";
        case MetricId::PredictiveEquality: return "False Positive Rate";
        case MetricId::BalancePositiveClass:
        case MetricId::BalanceNegativeClass: return "Avg. Predicted Prob.";
        case MetricId::PositivePredictiveParity: return "Positive Predictive Value";
        case MetricId::NegativePredictiveParity: return "Negative Predictive Value";
        case MetricId::BrierScoreParity: return "Brier Score";
        case MetricId::AccuracyParity: return "Accuracy";
        case MetricId::TreatmentEquality: return "(False Negative)/(False Positive) Ratio";
    }
    return "?";
}

std::string metric_criterion_phrase(MetricId id) {
    // Lowercase the display name except the proper noun in "Brier Score".
    if (id == MetricId::BrierScoreParity) return "Brier score parity";
    std::string s = metric_fairness_name(id);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<MetricId> parse_metric(const std::string& key) {
    for (MetricId id : kAllMetrics)
        if (key == metric_key(id)) return id;
    return std::nullopt;
}

bool metric_cutoff_independent(MetricId id) {
    return id == MetricId::BalancePositiveClass || id == MetricId::BalanceNegativeClass ||
           id == MetricId::BrierScoreParity;
}

kernels::TableView view_of(const AuditTable& t) {
    return kernels::TableView{t.prob_column().data(), t.outcome_column().data(),
                              t.group_column().data(), t.n()};
}

namespace {

// value = num/den when den > 0, else undefined.
void set_ratio(GroupStatistic& stat, int g, double num, double den) {
    if (den > 0.0) {
        stat.value[g] = num / den;
        stat.defined[g] = true;
    }
}

}  // namespace

GroupStatistic stat_from_accums(MetricId id, const std::array<kernels::GroupAccum, 2>& acc) {
    GroupStatistic stat;
    stat.metric = id;
    for (int g = 0; g < 2; ++g) {
        const kernels::GroupAccum& a = acc[g];
        switch (id) {
            case MetricId::StatisticalParity:
            case MetricId::ConditionalStatisticalParity:
                set_ratio(stat, g, a.count_pred_pos, a.count);
                break;
            case MetricId::EqualOpportunity:
                set_ratio(stat, g, a.fn(), a.count_pos);
                break;
            case MetricId::PredictiveEquality:
                set_ratio(stat, g, a.fp(), a.count_neg());
                break;
            case MetricId::BalancePositiveClass:
                set_ratio(stat, g, a.sum_prob_pos, a.count_pos);
                break;
            case MetricId::BalanceNegativeClass:
                set_ratio(stat, g, a.sum_prob_neg, a.count_neg());
                break;
            case MetricId::PositivePredictiveParity:
                set_ratio(stat, g, a.tp, a.count_pred_pos);
                break;
            case MetricId::NegativePredictiveParity:
                set_ratio(stat, g, a.tn(), a.count - a.count_pred_pos);
                break;
            case MetricId::BrierScoreParity:
                set_ratio(stat, g, a.sum_sq_err, a.count);
                break;
            case MetricId::AccuracyParity:
                set_ratio(stat, g, a.tp + a.tn(), a.count);
                break;
            case MetricId::TreatmentEquality:
                set_ratio(stat, g, a.fn(), a.fp());
                break;
        }
    }
    return stat;
}

std::array<ConfusionCounts, 2> confusion_counts(const AuditTable& t, const CutoffRule& rule) {
    auto acc = kernels::accumulate(view_of(t), rule.cutoff);
    std::array<ConfusionCounts, 2> counts;
    for (int g = 0; g < 2; ++g) {
        counts[g].tp = static_cast<std::uint64_t>(acc[g].tp);
        counts[g].fp = static_cast<std::uint64_t>(acc[g].fp());
        counts[g].tn = static_cast<std::uint64_t>(acc[g].tn());
        counts[g].fn = static_cast<std::uint64_t>(acc[g].fn());
    }
    return counts;
}

namespace {

GroupStatistic compute(const AuditTable& t, MetricId id, double cutoff) {
    return stat_from_accums(id, kernels::accumulate(view_of(t), cutoff));
}

}  // namespace

GroupStatistic statistical_parity(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::StatisticalParity, rule.cutoff);
}

GroupStatistic conditional_statistical_parity(const AuditTable& t, const std::string& col,
                                              const ConditionSpec& c, const CutoffRule& rule) {
    AuditTable sub = filter_rows(t, col, c);
    return compute(sub, MetricId::ConditionalStatisticalParity, rule.cutoff);
}

GroupStatistic equal_opportunity(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::EqualOpportunity, rule.cutoff);
}

GroupStatistic predictive_equality(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::PredictiveEquality, rule.cutoff);
}

GroupStatistic balance_positive_class(const AuditTable& t) {
    return compute(t, MetricId::BalancePositiveClass, 0.5);
}

GroupStatistic balance_negative_class(const AuditTable& t) {
    return compute(t, MetricId::BalanceNegativeClass, 0.5);
}

GroupStatistic positive_predictive_parity(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::PositivePredictiveParity, rule.cutoff);
}

GroupStatistic negative_predictive_parity(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::NegativePredictiveParity, rule.cutoff);
}

GroupStatistic brier_score_parity(const AuditTable& t) {
    return compute(t, MetricId::BrierScoreParity, 0.5);
}

GroupStatistic accuracy_parity(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::AccuracyParity, rule.cutoff);
}

GroupStatistic treatment_equality(const AuditTable& t, const CutoffRule& rule) {
    return compute(t, MetricId::TreatmentEquality, rule.cutoff);
}

GroupStatistic group_statistic(const AuditTable& t, MetricId id, const CutoffRule& rule,
                               const std::optional<std::pair<std::string, ConditionSpec>>& cond) {
    if (id == MetricId::ConditionalStatisticalParity) {
        if (!cond)
            throw AuditError(ErrorCode::InvalidConfig,
                             "conditional statistical parity requires a condition");
        return conditional_statistical_parity(t, cond->first, cond->second, rule);
    }
    return compute(t, id, rule.cutoff);
}

}  // namespace fairaudit
