#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairaudit/bootstrap.hpp"

namespace fairaudit {

enum class RenderFormat { Table, Json, Markdown };

RenderFormat parse_render_format(const std::string& name);  // "table" | "json" | "markdown"

struct ReportMetadata {
    double cutoff = 0.5;
    double alpha = 0.05;
    std::uint32_t n_boot = 1000;
    std::uint64_t seed = 42;
    std::array<std::string, 2> group_labels;
    std::optional<std::string> condition;  // e.g. "age >= 60"
    std::size_t n = 0;
    std::array<std::size_t, 2> group_sizes = {0, 0};
};

// One criterion in the combined report. The performance panel draws on
// `point` (per-group values); the fairness panel on `inference`. A metric
// whose inference failed keeps its row, with the failure recorded.
struct ReportRow {
    MetricId metric;
    std::optional<GroupStatistic> point;
    std::optional<MetricResult> inference;
    std::optional<ErrorCode> error;
    std::string error_message;
};

struct FairnessReport {
    ReportMetadata metadata;
    std::vector<ReportRow> rows;  // fixed criterion order; 11 with a condition, 10 without
};

// Runs every criterion through the bootstrap (conditional statistical
// parity only when a condition is supplied). Table-level errors throw;
// metric-level failures degrade to undefined rows.
FairnessReport get_fairness_metrics(const AuditTable& t, const CutoffRule& rule,
                                    const std::optional<ConditionOn>& cond,
                                    const BootstrapConfig& cfg, unsigned threads = 0);

struct SingleEvaluation {
    ReportMetadata metadata;
    MetricResult result;
    std::string verdict;
};

SingleEvaluation eval_single(const AuditTable& t, MetricId id, const CutoffRule& rule,
                             const std::optional<ConditionOn>& cond, const BootstrapConfig& cfg,
                             unsigned threads = 0);

// "There is evidence that the model does not satisfy <criterion>." when
// either significance flag is set, else the insufficient-evidence form.
std::string verdict_sentence(MetricId id, bool significant);

std::string render(const FairnessReport& report, RenderFormat format);
std::string render_single(const SingleEvaluation& eval, RenderFormat format);

}  // namespace fairaudit
