#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairaudit/metrics.hpp"
#include "fairaudit/table.hpp"

namespace fairaudit {

struct BootstrapConfig {
    std::uint32_t n_boot = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 42;
    // Fraction of replicates allowed to be dropped (undefined statistic or
    // vanished group) before the estimate is refused outright.
    double max_degenerate_fraction = 0.10;
};

BootstrapConfig make_bootstrap_config(std::uint32_t n_boot, double alpha, std::uint64_t seed,
                                      double max_degenerate_fraction = 0.10);

struct EstimateWithCI {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::uint32_t n_effective = 0;  // replicates retained for the CI
};

// One criterion with bootstrap inference. `ratio_defined` is false when the
// reference group's point value is zero; the difference estimand is then
// still reported.
struct MetricResult {
    MetricId metric;
    GroupStatistic group_stat;
    EstimateWithCI difference;
    EstimateWithCI ratio;
    bool ratio_defined = false;
    bool diff_significant = false;   // 0 outside the difference CI
    bool ratio_significant = false;  // 1 outside the ratio CI
};

using ConditionOn = std::pair<std::string, ConditionSpec>;

// The n resample indices for one replicate: i.i.d. uniform draws with
// replacement from [0, n), fully determined by (cfg.seed, replicate_id).
std::vector<std::uint32_t> resample_indices(std::uint32_t n, std::uint32_t replicate_id,
                                            const BootstrapConfig& cfg);

// Empirical (alpha/2, 1 - alpha/2) quantiles with linear interpolation
// between order statistics: q(p) sits at rank (m-1)*p of the sorted values.
std::pair<double, double> percentile_ci(std::span<const double> values, double alpha);

MetricResult bootstrap_metric(const AuditTable& t, MetricId id, const CutoffRule& rule,
                              const std::optional<ConditionOn>& cond, const BootstrapConfig& cfg,
                              unsigned threads = 0);  // 0: hardware concurrency

// Batch form used by the combined report: one resampling sweep shared by
// all requested metrics (replicate streams do not depend on the metric, so
// single-metric runs reproduce the same numbers). Per-metric failures are
// returned, not thrown.
struct MetricOutcome {
    MetricId metric;
    std::optional<GroupStatistic> point;  // set whenever the point values were computable
    std::optional<MetricResult> result;
    std::optional<ErrorCode> error;
    std::string error_message;
};

std::vector<MetricOutcome> bootstrap_metrics(const AuditTable& t,
                                             std::span<const MetricId> metrics,
                                             const CutoffRule& rule,
                                             const std::optional<ConditionOn>& cond,
                                             const BootstrapConfig& cfg, unsigned threads = 0);

bool ci_excludes(double lower, double upper, double null_value);

}  // namespace fairaudit
