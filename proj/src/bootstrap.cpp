#include "fairaudit/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fairaudit/rng.hpp"

namespace fairaudit {

namespace {

void validate_config(const BootstrapConfig& cfg) {
    if (cfg.n_boot < 2)
        throw AuditError(ErrorCode::InvalidConfig, "n_boot must be at least 2");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw AuditError(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    if (!(cfg.max_degenerate_fraction >= 0.0 && cfg.max_degenerate_fraction < 1.0))
        throw AuditError(ErrorCode::InvalidConfig,
                         "max_degenerate_fraction must lie in [0, 1)");
}

double quantile_sorted(const std::vector<double>& v, double p) {
    const double rank = static_cast<double>(v.size() - 1) * p;
    const auto idx = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(idx);
    if (idx + 1 >= v.size()) return v.back();
    return v[idx] + frac * (v[idx + 1] - v[idx]);
}

}  // namespace

BootstrapConfig make_bootstrap_config(std::uint32_t n_boot, double alpha, std::uint64_t seed,
                                      double max_degenerate_fraction) {
    BootstrapConfig cfg{n_boot, alpha, seed, max_degenerate_fraction};
    validate_config(cfg);
    return cfg;
}

std::vector<std::uint32_t> resample_indices(std::uint32_t n, std::uint32_t replicate_id,
                                            const BootstrapConfig& cfg) {
    if (n == 0)
        throw AuditError(ErrorCode::EmptyInput, "cannot resample an empty table");
    SplitMix64 rng = stream_rng(cfg.seed, replicate_id);
    std::vector<std::uint32_t> idx(n);
    for (auto& i : idx) i = rng.bounded(n);
    return idx;
}

std::pair<double, double> percentile_ci(std::span<const double> values, double alpha) {
    if (values.empty())
        throw AuditError(ErrorCode::EmptyReplicateSet, "no replicates to take quantiles of");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw AuditError(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return {quantile_sorted(sorted, alpha * 0.5), quantile_sorted(sorted, 1.0 - alpha * 0.5)};
}

bool ci_excludes(double lower, double upper, double null_value) {
    return lower > null_value || upper < null_value;
}

namespace {

struct MetricState {
    MetricId metric;
    bool uses_condition = false;
    bool active = false;  // point estimate succeeded, replicates wanted
    GroupStatistic point;
    double diff_point = 0.0;
    bool ratio_defined = false;
    double ratio_point = 0.0;
    std::vector<double> diff_vals, ratio_vals;
    std::vector<std::uint8_t> diff_ok, ratio_ok;
    MetricOutcome outcome;
};

void replicate_sweep(const kernels::TableView& view, double cutoff,
                     const std::vector<std::uint32_t>& cond_mask,
                     std::vector<MetricState>& states, const BootstrapConfig& cfg,
                     unsigned threads) {
    const std::size_t n = view.n;
    const bool any_plain = std::any_of(states.begin(), states.end(), [](const MetricState& s) {
        return s.active && !s.uses_condition;
    });
    const bool any_cond = std::any_of(states.begin(), states.end(), [](const MetricState& s) {
        return s.active && s.uses_condition;
    });
    if (!any_plain && !any_cond) return;

    auto worker = [&](std::uint32_t first, std::uint32_t last) {
        std::vector<std::uint32_t> mult(n), cond_weights(any_cond ? n : 0);
        for (std::uint32_t r = first; r < last; ++r) {
            SplitMix64 rng = stream_rng(cfg.seed, r);
            std::fill(mult.begin(), mult.end(), 0u);
            for (std::size_t k = 0; k < n; ++k)
                ++mult[rng.bounded(static_cast<std::uint32_t>(n))];

            std::array<kernels::GroupAccum, 2> acc_plain{}, acc_cond{};
            if (any_plain) acc_plain = kernels::accumulate(view, cutoff, mult.data());
            if (any_cond) {
                for (std::size_t i = 0; i < n; ++i) cond_weights[i] = mult[i] * cond_mask[i];
                acc_cond = kernels::accumulate(view, cutoff, cond_weights.data());
            }

            for (MetricState& s : states) {
                if (!s.active) continue;
                GroupStatistic stat =
                    stat_from_accums(s.metric, s.uses_condition ? acc_cond : acc_plain);
                const bool ok = stat.defined[0] && stat.defined[1];
                s.diff_ok[r] = ok;
                if (!ok) continue;
                s.diff_vals[r] = stat.value[0] - stat.value[1];
                if (stat.value[1] > 0.0) {
                    s.ratio_ok[r] = 1;
                    s.ratio_vals[r] = stat.value[0] / stat.value[1];
                }
            }
        }
    };

    unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
    n_threads = std::max(1u, std::min<unsigned>(n_threads, cfg.n_boot));
    if (n_threads == 1) {
        worker(0, cfg.n_boot);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint32_t chunk = (cfg.n_boot + n_threads - 1) / n_threads;
    for (unsigned k = 0; k < n_threads; ++k) {
        const std::uint32_t first = k * chunk;
        const std::uint32_t last = std::min(cfg.n_boot, first + chunk);
        if (first >= last) break;
        pool.emplace_back(worker, first, last);
    }
    for (auto& th : pool) th.join();
}

// Retained values in replicate order; degenerate-drop bookkeeping happens
// against the flags, never against value magnitudes.
std::vector<double> retained(const std::vector<double>& vals,
                             const std::vector<std::uint8_t>& ok) {
    std::vector<double> out;
    out.reserve(vals.size());
    for (std::size_t r = 0; r < vals.size(); ++r)
        if (ok[r]) out.push_back(vals[r]);
    return out;
}

void finalize_metric(MetricState& s, const BootstrapConfig& cfg) {
    if (!s.active) return;

    MetricResult result;
    result.metric = s.metric;
    result.group_stat = s.point;
    result.ratio_defined = s.ratio_defined;

    const double max_dropped = cfg.max_degenerate_fraction * static_cast<double>(cfg.n_boot);

    std::vector<double> diffs = retained(s.diff_vals, s.diff_ok);
    const auto dropped_diff = static_cast<double>(cfg.n_boot - diffs.size());
    if (dropped_diff > max_dropped) {
        s.outcome.error = ErrorCode::TooManyDegenerateReplicates;
        s.outcome.error_message =
            std::to_string(static_cast<std::size_t>(dropped_diff)) + " of " +
            std::to_string(cfg.n_boot) + " replicates degenerate for " + metric_key(s.metric);
        return;
    }
    auto [dlo, dhi] = percentile_ci(diffs, cfg.alpha);
    result.difference = {s.diff_point, dlo, dhi, static_cast<std::uint32_t>(diffs.size())};
    result.diff_significant = ci_excludes(dlo, dhi, 0.0);

    if (s.ratio_defined) {
        std::vector<double> ratios = retained(s.ratio_vals, s.ratio_ok);
        const auto dropped_ratio = static_cast<double>(cfg.n_boot - ratios.size());
        if (dropped_ratio > max_dropped) {
            s.outcome.error = ErrorCode::TooManyDegenerateReplicates;
            s.outcome.error_message =
                std::to_string(static_cast<std::size_t>(dropped_ratio)) + " of " +
                std::to_string(cfg.n_boot) + " ratio replicates degenerate for " +
                metric_key(s.metric);
            return;
        }
        auto [rlo, rhi] = percentile_ci(ratios, cfg.alpha);
        result.ratio = {s.ratio_point, rlo, rhi, static_cast<std::uint32_t>(ratios.size())};
        result.ratio_significant = ci_excludes(rlo, rhi, 1.0);
    }

    s.outcome.result = std::move(result);
}

}  // namespace

std::vector<MetricOutcome> bootstrap_metrics(const AuditTable& t,
                                             std::span<const MetricId> metrics,
                                             const CutoffRule& rule,
                                             const std::optional<ConditionOn>& cond,
                                             const BootstrapConfig& cfg, unsigned threads) {
    validate_config(cfg);
    const kernels::TableView view = view_of(t);

    const bool want_cond =
        std::any_of(metrics.begin(), metrics.end(),
                    [](MetricId id) { return id == MetricId::ConditionalStatisticalParity; });
    std::vector<std::uint32_t> mask;
    if (want_cond && cond) mask = condition_mask(t, cond->first, cond->second);

    const auto acc_full = kernels::accumulate(view, rule.cutoff);
    std::array<kernels::GroupAccum, 2> acc_cond{};
    if (!mask.empty()) acc_cond = kernels::accumulate(view, rule.cutoff, mask.data());

    std::vector<MetricState> states(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        MetricState& s = states[m];
        s.metric = metrics[m];
        s.uses_condition = s.metric == MetricId::ConditionalStatisticalParity;
        s.outcome.metric = s.metric;

        if (s.uses_condition) {
            if (!cond) {
                s.outcome.error = ErrorCode::InvalidConfig;
                s.outcome.error_message = "conditional statistical parity requires a condition";
                continue;
            }
            if (acc_cond[0].count + acc_cond[1].count == 0.0) {
                s.outcome.error = ErrorCode::EmptySubgroup;
                s.outcome.error_message = "no rows satisfy condition " +
                                          cond->second.describe() + " on \"" + cond->first + "\"";
                continue;
            }
            if (acc_cond[0].count == 0.0 || acc_cond[1].count == 0.0) {
                s.outcome.error = ErrorCode::GroupCardinality;
                s.outcome.error_message =
                    "group \"" + t.group_label(acc_cond[0].count == 0.0 ? 0 : 1) +
                    "\" has no rows after conditioning";
                continue;
            }
        }

        s.point = stat_from_accums(s.metric, s.uses_condition ? acc_cond : acc_full);
        s.outcome.point = s.point;
        if (!s.point.defined[0] || !s.point.defined[1]) {
            const int g = s.point.defined[0] ? 1 : 0;
            s.outcome.error = ErrorCode::UndefinedPointEstimate;
            s.outcome.error_message = std::string(metric_key(s.metric)) +
                                      " is undefined for group \"" + t.group_label(g) +
                                      "\" (zero denominator)";
            continue;
        }

        s.active = true;
        s.diff_point = s.point.value[0] - s.point.value[1];
        s.ratio_defined = s.point.value[1] > 0.0;
        if (s.ratio_defined) s.ratio_point = s.point.value[0] / s.point.value[1];
        s.diff_vals.assign(cfg.n_boot, 0.0);
        s.ratio_vals.assign(cfg.n_boot, 0.0);
        s.diff_ok.assign(cfg.n_boot, 0);
        s.ratio_ok.assign(cfg.n_boot, 0);
    }

    replicate_sweep(view, rule.cutoff, mask, states, cfg, threads);

    std::vector<MetricOutcome> outcomes;
    outcomes.reserve(states.size());
    for (MetricState& s : states) {
        finalize_metric(s, cfg);
        outcomes.push_back(std::move(s.outcome));
    }
    return outcomes;
}

MetricResult bootstrap_metric(const AuditTable& t, MetricId id, const CutoffRule& rule,
                              const std::optional<ConditionOn>& cond, const BootstrapConfig& cfg,
                              unsigned threads) {
    const MetricId ids[1] = {id};
    auto outcomes = bootstrap_metrics(t, ids, rule, cond, cfg, threads);
    MetricOutcome& out = outcomes.front();
    if (out.error) throw AuditError(*out.error, out.error_message);
    return std::move(*out.result);
}

}  // namespace fairaudit
