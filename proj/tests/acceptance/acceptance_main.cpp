// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each check pins the tolerances in code; no thresholds are configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fairaudit/bootstrap.hpp"
#include "fairaudit/cli.hpp"
#include "fairaudit/demo.hpp"
#include "fairaudit/io.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/rng.hpp"

#include "../helpers.hpp"
#include "../oracle.hpp"

using namespace fairaudit;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double ms,
            const std::string& detail) {
    std::printf("%s  %d. %-28s (%.0f ms)%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                ms, detail.empty() ? "" : "  -- ", detail.c_str());
    if (!pass) ++g_failures;
}

void run_criterion(int number, const std::string& name, double budget_ms,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto start = Clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    if (budget_ms > 0 && ms > budget_ms) {
        pass = false;
        detail += " exceeded time budget of " + std::to_string((int)budget_ms) + " ms";
    }
    report(number, name, pass, ms, detail);
}

// Random table with an extra numeric column for conditioning.
AuditTable random_table_with_extra(SplitMix64& rng) {
    const std::size_t n = 4 + rng.bounded(47);
    std::vector<double> outcome(n), prob(n);
    std::vector<std::string> group(n);
    ExtraColumn x;
    x.numeric = true;
    x.nums.resize(n);
    const double pos_rate = rng.next_unit();
    for (std::size_t i = 0; i < n; ++i) {
        group[i] = i == 0 ? "A" : i == 1 ? "B" : (rng.next() & 1 ? "A" : "B");
        outcome[i] = rng.next_unit() < pos_rate ? 1.0 : 0.0;
        prob[i] = rng.bounded(10) == 0 ? (rng.next() & 1 ? 1.0 : 0.0) : rng.next_unit();
        x.nums[i] = rng.bounded(100);
    }
    std::map<std::string, ExtraColumn> extras;
    extras.emplace("x", std::move(x));
    return AuditTable(std::move(outcome), std::move(group), std::move(prob), std::move(extras));
}

bool criterion_oracle_equivalence(std::string& detail) {
    std::vector<kernels::Impl> impls = {kernels::Impl::Scalar};
#if FAIRAUDIT_HAVE_AVX2_KERNEL
    try {
        kernels::select_impl(kernels::Impl::Avx2);
        impls.push_back(kernels::Impl::Avx2);
    } catch (const AuditError&) {
    }
#endif

    long checks = 0, conditional_checks = 0;
    for (kernels::Impl impl : impls) {
        kernels::select_impl(impl);
        SplitMix64 rng(20240801);
        for (int trial = 0; trial < 200; ++trial) {
            AuditTable t = random_table_with_extra(rng);
            const double cutoff = rng.next_unit();
            for (MetricId id : kAllMetrics) {
                if (id == MetricId::ConditionalStatisticalParity) {
                    ConditionSpec c =
                        parse_condition(">=" + std::to_string(rng.bounded(100)));
                    oracle::GroupValues want;
                    GroupStatistic got;
                    try {
                        got = conditional_statistical_parity(t, "x", c, make_cutoff(cutoff));
                    } catch (const AuditError&) {
                        continue;  // empty subgroup or vanished group for this draw
                    }
                    auto mask = condition_mask(t, "x", c);
                    want = oracle::compute(t, id, cutoff, &mask);
                    for (int g = 0; g < 2; ++g) {
                        if (got.defined[g] != want.defined[g]) {
                            detail = "conditional defined-flag mismatch";
                            return false;
                        }
                        if (want.defined[g] &&
                            std::abs(got.value[g] - want.value[g]) > 1e-12) {
                            detail = "conditional value mismatch";
                            return false;
                        }
                    }
                    ++conditional_checks;
                    continue;
                }
                GroupStatistic got = group_statistic(t, id, make_cutoff(cutoff));
                oracle::GroupValues want = oracle::compute(t, id, cutoff);
                for (int g = 0; g < 2; ++g) {
                    if (got.defined[g] != want.defined[g]) {
                        detail = std::string("defined-flag mismatch for ") + metric_key(id);
                        return false;
                    }
                    if (want.defined[g] && std::abs(got.value[g] - want.value[g]) > 1e-12) {
                        detail = std::string("value mismatch for ") + metric_key(id);
                        return false;
                    }
                    ++checks;
                }
            }
        }
    }
    kernels::select_impl(kernels::Impl::Auto);
    detail = std::to_string(checks) + " checks, " + std::to_string(conditional_checks) +
             " conditional, " + std::to_string(impls.size()) + " kernel(s)";
    return checks > 0 && conditional_checks > 100;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12; }

bool criterion_hand_counted_fixture(std::string& detail) {
    AuditTable t = helpers::fixture8(true);
    const CutoffRule rule = make_cutoff(0.5);

    auto counts = confusion_counts(t, rule);
    bool ok = counts[0].tp == 1 && counts[0].fn == 1 && counts[0].fp == 1 &&
              counts[0].tn == 1 && counts[1].tp == 2 && counts[1].fn == 0 &&
              counts[1].fp == 0 && counts[1].tn == 2;

    auto expect = [&](GroupStatistic s, double v0, double v1) {
        ok = ok && s.defined[0] && s.defined[1] && close(s.value[0], v0) &&
             close(s.value[1], v1);
    };
    expect(statistical_parity(t, rule), 0.5, 0.5);
    expect(equal_opportunity(t, rule), 0.5, 0.0);
    expect(predictive_equality(t, rule), 0.5, 0.0);
    expect(balance_positive_class(t), 0.6, 0.7);
    expect(balance_negative_class(t), 0.45, 0.25);
    expect(positive_predictive_parity(t, rule), 0.5, 1.0);
    expect(negative_predictive_parity(t, rule), 0.5, 1.0);
    expect(brier_score_parity(t), 0.2575, 0.0925);
    expect(accuracy_parity(t, rule), 0.5, 1.0);
    expect(conditional_statistical_parity(t, "pick", parse_condition("==1"), rule), 0.5, 1.0);

    GroupStatistic te = treatment_equality(t, rule);
    ok = ok && te.defined[0] && close(te.value[0], 1.0) && !te.defined[1];

    if (!ok) detail = "a fixture value diverged from the hand count";
    return ok;
}

bool criterion_bootstrap_coverage(std::string& detail) {
    DemoParams base;
    base.n = 2000;
    base.base_rate1 = base.base_rate2 = 0.4;
    base.fnr_base = 0.5;
    base.fnr_gap = -0.25;  // planted PPR difference: 0.4 * 0.25 = 0.10
    const double truth = demo_true_ppr(base, 0) - demo_true_ppr(base, 1);

    const int sims = 300;
    int covered = 0;
    for (int s = 0; s < sims; ++s) {
        DemoParams p = base;
        p.seed = 90000 + s;
        AuditTable t = generate_demo_table(p);
        BootstrapConfig cfg = make_bootstrap_config(500, 0.05, 70000 + s);
        MetricResult r =
            bootstrap_metric(t, MetricId::StatisticalParity, make_cutoff(0.5), std::nullopt,
                             cfg);
        if (r.difference.lower <= truth && truth <= r.difference.upper) ++covered;
    }
    const double coverage = double(covered) / sims;
    std::ostringstream msg;
    msg << "coverage " << coverage << " over " << sims << " simulations, truth " << truth;
    detail = msg.str();
    return coverage >= 0.88 && coverage <= 0.99;
}

bool criterion_significance_rule(std::string& detail) {
    SplitMix64 rng(424242);
    int produced = 0, significant_seen = 0, insignificant_seen = 0;
    while (produced < 1000) {
        DemoParams p;
        p.n = 60 + rng.bounded(120);
        p.seed = rng.next();
        p.base_rate1 = p.base_rate2 = 0.3 + 0.4 * rng.next_unit();
        p.fnr_gap = 0.4 * rng.next_unit() - 0.2;
        p.fpr_gap = 0.2 * rng.next_unit() - 0.1;
        AuditTable t = generate_demo_table(p);
        BootstrapConfig cfg = make_bootstrap_config(50, 0.05, rng.next(), 0.5);
        for (MetricId id : kAllMetrics) {
            if (id == MetricId::ConditionalStatisticalParity) continue;
            MetricResult r;
            try {
                r = bootstrap_metric(t, id, make_cutoff(0.5), std::nullopt, cfg);
            } catch (const AuditError&) {
                continue;
            }
            const bool diff_excludes =
                r.difference.lower > 0.0 || r.difference.upper < 0.0;
            if (r.diff_significant != diff_excludes) {
                detail = "difference flag mismatch";
                return false;
            }
            if (r.ratio_defined) {
                const bool ratio_excludes = r.ratio.lower > 1.0 || r.ratio.upper < 1.0;
                if (r.ratio_significant != ratio_excludes) {
                    detail = "ratio flag mismatch";
                    return false;
                }
            }
            (r.diff_significant ? significant_seen : insignificant_seen)++;
            ++produced;
        }
    }
    detail = std::to_string(produced) + " results, " + std::to_string(significant_seen) +
             " significant / " + std::to_string(insignificant_seen) + " not";
    return significant_seen > 0 && insignificant_seen > 0;
}

std::string run_cli_capture(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
}

bool criterion_cli_determinism(std::string& detail) {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "fairaudit_acceptance_demo.csv").string();
    {
        DemoParams p;
        p.n = 1200;
        p.seed = 5;
        p.fnr_gap = 0.12;
        std::ofstream file(path);
        file << generate_demo_csv(p);
    }
    std::vector<std::string> base = {"--input", path,  "--outcome", "y",   "--group",
                                     "g",       "--probs", "p",     "--seed", "17",
                                     "--bootstrap", "400", "--condition-col", "age",
                                     "--condition", ">=60"};
    auto with = [&](std::initializer_list<std::string> tail, int& code) {
        std::vector<std::string> args = base;
        args.insert(args.end(), tail);
        return run_cli_capture(args, code);
    };

    int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    const std::string threads1 = with({"--threads", "1"}, c1);
    const std::string threads8 = with({"--threads", "8"}, c2);
    const std::string rerun = with({"--threads", "1"}, c3);
    const std::string scalar = with({"--threads", "8", "--kernel", "scalar"}, c4);
    std::error_code ec;
    fs::remove(path, ec);

    if (c1 || c2 || c3 || c4) {
        detail = "CLI exited nonzero";
        return false;
    }
    if (threads1 != threads8) {
        detail = "--threads 1 vs 8 outputs differ";
        return false;
    }
    if (threads1 != rerun) {
        detail = "reruns with the same seed differ";
        return false;
    }
    if (threads1 != scalar) {
        detail = "scalar kernel output differs";
        return false;
    }
    detail = std::to_string(threads1.size()) + " bytes, 4 ways identical";
    return true;
}

bool criterion_format_fidelity(std::string& detail) {
    FairnessReport report;
    report.metadata.group_labels = {"Female", "Male"};
    report.metadata.cutoff = 0.41;
    report.metadata.alpha = 0.05;

    ReportRow row;
    row.metric = MetricId::StatisticalParity;
    GroupStatistic stat;
    stat.metric = MetricId::StatisticalParity;
    stat.value = {0.18, 0.09};
    stat.defined = {true, true};
    row.point = stat;
    MetricResult r;
    r.metric = MetricId::StatisticalParity;
    r.group_stat = stat;
    r.difference = {0.08, 0.04, 0.12, 1000};
    r.ratio = {2.0, 1.41, 2.83, 1000};
    r.ratio_defined = true;
    r.diff_significant = r.ratio_significant = true;
    row.inference = r;
    report.rows.push_back(row);

    std::string flat;
    {
        std::string rendered = render(report, RenderFormat::Table);
        bool space = false;
        for (char c : rendered) {
            if (c == ' ' || c == '\n' || c == '\t') {
                if (!flat.empty() && !space) flat += ' ';
                space = true;
            } else {
                flat += c;
                space = false;
            }
        }
    }
    if (flat.find("Statistical Parity 0.08 [0.04, 0.12] 2.00 [1.41, 2.83]") ==
        std::string::npos) {
        detail = "reference fairness row not reproduced: " + flat;
        return false;
    }

    const std::string verdict = verdict_sentence(MetricId::EqualOpportunity, true);
    if (verdict != "There is evidence that the model does not satisfy equal opportunity.") {
        detail = "verdict sentence drifted: " + verdict;
        return false;
    }
    return true;
}

bool criterion_degenerate_inputs(std::string& detail) {
    // (a) three distinct group labels
    try {
        std::istringstream in("y,g,p\n1,A,0.9\n0,B,0.1\n1,C,0.5\n");
        load_table(in, InputFormat::Csv, {"y", "g", "p", {}});
        detail = "three-group input was accepted";
        return false;
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::GroupCardinality) {
            detail = "expected GroupCardinality";
            return false;
        }
    }

    // (b) conditioning that empties the subgroup
    AuditTable aged = helpers::fixture8(true);
    try {
        filter_rows(aged, "pick", parse_condition(">=200"));
        detail = "empty subgroup was accepted";
        return false;
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::EmptySubgroup) {
            detail = "expected EmptySubgroup";
            return false;
        }
    }

    // (c) treatment equality with a zero denominator on the full table
    try {
        BootstrapConfig cfg = make_bootstrap_config(100, 0.05, 2);
        bootstrap_metric(helpers::fixture8(), MetricId::TreatmentEquality, make_cutoff(0.5),
                         std::nullopt, cfg);
        detail = "zero-denominator treatment equality was accepted";
        return false;
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::UndefinedPointEstimate) {
            detail = "expected UndefinedPointEstimate";
            return false;
        }
    }

    // (d) more than 10% degenerate replicates
    std::vector<helpers::Row> rows;
    for (int i = 0; i < 12; ++i) rows.push_back({1, "A", 0.9});
    for (int i = 0; i < 6; ++i) rows.push_back({1, "A", 0.1});
    for (int i = 0; i < 4; ++i) rows.push_back({0, "A", 0.8});
    for (int i = 0; i < 3; ++i) rows.push_back({0, "A", 0.2});
    for (int i = 0; i < 12; ++i) rows.push_back({1, "B", 0.9});
    for (int i = 0; i < 6; ++i) rows.push_back({1, "B", 0.1});
    rows.push_back({0, "B", 0.8});
    for (int i = 0; i < 6; ++i) rows.push_back({0, "B", 0.2});
    try {
        BootstrapConfig cfg = make_bootstrap_config(400, 0.05, 3);
        bootstrap_metric(helpers::make_table(rows), MetricId::TreatmentEquality,
                         make_cutoff(0.5), std::nullopt, cfg);
        detail = "degenerate replicate fraction above the cap was accepted";
        return false;
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::TooManyDegenerateReplicates) {
            detail = "expected TooManyDegenerateReplicates";
            return false;
        }
    }
    return true;
}

bool criterion_property_suite(std::string& detail) {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        AuditTable t = helpers::random_table(rng, 6, 60);
        const double cutoff = rng.next_unit();

        // Label-swap antisymmetry of the point estimates.
        std::vector<helpers::Row> renamed;
        for (std::size_t i = 0; i < t.n(); ++i)
            renamed.push_back({t.outcome(i), t.group_index(i) == 0 ? "Z" : "B", t.prob(i)});
        AuditTable swapped = helpers::make_table(renamed);
        for (MetricId id : kAllMetrics) {
            if (id == MetricId::ConditionalStatisticalParity) continue;
            GroupStatistic a = group_statistic(t, id, make_cutoff(cutoff));
            GroupStatistic b = group_statistic(swapped, id, make_cutoff(cutoff));
            if (a.value[0] != b.value[1] || a.value[1] != b.value[0] ||
                a.defined[0] != b.defined[1] || a.defined[1] != b.defined[0]) {
                detail = std::string("label-swap asymmetry in ") + metric_key(id);
                return false;
            }
            if (a.defined[0] && a.defined[1]) {
                const double diff = a.value[0] - a.value[1];
                const double swapped_diff = b.value[0] - b.value[1];
                if (swapped_diff != -diff) {
                    detail = "difference did not negate under label swap";
                    return false;
                }
            }
        }

        // Cutoff independence of the probability-only metrics.
        for (MetricId id : {MetricId::BalancePositiveClass, MetricId::BalanceNegativeClass,
                            MetricId::BrierScoreParity}) {
            GroupStatistic a = group_statistic(t, id, make_cutoff(rng.next_unit()));
            GroupStatistic b = group_statistic(t, id, make_cutoff(rng.next_unit()));
            for (int g = 0; g < 2; ++g)
                if (a.value[g] != b.value[g] || a.defined[g] != b.defined[g]) {
                    detail = std::string("cutoff dependence in ") + metric_key(id);
                    return false;
                }
        }

        // CI monotonicity in alpha on a fixed replicate set.
        std::vector<double> vals(30 + rng.bounded(200));
        for (auto& v : vals) v = rng.next_unit() * 4.0 - 2.0;
        const double alpha = 0.05 + 0.8 * rng.next_unit();
        const double alpha_small = alpha * (0.1 + 0.8 * rng.next_unit());
        auto [lo, hi] = percentile_ci(vals, alpha);
        auto [lo2, hi2] = percentile_ci(vals, alpha_small);
        if (lo2 > lo || hi2 < hi) {
            detail = "CI narrowed when alpha shrank";
            return false;
        }

        // Accuracy identity.
        GroupStatistic ppr = statistical_parity(t, make_cutoff(cutoff));
        GroupStatistic ppv = positive_predictive_parity(t, make_cutoff(cutoff));
        GroupStatistic npv = negative_predictive_parity(t, make_cutoff(cutoff));
        GroupStatistic acc = accuracy_parity(t, make_cutoff(cutoff));
        for (int g = 0; g < 2; ++g) {
            if (!ppv.defined[g] || !npv.defined[g]) continue;
            const double expect =
                ppr.value[g] * ppv.value[g] + (1.0 - ppr.value[g]) * npv.value[g];
            if (std::abs(acc.value[g] - expect) > 1e-12) {
                detail = "accuracy identity violated";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    std::printf("fairaudit acceptance suite\n");

    run_criterion(1, "oracle equivalence", 5000, criterion_oracle_equivalence);
    run_criterion(2, "hand-counted fixture", 0, criterion_hand_counted_fixture);
    run_criterion(3, "bootstrap coverage", 180000, criterion_bootstrap_coverage);
    run_criterion(4, "significance rule", 0, criterion_significance_rule);
    run_criterion(5, "CLI determinism", 0, criterion_cli_determinism);
    run_criterion(6, "format fidelity", 0, criterion_format_fidelity);
    run_criterion(7, "degenerate-input suite", 0, criterion_degenerate_inputs);
    run_criterion(8, "property suite", 0, criterion_property_suite);

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
