#include "fairaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace fairaudit {

namespace {

constexpr const char* kDash = "—";  // em dash for undefined cells

// Two decimals, half away from zero, -0 normalized.
std::string fmt2(double x) {
    double y = std::copysign(std::round(std::abs(x) * 100.0) / 100.0, x);
    if (y == 0.0) y = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", y);
    return buf;
}

std::string ci2(double lower, double upper) {
    return "[" + fmt2(lower) + ", " + fmt2(upper) + "]";
}

std::string level_label(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", (1.0 - alpha) * 100.0);
    return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
    // Width bookkeeping is in display columns; the em dash is 3 bytes, 1 column.
    std::size_t columns = s.size();
    if (s.find(kDash) != std::string::npos) columns -= 2;
    return columns >= width ? s : std::string(width - columns, ' ') + s;
}

std::string render_aligned(const std::vector<std::vector<std::string>>& grid) {
    std::vector<std::size_t> widths;
    for (const auto& row : grid) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::size_t columns = row[c].size();
            if (row[c].find(kDash) != std::string::npos) columns -= 2;
            widths[c] = std::max(widths[c], columns);
        }
    }
    std::ostringstream out;
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "  " : "") << pad_left(row[c], widths[c]);
        out << '\n';
    }
    return out.str();
}

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << "|";
    for (const auto& h : header) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t c = 0; c < header.size(); ++c) out << (c == 0 ? " --- |" : " ---: |");
    out << '\n';
    for (const auto& row : rows) {
        out << "|";
        for (const auto& cell : row) out << ' ' << cell << " |";
        out << '\n';
    }
    return out.str();
}

std::string preamble(const ReportMetadata& m) {
    std::ostringstream out;
    out << "cutoff: " << fmt2(m.cutoff) << "  alpha: " << m.alpha << "  bootstrap: " << m.n_boot
        << "  seed: " << m.seed << '\n';
    out << "groups: " << m.group_labels[0] << " (n=" << m.group_sizes[0] << ") vs "
        << m.group_labels[1] << " (n=" << m.group_sizes[1] << ")\n";
    if (m.condition) out << "condition: " << *m.condition << '\n';
    return out.str();
}

struct FairnessCells {
    std::string diff, diff_ci, ratio, ratio_ci;
};

FairnessCells fairness_cells(const ReportRow& row) {
    FairnessCells cells{kDash, kDash, kDash, kDash};
    if (!row.inference) return cells;
    const MetricResult& r = *row.inference;
    cells.diff = fmt2(r.difference.point);
    cells.diff_ci = ci2(r.difference.lower, r.difference.upper);
    if (r.ratio_defined) {
        cells.ratio = fmt2(r.ratio.point);
        cells.ratio_ci = ci2(r.ratio.lower, r.ratio.upper);
    }
    return cells;
}

std::vector<std::string> performance_cells(const ReportRow& row) {
    std::vector<std::string> cells{metric_performance_name(row.metric), kDash, kDash};
    if (row.point)
        for (int g = 0; g < 2; ++g)
            if (row.point->defined[g]) cells[1 + g] = fmt2(row.point->value[g]);
    return cells;
}

nlohmann::json estimate_json(const EstimateWithCI& e) {
    return {{"point", e.point},
            {"lower", e.lower},
            {"upper", e.upper},
            {"n_effective", e.n_effective}};
}

nlohmann::json fairness_entry_json(const ReportRow& row) {
    nlohmann::json entry;
    entry["metric"] = metric_key(row.metric);
    entry["name"] = metric_fairness_name(row.metric);

    nlohmann::json values = nlohmann::json::array();
    nlohmann::json defined;
    for (int g = 0; g < 2; ++g) {
        const bool ok = row.point && row.point->defined[g];
        values.push_back(ok ? nlohmann::json(row.point->value[g]) : nlohmann::json());
        defined[g == 0 ? "group1" : "group2"] = ok;
    }
    entry["group_values"] = values;

    const MetricResult* r = row.inference ? &*row.inference : nullptr;
    entry["difference"] = r ? estimate_json(r->difference) : nlohmann::json();
    entry["ratio"] = (r && r->ratio_defined) ? estimate_json(r->ratio) : nlohmann::json();
    entry["significant"] = {{"difference", r && r->diff_significant},
                            {"ratio", r && r->ratio_significant}};
    defined["difference"] = r != nullptr;
    defined["ratio"] = r && r->ratio_defined;
    entry["defined"] = defined;
    if (row.error) {
        entry["error"] = error_code_name(*row.error);
        entry["error_message"] = row.error_message;
    }
    return entry;
}

nlohmann::json metadata_json(const ReportMetadata& m) {
    nlohmann::json meta;
    meta["cutoff"] = m.cutoff;
    meta["alpha"] = m.alpha;
    meta["n_boot"] = m.n_boot;
    meta["seed"] = m.seed;
    meta["groups"] = {m.group_labels[0], m.group_labels[1]};
    meta["condition"] = m.condition ? nlohmann::json(*m.condition) : nlohmann::json();
    meta["n"] = m.n;
    meta["group_sizes"] = {m.group_sizes[0], m.group_sizes[1]};
    return meta;
}

ReportMetadata make_metadata(const AuditTable& t, const CutoffRule& rule,
                             const std::optional<ConditionOn>& cond,
                             const BootstrapConfig& cfg) {
    ReportMetadata meta;
    meta.cutoff = rule.cutoff;
    meta.alpha = cfg.alpha;
    meta.n_boot = cfg.n_boot;
    meta.seed = cfg.seed;
    meta.group_labels = t.group_labels();
    if (cond) meta.condition = cond->first + " " + cond->second.describe();
    meta.n = t.n();
    for (std::size_t i = 0; i < t.n(); ++i) ++meta.group_sizes[t.group_index(i)];
    return meta;
}

std::string render_table(const FairnessReport& report) {
    const ReportMetadata& m = report.metadata;
    std::ostringstream out;
    out << preamble(m) << '\n';

    std::vector<std::vector<std::string>> perf;
    perf.push_back({"Metric", "Group" + m.group_labels[0], "Group" + m.group_labels[1]});
    for (const auto& row : report.rows) perf.push_back(performance_cells(row));
    out << "Performance\n" << render_aligned(perf) << '\n';

    const std::string level = level_label(m.alpha);
    std::vector<std::vector<std::string>> fair;
    fair.push_back({"Metric", "Difference", level + "% Diff CI", "Ratio", level + "% Ratio CI"});
    for (const auto& row : report.rows) {
        FairnessCells cells = fairness_cells(row);
        fair.push_back({metric_fairness_name(row.metric), cells.diff, cells.diff_ci, cells.ratio,
                        cells.ratio_ci});
    }
    out << "Fairness\n" << render_aligned(fair);
    return out.str();
}

std::string render_markdown(const FairnessReport& report) {
    const ReportMetadata& m = report.metadata;
    std::ostringstream out;
    out << "# Fairness audit\n\n"
        << "- cutoff: " << fmt2(m.cutoff) << "\n- alpha: " << m.alpha
        << "\n- bootstrap replicates: " << m.n_boot << "\n- seed: " << m.seed << "\n- groups: "
        << m.group_labels[0] << " (n=" << m.group_sizes[0] << "), " << m.group_labels[1]
        << " (n=" << m.group_sizes[1] << ")\n";
    if (m.condition) out << "- condition: " << *m.condition << '\n';

    out << "\n## Performance\n\n";
    std::vector<std::vector<std::string>> perf;
    for (const auto& row : report.rows) perf.push_back(performance_cells(row));
    out << markdown_table({"Metric", "Group" + m.group_labels[0], "Group" + m.group_labels[1]},
                          perf);

    const std::string level = level_label(m.alpha);
    out << "\n## Fairness\n\n";
    std::vector<std::vector<std::string>> fair;
    for (const auto& row : report.rows) {
        FairnessCells cells = fairness_cells(row);
        fair.push_back({metric_fairness_name(row.metric), cells.diff, cells.diff_ci, cells.ratio,
                        cells.ratio_ci});
    }
    out << markdown_table(
        {"Metric", "Difference", level + "% Diff CI", "Ratio", level + "% Ratio CI"}, fair);
    return out.str();
}

std::string render_json(const FairnessReport& report) {
    nlohmann::json doc;
    doc["metadata"] = metadata_json(report.metadata);
    nlohmann::json perf = nlohmann::json::array();
    nlohmann::json fair = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json p;
        p["metric"] = metric_performance_name(row.metric);
        for (int g = 0; g < 2; ++g) {
            const bool ok = row.point && row.point->defined[g];
            p[g == 0 ? "group1" : "group2"] =
                ok ? nlohmann::json(row.point->value[g]) : nlohmann::json();
        }
        perf.push_back(std::move(p));
        fair.push_back(fairness_entry_json(row));
    }
    doc["performance"] = std::move(perf);
    doc["fairness"] = std::move(fair);
    return doc.dump(2) + "\n";
}

}  // namespace

RenderFormat parse_render_format(const std::string& name) {
    if (name == "table") return RenderFormat::Table;
    if (name == "json") return RenderFormat::Json;
    if (name == "markdown") return RenderFormat::Markdown;
    throw AuditError(ErrorCode::InvalidConfig, "unknown output format \"" + name + "\"");
}

std::string verdict_sentence(MetricId id, bool significant) {
    return std::string(significant ? "There is evidence that the model does not satisfy "
                                   : "There is insufficient evidence that the model does "
                                     "not satisfy ") +
           metric_criterion_phrase(id) + ".";
}

FairnessReport get_fairness_metrics(const AuditTable& t, const CutoffRule& rule,
                                    const std::optional<ConditionOn>& cond,
                                    const BootstrapConfig& cfg, unsigned threads) {
    std::vector<MetricId> ids;
    for (MetricId id : kAllMetrics)
        if (id != MetricId::ConditionalStatisticalParity || cond) ids.push_back(id);

    auto outcomes = bootstrap_metrics(t, ids, rule, cond, cfg, threads);

    FairnessReport report;
    report.metadata = make_metadata(t, rule, cond, cfg);
    report.rows.reserve(outcomes.size());
    for (MetricOutcome& out : outcomes) {
        ReportRow row;
        row.metric = out.metric;
        row.point = std::move(out.point);
        row.inference = std::move(out.result);
        row.error = out.error;
        row.error_message = std::move(out.error_message);
        report.rows.push_back(std::move(row));
    }
    return report;
}

SingleEvaluation eval_single(const AuditTable& t, MetricId id, const CutoffRule& rule,
                             const std::optional<ConditionOn>& cond, const BootstrapConfig& cfg,
                             unsigned threads) {
    SingleEvaluation eval;
    eval.metadata = make_metadata(t, rule, cond, cfg);
    eval.result = bootstrap_metric(t, id, rule, cond, cfg, threads);
    eval.verdict =
        verdict_sentence(id, eval.result.diff_significant || eval.result.ratio_significant);
    return eval;
}

std::string render(const FairnessReport& report, RenderFormat format) {
    switch (format) {
        case RenderFormat::Table: return render_table(report);
        case RenderFormat::Json: return render_json(report);
        case RenderFormat::Markdown: return render_markdown(report);
    }
    return {};
}

std::string render_single(const SingleEvaluation& eval, RenderFormat format) {
    const MetricResult& r = eval.result;
    ReportRow row{r.metric, r.group_stat, r, std::nullopt, {}};

    if (format == RenderFormat::Json) {
        nlohmann::json doc;
        doc["metadata"] = metadata_json(eval.metadata);
        doc["verdict"] = eval.verdict;
        doc["result"] = fairness_entry_json(row);
        return doc.dump(2) + "\n";
    }

    const std::string level = level_label(eval.metadata.alpha);
    FairnessCells cells = fairness_cells(row);
    std::vector<std::string> header{"Metric", "Group" + eval.metadata.group_labels[0],
                                    "Group" + eval.metadata.group_labels[1], "Difference",
                                    level + "% Diff CI", "Ratio", level + "% Ratio CI"};
    std::vector<std::string> values = performance_cells(row);
    values.insert(values.end(), {cells.diff, cells.diff_ci, cells.ratio, cells.ratio_ci});

    if (format == RenderFormat::Markdown)
        return eval.verdict + "\n\n" + markdown_table(header, {values});
    return eval.verdict + "\n\n" + render_aligned({header, values});
}

}  // namespace fairaudit
