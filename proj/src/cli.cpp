#include "fairaudit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairaudit/demo.hpp"
#include "fairaudit/io.hpp"
#include "fairaudit/kernels.hpp"
#include "fairaudit/report.hpp"

namespace fairaudit::cli {

namespace {

InputFormat resolve_format(const std::string& format, const std::string& path) {
    if (format == "csv") return InputFormat::Csv;
    if (format == "json") return InputFormat::Json;
    if (format == "auto") {
        if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
            return InputFormat::Json;
        return InputFormat::Csv;
    }
    throw AuditError(ErrorCode::InvalidConfig, "unknown input format \"" + format + "\"");
}

void require_flag(const std::string& value, const char* flag) {
    if (value.empty())
        throw AuditError(ErrorCode::InvalidConfig, std::string("missing required ") + flag);
}

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path == "-") {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw AuditError(ErrorCode::InvalidConfig, "cannot write to \"" + path + "\"");
    file << payload;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group fairness audit for binary classifiers with a binary protected attribute"};
    app.name("fairaudit");

    std::string input, format = "auto", outcome_col, group_col, probs_col;
    std::string condition_col, condition_text, metric = "all", output = "table";
    std::string reference_group, kernel = "auto";
    double cutoff = 0.5, alpha = 0.05;
    std::uint32_t n_boot = 1000;
    std::uint64_t seed = 42;
    unsigned threads = 0;

    app.add_option("-i,--input", input, "Input file (CSV or JSON array), '-' for stdin");
    app.add_option("--format", format, "Input format: auto, csv, json (default auto)");
    app.add_option("--outcome", outcome_col, "Binary outcome column");
    app.add_option("--group", group_col, "Protected attribute column (two labels)");
    app.add_option("--probs", probs_col, "Predicted probability column");
    app.add_option("--condition-col", condition_col,
                   "Column for conditional statistical parity");
    app.add_option("--condition", condition_text, "Condition, e.g. '>=60' or '==Male'");
    app.add_option("--cutoff", cutoff, "Classification cutoff (default 0.5)");
    app.add_option("--alpha", alpha, "Significance level (default 0.05)");
    app.add_option("--bootstrap", n_boot, "Bootstrap replicates (default 1000)");
    app.add_option("--seed", seed, "Master seed (default 42)");
    app.add_option("--metric", metric, "A single metric id, or 'all' (default)");
    app.add_option("--output", output, "Output format: table, json, markdown");
    app.add_option("--reference-group", reference_group,
                   "Label to use as group1 (default: lexicographic order)");
    app.add_option("--threads", threads, "Worker threads, 0 = all cores; never changes output");
    app.add_option("--kernel", kernel, "Compute kernel: auto, scalar, avx2");

    auto* demo = app.add_subcommand("demo", "Write a synthetic demo dataset with planted gaps");
    DemoParams dp;
    std::string demo_out = "-";
    demo->add_option("--n", dp.n, "Rows to generate (default 2000, minimum 10)");
    demo->add_option("--seed", dp.seed, "Generator seed (default 42)");
    demo->add_option("--base-rate1", dp.base_rate1, "P(outcome=1) in group A (default 0.35)");
    demo->add_option("--base-rate2", dp.base_rate2, "P(outcome=1) in group B (default 0.35)");
    demo->add_option("--fnr-base", dp.fnr_base, "Group B false negative rate (default 0.30)");
    demo->add_option("--fpr-base", dp.fpr_base, "Group B false positive rate (default 0.10)");
    demo->add_option("--fnr-gap", dp.fnr_gap, "Planted FNR_A - FNR_B (default 0)");
    demo->add_option("--fpr-gap", dp.fpr_gap, "Planted FPR_A - FPR_B (default 0)");
    demo->add_option("-o,--out", demo_out, "Output path, '-' for stdout (default)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("fairaudit");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (demo->parsed()) {
            write_output(demo_out, generate_demo_csv(dp), out);
            return 0;
        }

        require_flag(input, "--input");
        require_flag(outcome_col, "--outcome");
        require_flag(group_col, "--group");
        require_flag(probs_col, "--probs");
        if (condition_col.empty() != condition_text.empty())
            throw AuditError(ErrorCode::InvalidConfig,
                             "--condition-col and --condition must be given together");

        kernels::select_impl(kernels::parse_impl(kernel));
        const CutoffRule rule = make_cutoff(cutoff);
        const BootstrapConfig cfg = make_bootstrap_config(n_boot, alpha, seed);
        const RenderFormat render_format = parse_render_format(output);

        std::optional<std::string> ref;
        if (!reference_group.empty()) ref = reference_group;

        const ColumnMap columns{outcome_col, group_col, probs_col, {}};
        const InputFormat input_format = resolve_format(format, input);
        AuditTable table = input == "-"
                               ? load_table(std::cin, input_format, columns, ref)
                               : load_table_file(input, input_format, columns, ref);

        std::optional<ConditionOn> cond;
        if (!condition_col.empty())
            cond = ConditionOn{condition_col, parse_condition(condition_text)};

        if (metric == "all") {
            out << render(get_fairness_metrics(table, rule, cond, cfg, threads), render_format);
        } else {
            auto id = parse_metric(metric);
            if (!id)
                throw AuditError(ErrorCode::InvalidConfig, "unknown metric \"" + metric + "\"");
            out << render_single(eval_single(table, *id, rule, cond, cfg, threads),
                                 render_format);
        }
        return 0;
    } catch (const AuditError& e) {
        err << "fairaudit: error: " << e.what() << '\n';
        return is_inference_error(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        err << "fairaudit: internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fairaudit::cli
