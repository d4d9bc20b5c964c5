#include "fairaudit/demo.hpp"

#include <cmath>

#include "fairaudit/io.hpp"
#include "fairaudit/rng.hpp"

namespace fairaudit {

namespace {

void check_rate(double value, const std::string& what) {
    if (!(value >= 0.0 && value <= 1.0))
        throw AuditError(ErrorCode::InvalidPlantedParameters,
                         what + " = " + std::to_string(value) + " lies outside [0, 1]");
}

}  // namespace

void validate_demo_params(const DemoParams& p) {
    if (p.n < 10)
        throw AuditError(ErrorCode::InvalidPlantedParameters,
                         "n must be at least 10, got " + std::to_string(p.n));
    for (int g = 0; g < 2; ++g) {
        const double base = g == 0 ? p.base_rate1 : p.base_rate2;
        if (!(base > 0.0 && base < 1.0))
            throw AuditError(ErrorCode::InvalidPlantedParameters,
                             "base rate " + std::to_string(base) + " must lie in (0, 1)");
        check_rate(demo_true_fnr(p, g), "FNR");
        check_rate(demo_true_fpr(p, g), "FPR");
    }
}

double demo_true_fnr(const DemoParams& p, int group) {
    return group == 0 ? p.fnr_base + p.fnr_gap : p.fnr_base;
}

double demo_true_fpr(const DemoParams& p, int group) {
    return group == 0 ? p.fpr_base + p.fpr_gap : p.fpr_base;
}

double demo_true_ppr(const DemoParams& p, int group) {
    const double base = group == 0 ? p.base_rate1 : p.base_rate2;
    return base * (1.0 - demo_true_fnr(p, group)) + (1.0 - base) * demo_true_fpr(p, group);
}

AuditTable generate_demo_table(const DemoParams& p) {
    validate_demo_params(p);
    SplitMix64 rng = stream_rng(p.seed, 0x64656D6F);  // "demo" stream

    std::vector<double> outcome(p.n), prob(p.n);
    std::vector<std::string> group(p.n);
    ExtraColumn age;
    age.numeric = true;
    age.nums.resize(p.n);

    for (std::uint32_t i = 0; i < p.n; ++i) {
        const int g = static_cast<int>(i & 1);
        group[i] = g == 0 ? "A" : "B";
        const double base = g == 0 ? p.base_rate1 : p.base_rate2;

        const bool positive = rng.next_unit() < base;
        const double err_rate = positive ? demo_true_fnr(p, g) : demo_true_fpr(p, g);
        const bool wrong = rng.next_unit() < err_rate;
        // Mis-scored rows land on the wrong side of cutoff 0.5.
        const bool high = positive != wrong;
        const double u = rng.next_unit();
        prob[i] = high ? 0.5 + 0.5 * u : 0.5 * u;
        outcome[i] = positive ? 1.0 : 0.0;
        age.nums[i] = std::floor(18.0 + 73.0 * rng.next_unit());
    }

    std::map<std::string, ExtraColumn> extras;
    extras.emplace("age", std::move(age));
    return AuditTable(std::move(outcome), std::move(group), std::move(prob), std::move(extras),
                      {"y", "g", "p"});
}

std::string generate_demo_csv(const DemoParams& p) { return to_csv(generate_demo_table(p)); }

}  // namespace fairaudit
