#pragma once

#include <cstdint>
#include <string>

#include "fairaudit/table.hpp"

namespace fairaudit {

// Synthetic two-group prediction table with planted error-rate gaps. Rows
// alternate between groups "A" and "B"; each outcome is Bernoulli(base
// rate), and the probability column is drawn below or at-or-above 0.5 so
// that, at cutoff 0.5, group FNR/FPR equal the planted rates exactly in
// expectation. Group A carries the gaps: FNR_A = fnr_base + fnr_gap,
// FNR_B = fnr_base, likewise for FPR. An independent integer "age" column
// in [18, 90] is included for conditioning examples.
struct DemoParams {
    std::uint32_t n = 2000;
    std::uint64_t seed = 42;
    double base_rate1 = 0.35;  // P(outcome = 1) in group A
    double base_rate2 = 0.35;  // P(outcome = 1) in group B
    double fnr_base = 0.30;
    double fpr_base = 0.10;
    double fnr_gap = 0.0;  // FNR_A - FNR_B
    double fpr_gap = 0.0;  // FPR_A - FPR_B
};

void validate_demo_params(const DemoParams& p);  // throws InvalidPlantedParameters

double demo_true_fnr(const DemoParams& p, int group);
double demo_true_fpr(const DemoParams& p, int group);
// P(prob >= 0.5) = base*(1 - fnr) + (1 - base)*fpr, the population positive
// prediction rate at cutoff 0.5.
double demo_true_ppr(const DemoParams& p, int group);

AuditTable generate_demo_table(const DemoParams& p);
std::string generate_demo_csv(const DemoParams& p);  // columns y,g,p,age

}  // namespace fairaudit
