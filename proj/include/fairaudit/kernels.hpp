#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace fairaudit::kernels {

// Columnar view of a prediction table. outcome and group hold 0.0/1.0.
struct TableView {
    const double* prob = nullptr;
    const double* outcome = nullptr;
    const double* group = nullptr;
    std::size_t n = 0;
};

// Sufficient statistics for one group. Every fairness criterion in the
// library is a pure function of two of these. Count fields are exact
// integers stored as doubles (weighted counts stay below 2^53).
struct GroupAccum {
    double count = 0.0;           // sum of weights
    double count_pos = 0.0;       // outcome == 1
    double count_pred_pos = 0.0;  // prob >= cutoff
    double tp = 0.0;              // outcome == 1 and prob >= cutoff
    double sum_prob_pos = 0.0;    // sum of prob over outcome == 1
    double sum_prob_neg = 0.0;    // sum of prob over outcome == 0
    double sum_sq_err = 0.0;      // sum of (prob - outcome)^2

    double fn() const { return count_pos - tp; }
    double fp() const { return count_pred_pos - tp; }
    double tn() const { return count - count_pos - fp(); }
    double count_neg() const { return count - count_pos; }
};

// Accumulates both groups in one sweep. `weights` may be null (weight 1 per
// row); entries are bootstrap multiplicities, zero meaning the row is absent
// from the replicate.
//
// All implementations accumulate in the same fixed order — four striped
// partial sums combined as (s0+s1)+(s2+s3) — so scalar and SIMD variants
// return bit-identical results and the choice of kernel never shows up in
// output. Equivalence is asserted by tests/test_kernels.cpp.
using AccumulateFn = std::array<GroupAccum, 2> (*)(const TableView&, double cutoff,
                                                   const std::uint32_t* weights);

std::array<GroupAccum, 2> accumulate_scalar(const TableView& view, double cutoff,
                                            const std::uint32_t* weights);

#if (defined(__x86_64__) || defined(_M_X64)) && !defined(FAIRAUDIT_DISABLE_AVX2)
#define FAIRAUDIT_HAVE_AVX2_KERNEL 1
std::array<GroupAccum, 2> accumulate_avx2(const TableView& view, double cutoff,
                                          const std::uint32_t* weights);
#else
#define FAIRAUDIT_HAVE_AVX2_KERNEL 0
#endif

enum class Impl { Auto, Scalar, Avx2 };

// Process-wide kernel selection. Auto resolves via CPUID at first use.
void select_impl(Impl impl);            // throws InvalidConfig if unsupported
Impl selected_impl();                   // the impl accumulate() will use
const char* impl_name(Impl impl);
Impl parse_impl(const std::string& name);  // "auto" | "scalar" | "avx2"

std::array<GroupAccum, 2> accumulate(const TableView& view, double cutoff,
                                     const std::uint32_t* weights = nullptr);

}  // namespace fairaudit::kernels
