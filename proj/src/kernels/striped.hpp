#pragma once

// Shared scalar core for the accumulate kernels. Accumulation order is part
// of the kernel contract: every quantity is kept as four partial sums, row i
// feeding partial i mod 4, combined as (s0+s1)+(s2+s3). The AVX2 kernel's
// vector lanes realize exactly this layout, so running this code over the
// tail rows (and the scalar kernel over all rows) reproduces the vector
// result bit for bit.

#include <cstdint>

#include "fairaudit/kernels.hpp"

namespace fairaudit::kernels::detail {

enum Quantity {
    kCount = 0,
    kCountPos,
    kCountPredPos,
    kTp,
    kSumProbPos,
    kSumProbNeg,
    kSumSqErr,
    kNumQuantities
};

struct StripedAccum {
    double lane[2][kNumQuantities][4] = {};

    std::array<GroupAccum, 2> combine() const {
        std::array<GroupAccum, 2> out;
        for (int g = 0; g < 2; ++g) {
            auto total = [&](int q) {
                const double* s = lane[g][q];
                return (s[0] + s[1]) + (s[2] + s[3]);
            };
            out[g].count = total(kCount);
            out[g].count_pos = total(kCountPos);
            out[g].count_pred_pos = total(kCountPredPos);
            out[g].tp = total(kTp);
            out[g].sum_prob_pos = total(kSumProbPos);
            out[g].sum_prob_neg = total(kSumProbNeg);
            out[g].sum_sq_err = total(kSumSqErr);
        }
        return out;
    }
};

inline void accumulate_rows(const TableView& view, double cutoff,
                            const std::uint32_t* weights, std::size_t begin,
                            std::size_t end, StripedAccum& acc) {
    for (std::size_t i = begin; i < end; ++i) {
        const int lane = static_cast<int>(i & 3);
        const double w = weights ? static_cast<double>(weights[i]) : 1.0;
        const double p = view.prob[i];
        const double y = view.outcome[i];
        const int g = view.group[i] == 1.0 ? 1 : 0;
        const bool pos = y == 1.0;
        const bool pred = p >= cutoff;

        const double wp = w * p;
        const double d = p - y;
        const double se = (d * d) * w;

        double* q = &acc.lane[g][0][lane];
        constexpr int stride = 4;
        q[kCount * stride] += w;
        q[kCountPos * stride] += pos ? w : 0.0;
        q[kCountPredPos * stride] += pred ? w : 0.0;
        q[kTp * stride] += (pos && pred) ? w : 0.0;
        q[kSumProbPos * stride] += pos ? wp : 0.0;
        q[kSumProbNeg * stride] += pos ? 0.0 : wp;
        q[kSumSqErr * stride] += se;
    }
}

}  // namespace fairaudit::kernels::detail
