#include "fairaudit/kernels.hpp"

#if FAIRAUDIT_HAVE_AVX2_KERNEL

#include <immintrin.h>

#include "striped.hpp"

namespace fairaudit::kernels {

namespace {

inline __m256d load_weights(const std::uint32_t* weights, std::size_t i, __m256d one) {
    if (!weights) return one;
    __m128i w32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(weights + i));
    return _mm256_cvtepi32_pd(w32);  // multiplicities stay below 2^31
}

inline void store_lanes(double* dst, __m256d v) { _mm256_storeu_pd(dst, v); }

}  // namespace

std::array<GroupAccum, 2> accumulate_avx2(const TableView& view, double cutoff,
                                          const std::uint32_t* weights) {
    using namespace detail;

    StripedAccum acc;
    const std::size_t main = view.n & ~std::size_t(3);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d cut = _mm256_set1_pd(cutoff);

    // Pass 1: weighted confusion counts (exact integer sums).
    {
        __m256d cnt[2] = {zero, zero}, cpos[2] = {zero, zero};
        __m256d cpred[2] = {zero, zero}, tp[2] = {zero, zero};
        for (std::size_t i = 0; i < main; i += 4) {
            const __m256d p = _mm256_loadu_pd(view.prob + i);
            const __m256d y = _mm256_loadu_pd(view.outcome + i);
            const __m256d g = _mm256_loadu_pd(view.group + i);
            const __m256d w = load_weights(weights, i, one);

            const __m256d pos = _mm256_cmp_pd(y, one, _CMP_EQ_OQ);
            const __m256d pred = _mm256_cmp_pd(p, cut, _CMP_GE_OQ);
            const __m256d gmask[2] = {_mm256_cmp_pd(g, zero, _CMP_EQ_OQ),
                                      _mm256_cmp_pd(g, one, _CMP_EQ_OQ)};
            const __m256d w_pos = _mm256_and_pd(w, pos);
            const __m256d w_pred = _mm256_and_pd(w, pred);
            const __m256d w_tp = _mm256_and_pd(w_pos, pred);

            for (int k = 0; k < 2; ++k) {
                cnt[k] = _mm256_add_pd(cnt[k], _mm256_and_pd(w, gmask[k]));
                cpos[k] = _mm256_add_pd(cpos[k], _mm256_and_pd(w_pos, gmask[k]));
                cpred[k] = _mm256_add_pd(cpred[k], _mm256_and_pd(w_pred, gmask[k]));
                tp[k] = _mm256_add_pd(tp[k], _mm256_and_pd(w_tp, gmask[k]));
            }
        }
        for (int k = 0; k < 2; ++k) {
            store_lanes(acc.lane[k][kCount], cnt[k]);
            store_lanes(acc.lane[k][kCountPos], cpos[k]);
            store_lanes(acc.lane[k][kCountPredPos], cpred[k]);
            store_lanes(acc.lane[k][kTp], tp[k]);
        }
    }

    // Pass 2: probability sums and squared error.
    {
        __m256d pp[2] = {zero, zero}, pn[2] = {zero, zero}, se[2] = {zero, zero};
        for (std::size_t i = 0; i < main; i += 4) {
            const __m256d p = _mm256_loadu_pd(view.prob + i);
            const __m256d y = _mm256_loadu_pd(view.outcome + i);
            const __m256d g = _mm256_loadu_pd(view.group + i);
            const __m256d w = load_weights(weights, i, one);

            const __m256d pos = _mm256_cmp_pd(y, one, _CMP_EQ_OQ);
            const __m256d gmask[2] = {_mm256_cmp_pd(g, zero, _CMP_EQ_OQ),
                                      _mm256_cmp_pd(g, one, _CMP_EQ_OQ)};

            // Mirrors the scalar core: wp = w*p, se = (d*d)*w, mul then add,
            // no FMA contraction.
            const __m256d wp = _mm256_mul_pd(w, p);
            const __m256d d = _mm256_sub_pd(p, y);
            const __m256d sq = _mm256_mul_pd(_mm256_mul_pd(d, d), w);
            const __m256d wp_pos = _mm256_and_pd(wp, pos);
            const __m256d wp_neg = _mm256_andnot_pd(pos, wp);

            for (int k = 0; k < 2; ++k) {
                pp[k] = _mm256_add_pd(pp[k], _mm256_and_pd(wp_pos, gmask[k]));
                pn[k] = _mm256_add_pd(pn[k], _mm256_and_pd(wp_neg, gmask[k]));
                se[k] = _mm256_add_pd(se[k], _mm256_and_pd(sq, gmask[k]));
            }
        }
        for (int k = 0; k < 2; ++k) {
            store_lanes(acc.lane[k][kSumProbPos], pp[k]);
            store_lanes(acc.lane[k][kSumProbNeg], pn[k]);
            store_lanes(acc.lane[k][kSumSqErr], se[k]);
        }
    }

    // Tail rows land in stripe i mod 4, same as the scalar kernel.
    detail::accumulate_rows(view, cutoff, weights, main, view.n, acc);
    return acc.combine();
}

}  // namespace fairaudit::kernels

#endif  // FAIRAUDIT_HAVE_AVX2_KERNEL
