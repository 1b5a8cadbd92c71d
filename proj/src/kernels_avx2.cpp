/*******************************************************************************
 * Copyright 2026 The juliashape authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#ifdef JULIASHAPE_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "juliashape/kernels.hpp"

namespace juliashape::kernels {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Four independent lanes accumulate partial products over strided root
// subsets; each step renormalizes by an exact power of two extracted from the
// exponent bits. Lanes whose values leave the exponent range [1, 0x7fc] (zero
// factors, subnormals, huge magnitudes) are flagged and the whole call is
// redone by the scalar reference; geometry-scale inputs never trigger this.

struct LaneState {
    __m256d re, im;
    __m256i exp;
    __m256i bad;
};

inline __m256d absd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

// Extract biased exponents of a nonnegative vector, build 2^-e scale, flag
// out-of-range lanes.
inline void exponent_scale(__m256d a, __m256i& e_unbiased, __m256d& scale, __m256i& bad) {
    const __m256i bits = _mm256_castpd_si256(a);
    const __m256i f = _mm256_srli_epi64(bits, 52); // no sign bit: a >= 0
    const __m256i lo_bad = _mm256_cmpeq_epi64(f, _mm256_setzero_si256());
    const __m256i hi_bad = _mm256_cmpgt_epi64(f, _mm256_set1_epi64x(0x7fc));
    bad = _mm256_or_si256(bad, _mm256_or_si256(lo_bad, hi_bad));
    e_unbiased = _mm256_sub_epi64(f, _mm256_set1_epi64x(1023));
    const __m256i sbits = _mm256_slli_epi64(_mm256_sub_epi64(_mm256_set1_epi64x(2046), f), 52);
    scale = _mm256_castsi256_pd(sbits);
}

ScaledProduct scaled_product_avx2(const double* re, const double* im, std::size_t n,
                                  double zr, double zi) {
    const std::size_t n4 = n & ~std::size_t(3);
    LaneState st;
    st.re = _mm256_set1_pd(1.0);
    st.im = _mm256_setzero_pd();
    st.exp = _mm256_setzero_si256();
    st.bad = _mm256_setzero_si256();
    const __m256d zrv = _mm256_set1_pd(zr);
    const __m256d ziv = _mm256_set1_pd(zi);

    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(re + i), zrv);
        __m256d di = _mm256_sub_pd(_mm256_loadu_pd(im + i), ziv);

        // Normalize the factor by its max component.
        const __m256d am = _mm256_max_pd(absd(dr), absd(di));
        __m256i ef;
        __m256d sf;
        exponent_scale(am, ef, sf, st.bad);
        dr = _mm256_mul_pd(dr, sf);
        di = _mm256_mul_pd(di, sf);

        // Complex multiply into the accumulator.
        const __m256d tr = _mm256_fmsub_pd(st.re, dr, _mm256_mul_pd(st.im, di));
        const __m256d ti = _mm256_fmadd_pd(st.re, di, _mm256_mul_pd(st.im, dr));

        // Renormalize the accumulator by its max component.
        const __m256d ta = _mm256_max_pd(absd(tr), absd(ti));
        __m256i ea;
        __m256d sa;
        exponent_scale(ta, ea, sa, st.bad);
        st.re = _mm256_mul_pd(tr, sa);
        st.im = _mm256_mul_pd(ti, sa);
        st.exp = _mm256_add_epi64(st.exp, _mm256_add_epi64(ef, ea));
    }

    if (_mm256_movemask_pd(_mm256_castsi256_pd(st.bad)) != 0)
        return scalar_kernels().scaled_product(re, im, n, zr, zi);

    alignas(32) double lr[4], li[4];
    alignas(32) std::int64_t le[4];
    _mm256_store_pd(lr, st.re);
    _mm256_store_pd(li, st.im);
    _mm256_store_si256(reinterpret_cast<__m256i*>(le), st.exp);

    double ar = 1.0, ai = 0.0;
    std::int64_t e = 0;
    for (int l = 0; l < 4; ++l) {
        const double tr = ar * lr[l] - ai * li[l];
        const double ti = ar * li[l] + ai * lr[l];
        ar = tr;
        ai = ti;
        e += le[l];
        normalize(ar, ai, e);
    }
    // Tail roots through the scalar reference, folded into the accumulator.
    if (n4 < n) {
        const ScaledProduct tail = scalar_kernels().scaled_product(re + n4, im + n4, n - n4,
                                                                   zr, zi);
        if (tail.re == 0.0 && tail.im == 0.0) return {0.0, 0.0, 0};
        const double tr = ar * tail.re - ai * tail.im;
        const double ti = ar * tail.im + ai * tail.re;
        ar = tr;
        ai = ti;
        e += tail.exp2;
        normalize(ar, ai, e);
    }
    if (ar == 0.0 && ai == 0.0) return {0.0, 0.0, 0};
    return {ar, ai, e};
}

double log_abs_sum_avx2(const double* re, const double* im, std::size_t n, double zr,
                        double zi) {
    const std::size_t n4 = n & ~std::size_t(3);
    __m256d p = _mm256_set1_pd(1.0);
    __m256i e = _mm256_setzero_si256();
    __m256i bad = _mm256_setzero_si256();
    const __m256d zrv = _mm256_set1_pd(zr);
    const __m256d ziv = _mm256_set1_pd(zi);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256i one = _mm256_set1_epi64x(1);

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(re + i), zrv);
        const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(im + i), ziv);
        const __m256d q = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));

        __m256i eq;
        __m256d sq;
        exponent_scale(q, eq, sq, bad);
        p = _mm256_mul_pd(p, _mm256_mul_pd(q, sq)); // p in [1, 4)
        e = _mm256_add_epi64(e, eq);

        const __m256d ge2 = _mm256_cmp_pd(p, two, _CMP_GE_OQ);
        p = _mm256_blendv_pd(p, _mm256_mul_pd(p, half), ge2);
        e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(ge2), one));
    }

    if (_mm256_movemask_pd(_mm256_castsi256_pd(bad)) != 0)
        return scalar_kernels().log_abs_sum(re, im, n, zr, zi);

    alignas(32) double lp[4];
    alignas(32) std::int64_t le[4];
    _mm256_store_pd(lp, p);
    _mm256_store_si256(reinterpret_cast<__m256i*>(le), e);

    double sum = 0.0;
    for (int l = 0; l < 4; ++l)
        sum += 0.5 * (std::log(lp[l]) + static_cast<double>(le[l]) * kLn2);
    if (n4 < n) {
        const double tail = scalar_kernels().log_abs_sum(re + n4, im + n4, n - n4, zr, zi);
        if (tail == -std::numeric_limits<double>::infinity()) return tail;
        sum += tail;
    }
    return sum;
}

} // namespace

const KernelSet* avx2_kernels_impl() {
    static const KernelSet set{&scaled_product_avx2, &log_abs_sum_avx2, "avx2"};
    return &set;
}

} // namespace juliashape::kernels

#endif // JULIASHAPE_HAVE_AVX2
