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
#include <bit>
#include <cmath>
#include <limits>

#include "juliashape/kernels.hpp"

namespace juliashape::kernels {

namespace {

// Unbiased exponent halved (floor), used to bring |v|^2-normalized values
// into [1, 2). Requires q normal.
inline std::int64_t half_exponent(double q) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(q);
    const std::int64_t f = static_cast<std::int64_t>((bits >> 52) & 0x7ff);
    return (f - 1023) >> 1;
}

inline bool is_normal_positive(double q) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(q);
    const std::uint64_t f = (bits >> 52) & 0x7ff;
    return f != 0 && f != 0x7ff;
}

inline double pow2i(std::int64_t e) {
    // e must stay in the normal range; callers keep |e| <= ~600.
    return std::bit_cast<double>(static_cast<std::uint64_t>(1023 + e) << 52);
}

} // namespace

void normalize(double& re, double& im, std::int64_t& exp2) {
    const double q = re * re + im * im;
    if (q == 0.0) {
        re = im = 0.0;
        exp2 = 0;
        return;
    }
    if (is_normal_positive(q)) {
        const std::int64_t e = half_exponent(q);
        const double s = pow2i(-e);
        re *= s;
        im *= s;
        exp2 += e;
        return;
    }
    // |v|^2 under/overflowed: rescale componentwise first.
    const int eb = std::ilogb(std::max(std::abs(re), std::abs(im)));
    re = std::scalbn(re, -eb);
    im = std::scalbn(im, -eb);
    exp2 += eb;
    const std::int64_t e = half_exponent(re * re + im * im);
    const double s = pow2i(-e);
    re *= s;
    im *= s;
    exp2 += e;
}

namespace {

ScaledProduct scaled_product_scalar(const double* re, const double* im, std::size_t n,
                                    double zr, double zi) {
    double ar = 1.0, ai = 0.0;
    std::int64_t e = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dr = re[i] - zr;
        double di = im[i] - zi;
        if (dr == 0.0 && di == 0.0) return {0.0, 0.0, 0};
        // Normalize the factor so the accumulator update cannot under/overflow.
        const double am = std::max(std::abs(dr), std::abs(di));
        const std::uint64_t f = (std::bit_cast<std::uint64_t>(am) >> 52) & 0x7ff;
        if (f == 0 || f >= 0x7fd) { // subnormal or near the exponent limits
            const int eb = std::ilogb(am);
            dr = std::scalbn(dr, -eb);
            di = std::scalbn(di, -eb);
            e += eb;
        } else {
            const std::int64_t eb = static_cast<std::int64_t>(f) - 1023;
            const double s = pow2i(-eb);
            dr *= s;
            di *= s;
            e += eb;
        }
        const double tr = ar * dr - ai * di;
        const double ti = ar * di + ai * dr;
        ar = tr;
        ai = ti;
        normalize(ar, ai, e);
    }
    return {ar, ai, e};
}

double log_abs_sum_scalar(const double* re, const double* im, std::size_t n, double zr,
                          double zi) {
    // Accumulate prod |d_i|^2 in mantissa/exponent form; one log at the end.
    double p = 1.0;
    std::int64_t e = 0;
    double extra = 0.0; // log-space side sum for under/overflowed factors
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = re[i] - zr;
        const double di = im[i] - zi;
        if (dr == 0.0 && di == 0.0) return -std::numeric_limits<double>::infinity();
        const double q = dr * dr + di * di;
        if (!is_normal_positive(q)) { // |d|^2 under/overflowed, d itself nonzero
            extra += 2.0 * std::log(std::hypot(dr, di));
            continue;
        }
        const std::uint64_t f = (std::bit_cast<std::uint64_t>(q) >> 52) & 0x7ff;
        const std::int64_t eq = static_cast<std::int64_t>(f) - 1023;
        const double qn = q * pow2i(-eq); // in [1, 2)
        p *= qn;
        e += eq;
        if (p >= 2.0) {
            p *= 0.5;
            e += 1;
        }
    }
    constexpr double ln2 = 0.6931471805599453;
    return 0.5 * (std::log(p) + static_cast<double>(e) * ln2 + extra);
}

} // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{&scaled_product_scalar, &log_abs_sum_scalar, "scalar"};
    return set;
}

} // namespace juliashape::kernels
