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
#ifndef JULIASHAPE_KERNELS_HPP
#define JULIASHAPE_KERNELS_HPP

#include <cstddef>
#include <cstdint>

namespace juliashape::kernels {

/// prod_i (root_i - z) as mantissa * 2^exp2 with |mantissa| in [1, 2),
/// or mantissa = 0 when z hits a root.
struct ScaledProduct {
    double re = 0.0;
    double im = 0.0;
    std::int64_t exp2 = 0;
};

// Hot inner loops of the escape-time iteration, over roots stored as
// structure-of-arrays. Scalar versions are the reference; SIMD variants are
// selected at runtime and equivalence-tested against them.
using ScaledProductFn = ScaledProduct (*)(const double* re, const double* im, std::size_t n,
                                          double zr, double zi);
// sum_i log|root_i - z|, -inf when z equals a root.
using LogAbsSumFn = double (*)(const double* re, const double* im, std::size_t n, double zr,
                               double zi);

struct KernelSet {
    ScaledProductFn scaled_product;
    LogAbsSumFn log_abs_sum;
    const char* name;
};

enum class Isa { automatic, scalar, avx2 };

/// Currently active kernels. Resolved once: AVX2 when compiled in and the CPU
/// supports it, else scalar; the JULIASHAPE_KERNEL environment variable
/// ("scalar"/"avx2") or force() below override.
const KernelSet& active();

const KernelSet& scalar_kernels();
/// nullptr when AVX2 is not compiled in or not supported by this CPU.
const KernelSet* avx2_kernels();

/// Test hook; throws validation_error when the requested ISA is unavailable.
void force(Isa isa);

/// Renormalizes (re, im) * 2^exp2 so |(re, im)| lands in [1, 2); exact
/// (power-of-two scaling only). Zero stays zero.
void normalize(double& re, double& im, std::int64_t& exp2);

} // namespace juliashape::kernels

#endif // JULIASHAPE_KERNELS_HPP
