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
#include "juliashape/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "juliashape/errors.hpp"

namespace juliashape::kernels {

#ifdef JULIASHAPE_HAVE_AVX2
const KernelSet* avx2_kernels_impl();
#endif

const KernelSet* avx2_kernels() {
#ifdef JULIASHAPE_HAVE_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_kernels_impl();
#endif
    return nullptr;
}

namespace {

std::atomic<const KernelSet*> g_active{nullptr};

const KernelSet* resolve() {
    if (const char* env = std::getenv("JULIASHAPE_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        if (std::strcmp(env, "avx2") == 0) {
            if (const KernelSet* k = avx2_kernels()) return k;
            throw validation_error("JULIASHAPE_KERNEL=avx2 but AVX2 is unavailable");
        }
    }
    if (const KernelSet* k = avx2_kernels()) return k;
    return &scalar_kernels();
}

} // namespace

const KernelSet& active() {
    const KernelSet* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        k = resolve();
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void force(Isa isa) {
    switch (isa) {
        case Isa::automatic:
            g_active.store(nullptr, std::memory_order_release);
            active();
            return;
        case Isa::scalar:
            g_active.store(&scalar_kernels(), std::memory_order_release);
            return;
        case Isa::avx2: {
            const KernelSet* k = avx2_kernels();
            if (!k) throw validation_error("AVX2 kernels unavailable on this build/CPU");
            g_active.store(k, std::memory_order_release);
            return;
        }
    }
}

} // namespace juliashape::kernels
