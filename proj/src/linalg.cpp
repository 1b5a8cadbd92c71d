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
#include "juliashape/linalg.hpp"

#include <cmath>
#include <string>

#include "juliashape/errors.hpp"

namespace juliashape {

double DenseMatrix::norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

LuFactors::LuFactors(DenseMatrix a) : lu_(std::move(a)), piv_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    if (n != lu_.cols()) throw singular_system("LU needs a square matrix");

    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(lu_(r, c)));

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(lu_(r, k));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        piv_[k] = p;
        if (p != k)
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(p, c));
        if (best <= 1e-15 * scale)
            throw singular_system("zero pivot at column " + std::to_string(k));
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = lu_(r, k) * inv;
            lu_(r, k) = f;
            if (f == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
        }
    }
}

std::vector<double> LuFactors::solve(std::vector<double> b) const {
    const std::size_t n = lu_.rows();
    for (std::size_t k = 0; k < n; ++k)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = k + 1; r < n; ++r) b[r] -= lu_(r, k) * b[k];
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t c = k + 1; c < n; ++c) b[k] -= lu_(k, c) * b[c];
        b[k] /= lu_(k, k);
    }
    return b;
}

std::vector<double> LuFactors::solve_transposed(std::vector<double> b) const {
    const std::size_t n = lu_.rows();
    // A^T x = b with PA = LU: solve U^T y = b, L^T z = y, x = P^T z.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < k; ++r) b[k] -= lu_(r, k) * b[r];
        b[k] /= lu_(k, k);
    }
    for (std::size_t k = n; k-- > 0;)
        for (std::size_t r = k + 1; r < n; ++r) b[k] -= lu_(r, k) * b[r];
    for (std::size_t k = n; k-- > 0;)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    return b;
}

double LuFactors::condition_estimate(double a_norm1) const {
    const std::size_t n = lu_.rows();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double inv_norm = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<double> y = solve(x);
        double y1 = 0.0;
        for (double v : y) y1 += std::abs(v);
        inv_norm = std::max(inv_norm, y1);
        std::vector<double> xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = (y[i] >= 0.0) ? 1.0 : -1.0;
        std::vector<double> z = solve_transposed(xi);
        std::size_t j = 0;
        double zmax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                j = i;
            }
        double xz = 0.0;
        for (std::size_t i = 0; i < n; ++i) xz += z[i] * x[i];
        if (zmax <= xz) break;
        x.assign(n, 0.0);
        x[j] = 1.0;
    }
    return a_norm1 * inv_norm;
}

} // namespace juliashape
