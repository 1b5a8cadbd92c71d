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
#ifndef JULIASHAPE_LINALG_HPP
#define JULIASHAPE_LINALG_HPP

#include <cstddef>
#include <vector>

namespace juliashape {

/// Dense row-major matrix, just enough for the Nystrom systems here.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double norm1() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// LU factorization with partial pivoting. Throws singular_system on a
/// (numerically) zero pivot.
class LuFactors {
public:
    explicit LuFactors(DenseMatrix a);

    std::vector<double> solve(std::vector<double> rhs) const;
    std::vector<double> solve_transposed(std::vector<double> rhs) const;

    /// Hager's 1-norm estimate of cond(A) = ||A||_1 ||A^-1||_1.
    double condition_estimate(double a_norm1) const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> piv_;
};

} // namespace juliashape

#endif // JULIASHAPE_LINALG_HPP
