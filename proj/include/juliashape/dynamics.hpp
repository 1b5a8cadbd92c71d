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
#ifndef JULIASHAPE_DYNAMICS_HPP
#define JULIASHAPE_DYNAMICS_HPP

#include <string>
#include <vector>

#include "juliashape/geometry.hpp"
#include "juliashape/kernels.hpp"

namespace juliashape {

class EquilibriumSolution;
struct RootSample;

/// Overflow-safe complex value: mantissa * 2^exp2, |mantissa| in [1, 2) or 0.
struct ScaledComplex {
    cplx mantissa{0.0, 0.0};
    std::int64_t exp2 = 0;

    bool is_zero() const { return mantissa == cplx(0.0, 0.0); }
    double log2_abs() const; // -inf for zero
    cplx to_complex() const; // only meaningful when the value fits a double
};

struct ClassifyResult {
    bool escaped = false;
    int iterations = 0; // applications of P before escape was certified
};

/// The polynomial P(z) = e^{n(gamma - delta)} z prod_i (roots_i - z), kept in
/// root-plus-log-scale form. The factor z is structural and not stored as a
/// root. Expanded coefficients are only available for n <= 20; the product
/// form is canonical.
class ShapedPolynomial {
public:
    ShapedPolynomial(std::vector<cplx> roots, double delta, double gamma,
                     cplx translation_offset);

    static ShapedPolynomial build(const EquilibriumSolution& sol, const RootSample& sample,
                                  double delta);

    int n() const { return static_cast<int>(roots_.size()); }
    double delta() const { return delta_; }
    double gamma() const { return gamma_; }
    double log_scale() const { return log_scale_; } // n (gamma - delta)
    cplx translation_offset() const { return offset_; }
    double root_radius() const { return rho_; }
    const std::vector<cplx>& roots() const { return roots_; }

    /// log|S_{n,delta}(z)| = n(gamma - delta) + sum log|root_i - z|; -inf at a root.
    double log_abs_S(cplx z) const;

    /// P_{n,delta}(z) = z S_{n,delta}(z), accumulated factor-by-factor in
    /// mantissa/exponent form; never over/underflows for n <= 1e5.
    ScaledComplex eval_P(cplx z) const;

    /// R = max(2 rho, rho + 2^{1/n} e^{delta - gamma}): |z| >= R implies
    /// |S(z)| >= 2 and hence |P(z)| >= 2|z|, so escape past R is certified.
    double escape_radius() const;

    /// Iterates P. Escaped is rigorous once log|z_k| > log R; Bounded means
    /// the orbit stayed within budget ("did not escape within max_iter").
    ClassifyResult classify_point(cplx z, int max_iter, double escape_r) const;

    /// Expanded coefficients, constant term first. Throws degree_too_large
    /// for n > 20.
    std::vector<cplx> coefficients() const;

    /// Same polynomial conjugated back to the original (untranslated)
    /// coordinates: Q = T o P o T^{-1} with T(z) = z - translation_offset.
    struct Conjugated {
        double log_scale;
        cplx fixed_point;           // image of the fixed point 0 of P
        std::vector<cplx> roots;    // roots in original coordinates
    };
    Conjugated conjugated_output() const;

    std::string export_csv() const; // header block + one root per line

private:
    std::vector<cplx> roots_;
    std::vector<double> roots_re_, roots_im_; // SoA mirrors for the kernels
    double delta_ = 0.0;
    double gamma_ = 0.0;
    double log_scale_ = 0.0;
    cplx offset_{0.0, 0.0};
    double rho_ = 0.0;
};

std::string conjugated_csv(const ShapedPolynomial::Conjugated& c, int n, double delta);

} // namespace juliashape

#endif // JULIASHAPE_DYNAMICS_HPP
