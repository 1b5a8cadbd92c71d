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
#include "juliashape/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "juliashape/equilibrium.hpp"
#include "juliashape/errors.hpp"
#include "juliashape/sampler.hpp"

namespace juliashape {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double ScaledComplex::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return 0.5 * std::log2(std::norm(mantissa)) + static_cast<double>(exp2);
}

cplx ScaledComplex::to_complex() const {
    return cplx(std::ldexp(mantissa.real(), static_cast<int>(exp2)),
                std::ldexp(mantissa.imag(), static_cast<int>(exp2)));
}

ShapedPolynomial::ShapedPolynomial(std::vector<cplx> roots, double delta, double gamma,
                                   cplx translation_offset)
    : roots_(std::move(roots)), delta_(delta), gamma_(gamma), offset_(translation_offset) {
    if (roots_.empty()) throw validation_error("polynomial needs at least one root");
    if (!(delta_ > 0.0)) throw validation_error("delta must be positive");
    log_scale_ = static_cast<double>(roots_.size()) * (gamma_ - delta_);
    roots_re_.reserve(roots_.size());
    roots_im_.reserve(roots_.size());
    for (const cplx& r : roots_) {
        roots_re_.push_back(r.real());
        roots_im_.push_back(r.imag());
        rho_ = std::max(rho_, std::abs(r));
    }
    if (!(rho_ > 0.0)) throw validation_error("all roots at the origin");
}

ShapedPolynomial ShapedPolynomial::build(const EquilibriumSolution& sol,
                                         const RootSample& sample, double delta) {
    return ShapedPolynomial(sample.roots, delta, sol.robin_gamma(),
                            sol.disc().shape.translation_applied);
}

double ShapedPolynomial::log_abs_S(cplx z) const {
    const double sum = kernels::active().log_abs_sum(roots_re_.data(), roots_im_.data(),
                                                     roots_.size(), z.real(), z.imag());
    return log_scale_ + sum;
}

ScaledComplex ShapedPolynomial::eval_P(cplx z) const {
    if (z == cplx(0.0, 0.0)) return {};
    const kernels::ScaledProduct prod = kernels::active().scaled_product(
        roots_re_.data(), roots_im_.data(), roots_.size(), z.real(), z.imag());
    if (prod.re == 0.0 && prod.im == 0.0) return {};

    // value = z * prod * e^{log_scale}; fold e^{log_scale} = 2^{ls/ln2} into
    // the exponent plus a residual in [1, 2).
    double ar = prod.re * z.real() - prod.im * z.imag();
    double ai = prod.re * z.imag() + prod.im * z.real();
    std::int64_t e = prod.exp2;
    kernels::normalize(ar, ai, e);

    const double e2 = log_scale_ / kLn2;
    const double ei = std::floor(e2);
    const double frac = std::exp2(e2 - ei); // in [1, 2)
    double tr = ar * frac;
    double ti = ai * frac;
    e += static_cast<std::int64_t>(ei);
    kernels::normalize(tr, ti, e);
    return {cplx(tr, ti), e};
}

double ShapedPolynomial::escape_radius() const {
    const double n = static_cast<double>(roots_.size());
    return std::max(2.0 * rho_, rho_ + std::exp2(1.0 / n) * std::exp(delta_ - gamma_));
}

ClassifyResult ShapedPolynomial::classify_point(cplx z, int max_iter, double escape_r) const {
    const double log2_r = std::log2(escape_r);
    cplx cur = z;
    for (int k = 1; k <= max_iter; ++k) {
        const ScaledComplex w = eval_P(cur);
        if (w.log2_abs() > log2_r) return {true, k};
        cur = w.to_complex(); // |w| <= R here, so this is representable
    }
    return {false, max_iter};
}

std::vector<cplx> ShapedPolynomial::coefficients() const {
    const int n = static_cast<int>(roots_.size());
    if (n > 20)
        throw degree_too_large("coefficient expansion limited to n <= 20, got n = " +
                               std::to_string(n));
    // prod (root_i - z), low-to-high, by convolution with (root_i - z).
    std::vector<cplx> c{cplx(1.0, 0.0)};
    for (const cplx& r : roots_) {
        std::vector<cplx> next(c.size() + 1, cplx(0.0, 0.0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i] * r;
            next[i + 1] -= c[i];
        }
        c = std::move(next);
    }
    const double scale = std::exp(log_scale_);
    std::vector<cplx> out(c.size() + 1, cplx(0.0, 0.0));
    for (size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] * scale; // times z
    return out;
}

ShapedPolynomial::Conjugated ShapedPolynomial::conjugated_output() const {
    Conjugated out;
    out.log_scale = log_scale_;
    out.fixed_point = -offset_;
    out.roots.reserve(roots_.size());
    for (const cplx& r : roots_) out.roots.push_back(r - offset_);
    return out;
}

std::string ShapedPolynomial::export_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "n," << n() << "\n";
    os << "delta," << delta_ << "\n";
    os << "gamma," << gamma_ << "\n";
    os << "log_scale," << log_scale_ << "\n";
    os << "translation_offset," << offset_.real() << "," << offset_.imag() << "\n";
    os << "root_re,root_im\n";
    for (const cplx& r : roots_) os << r.real() << "," << r.imag() << "\n";
    return os.str();
}

std::string conjugated_csv(const ShapedPolynomial::Conjugated& c, int n, double delta) {
    std::ostringstream os;
    os.precision(17);
    os << "n," << n << "\n";
    os << "delta," << delta << "\n";
    os << "log_scale," << c.log_scale << "\n";
    os << "fixed_point," << c.fixed_point.real() << "," << c.fixed_point.imag() << "\n";
    os << "root_re,root_im\n";
    for (const cplx& r : c.roots) os << r.real() << "," << r.imag() << "\n";
    return os.str();
}

} // namespace juliashape
