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
#ifndef JULIASHAPE_EQUILIBRIUM_HPP
#define JULIASHAPE_EQUILIBRIUM_HPP

#include <string>
#include <vector>

#include "juliashape/geometry.hpp"

namespace juliashape {

/// Uniform-in-parameter nodes on each curve with speeds and the
/// Martensen-Kussmaul weight table for the periodic log singularity.
struct Discretization {
    struct CurveNodes {
        int m = 0;        // nodes on this curve, even, >= 16
        double h = 0.0;   // parameter spacing 2pi/m
        std::vector<double> t;
        std::vector<cplx> pts;
        std::vector<double> speed;  // |zeta'(t_k)|, all > 0
        std::vector<double> mk;     // circulant R(p) for log(4 sin^2((t-s)/2))
    };
    std::vector<CurveNodes> curves;
    ShapeSet shape;

    int total_nodes() const;
};

Discretization discretize(const ShapeSet& shape, int m_per_curve);

struct SolveOptions {
    double residual_tolerance = 1e-6; // boundary-equation residual at off-node points
    int residual_points = 8;          // per curve
    // Hard floor for potential evaluation near Gamma, as a fraction of the
    // shape diameter; points closer than this raise too_close_to_boundary.
    double near_boundary_floor = 1e-7;
    int cdf_refinement = 4096; // fine grid per curve for the CDF (at least 4m)
};

/// Discrete equilibrium measure of E: density sigma (w.r.t. arclength) at the
/// nodes, Robin's constant gamma, per-curve masses, and per-curve cumulative
/// measure functions. The boundary equation  integral log|zeta - z| dmu = -gamma
/// on Gamma together with total mass 1 is solved as one dense linear system in
/// (sigma, gamma); the log kernel is split into the periodic singular part
/// (spectral Martensen-Kussmaul weights) and a smooth remainder (trapezoidal).
class EquilibriumSolution {
public:
    double robin_gamma() const { return gamma_; }
    double capacity() const;
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<double>& sigma() const { return sigma_; }
    const Discretization& disc() const { return disc_; }

    /// U_mu(z) = integral log(1/|zeta - z|) dmu. Smooth-kernel quadrature with
    /// automatic trigonometric refinement near Gamma; throws
    /// too_close_to_boundary below the configured floor.
    double log_potential(cplx z) const;

    /// g(infinity, z) = gamma - U_mu(z), clamped to 0 (so g = 0 on E).
    double green(cplx z) const;

    /// integral log|zeta - z(t)| dmu + gamma for a point ON curve `curve` at
    /// parameter t (off-node allowed); ~0 for an accurate solution.
    double boundary_residual(int curve, double t) const;

    /// Cumulative measure of curve `curve` over [0, t], and its inverse.
    double cdf(int curve, double t) const;
    double invert_cdf(int curve, double mass) const;

    double max_boundary_residual() const { return max_residual_; }
    double condition_estimate() const { return condition_; }
    double distance_to_boundary(cplx z) const;

    std::string nodes_csv() const; // curve_index,t,re,im,sigma

    friend EquilibriumSolution solve_equilibrium(const Discretization&, const SolveOptions&);

private:
    Discretization disc_;
    SolveOptions opts_;
    std::vector<double> sigma_;   // by global node index
    double gamma_ = 0.0;
    std::vector<double> masses_;  // per curve
    double max_residual_ = 0.0;
    double condition_ = 0.0;

    // Per-curve trig-series coefficients of f = sigma * speed (a_k, b_k), and
    // the refined piecewise-linear CDF built from them.
    struct CurveSeries {
        std::vector<double> a, b; // k = 0..m/2
        std::vector<double> cdf;  // size n_fine+1 over uniform t
        int n_fine = 0;
    };
    std::vector<CurveSeries> series_;

    double density_fine(int curve, double t) const; // trig interp of sigma*speed
    double quadrature_log(cplx z) const;            // sum log|zeta - z| dmu
};

EquilibriumSolution solve_equilibrium(const Discretization& disc,
                                      const SolveOptions& opts = {});

/// Weight of the Martensen-Kussmaul rule at angular offset `d = t - t_j` for
/// 2n nodes: quadrature of f -> integral f(s) log(4 sin^2((t-s)/2)) ds.
double mk_weight(double d, int half_m);

} // namespace juliashape

#endif // JULIASHAPE_EQUILIBRIUM_HPP
