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
#include "juliashape/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "juliashape/errors.hpp"
#include "juliashape/linalg.hpp"

namespace juliashape {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double segment_distance(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double u = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(p - (a + u * ab));
}
} // namespace

double mk_weight(double d, int half_m) {
    // -(2pi/n) [ sum_{k=1}^{n-1} cos(k d)/k + cos(n d)/(2n) ],  n = half_m.
    const int n = half_m;
    double s = 0.0;
    for (int k = 1; k < n; ++k) s += std::cos(k * d) / k;
    s += std::cos(n * d) / (2.0 * n);
    return -(kTwoPi / n) * s;
}

int Discretization::total_nodes() const {
    int total = 0;
    for (const auto& c : curves) total += c.m;
    return total;
}

Discretization discretize(const ShapeSet& shape, int m_per_curve) {
    if (m_per_curve < 16 || m_per_curve % 2 != 0)
        throw invalid_resolution("m_per_curve must be even and >= 16, got " +
                                 std::to_string(m_per_curve));
    Discretization d;
    d.shape = shape;
    d.curves.resize(shape.curves.size());
    for (size_t j = 0; j < shape.curves.size(); ++j) {
        auto& cn = d.curves[j];
        cn.m = m_per_curve;
        cn.h = kTwoPi / m_per_curve;
        cn.t.resize(m_per_curve);
        cn.pts.resize(m_per_curve);
        cn.speed.resize(m_per_curve);
        for (int k = 0; k < m_per_curve; ++k) {
            cn.t[k] = cn.h * k;
            cn.pts[k] = shape.curves[j].point_at(cn.t[k]);
            cn.speed[k] = std::abs(shape.curves[j].tangent_at(cn.t[k]));
            if (!(cn.speed[k] > 0.0))
                throw numerical_error("vanishing |zeta'| at node " + std::to_string(k) +
                                      " of curve " + std::to_string(j));
        }
        cn.mk.resize(m_per_curve);
        for (int p = 0; p < m_per_curve; ++p) cn.mk[p] = mk_weight(cn.h * p, m_per_curve / 2);
    }
    return d;
}

namespace {

// log|zeta(t) - zeta(s)| = (1/2) log(4 sin^2((t-s)/2)) + smooth(t, s),
// with smooth(t, t) = log|zeta'(t)|.
double smooth_kernel(const Curve& curve, double t, cplx pt, double s, cplx ps) {
    const double half = 0.5 * (t - s);
    const double sn = 2.0 * std::abs(std::sin(half));
    if (sn < 1e-14) return std::log(std::abs(curve.tangent_at(0.5 * (t + s))));
    return std::log(std::abs(pt - ps) / sn);
}

} // namespace

EquilibriumSolution solve_equilibrium(const Discretization& disc, const SolveOptions& opts) {
    const int M = disc.total_nodes();
    const int nc = static_cast<int>(disc.curves.size());
    if (nc == 0) throw validation_error("cannot solve on an empty shape");

    // Global node index bookkeeping.
    std::vector<int> offset(nc, 0);
    for (int j = 1; j < nc; ++j) offset[j] = offset[j - 1] + disc.curves[j - 1].m;

    // Rows 0..M-1: sum_k W_ik sigma_k + gamma = 0 at every node i.
    // Row M: total mass sum_k h_k speed_k sigma_k = 1.
    DenseMatrix A(M + 1, M + 1);
    std::vector<double> rhs(M + 1, 0.0);
    rhs[M] = 1.0;

    for (int cj = 0; cj < nc; ++cj) {
        const auto& rowc = disc.curves[cj];
        const Curve& curve_row = disc.shape.curves[cj];
        for (int i = 0; i < rowc.m; ++i) {
            const int gi = offset[cj] + i;
            for (int ck = 0; ck < nc; ++ck) {
                const auto& colc = disc.curves[ck];
                for (int k = 0; k < colc.m; ++k) {
                    const int gk = offset[ck] + k;
                    double w;
                    if (ck == cj) {
                        const int p = std::abs(i - k);
                        w = 0.5 * rowc.mk[p] +
                            rowc.h * smooth_kernel(curve_row, rowc.t[i], rowc.pts[i],
                                                   rowc.t[k], rowc.pts[k]);
                    } else {
                        w = colc.h * std::log(std::abs(rowc.pts[i] - colc.pts[k]));
                    }
                    A(gi, gk) = w * colc.speed[k];
                }
            }
            A(gi, M) = 1.0;
        }
    }
    for (int ck = 0; ck < nc; ++ck) {
        const auto& colc = disc.curves[ck];
        for (int k = 0; k < colc.m; ++k)
            A(M, offset[ck] + k) = colc.h * colc.speed[k];
    }
    A(M, M) = 0.0;

    const double a_norm = A.norm1();
    LuFactors lu(A);
    std::vector<double> x = lu.solve(rhs);

    EquilibriumSolution sol;
    sol.disc_ = disc;
    sol.opts_ = opts;
    sol.condition_ = lu.condition_estimate(a_norm);
    sol.gamma_ = x[M];
    sol.sigma_.assign(x.begin(), x.begin() + M);

    // Positivity: small negative values are discretization noise; anything
    // worse means the solve failed.
    for (double& s : sol.sigma_) {
        if (s < -1e-8)
            throw numerical_error("equilibrium density went negative (" + std::to_string(s) +
                                  "); condition estimate " + std::to_string(sol.condition_));
        if (s < 0.0) s = 0.0;
    }

    // Per-curve masses from the same trapezoidal rule the system used.
    sol.masses_.assign(nc, 0.0);
    for (int cj = 0; cj < nc; ++cj) {
        const auto& c = disc.curves[cj];
        for (int k = 0; k < c.m; ++k)
            sol.masses_[cj] += c.h * c.speed[k] * sol.sigma_[offset[cj] + k];
    }

    // Trig series of f = sigma * speed per curve (real DFT), then the refined
    // piecewise-linear CDF.
    sol.series_.resize(nc);
    for (int cj = 0; cj < nc; ++cj) {
        const auto& c = disc.curves[cj];
        const int m = c.m, half = m / 2;
        auto& ser = sol.series_[cj];
        ser.a.assign(half + 1, 0.0);
        ser.b.assign(half + 1, 0.0);
        for (int k = 0; k <= half; ++k) {
            double ak = 0.0, bk = 0.0;
            for (int j = 0; j < m; ++j) {
                const double f = sol.sigma_[offset[cj] + j] * c.speed[j];
                ak += f * std::cos(k * c.t[j]);
                bk += f * std::sin(k * c.t[j]);
            }
            ser.a[k] = 2.0 * ak / m;
            ser.b[k] = 2.0 * bk / m;
        }
        ser.n_fine = std::max(opts.cdf_refinement, 4 * m);
        ser.cdf.assign(ser.n_fine + 1, 0.0);
        const double hf = kTwoPi / ser.n_fine;
        double prev = std::max(0.0, sol.density_fine(cj, 0.0));
        for (int j = 1; j <= ser.n_fine; ++j) {
            const double cur = std::max(0.0, sol.density_fine(cj, hf * j));
            ser.cdf[j] = ser.cdf[j - 1] + 0.5 * hf * (prev + cur);
            prev = cur;
        }
        // Pin the CDF total to the node-level mass used for allocation.
        if (ser.cdf[ser.n_fine] > 0.0) {
            const double fix = sol.masses_[cj] / ser.cdf[ser.n_fine];
            for (double& v : ser.cdf) v *= fix;
        }
    }

    // Boundary-equation residual at off-node points (golden-ratio offsets).
    const double golden = 0.6180339887498949;
    for (int cj = 0; cj < nc; ++cj) {
        for (int q = 0; q < opts.residual_points; ++q) {
            const double t = kTwoPi * (q + golden) / opts.residual_points;
            sol.max_residual_ =
                std::max(sol.max_residual_, std::abs(sol.boundary_residual(cj, t)));
        }
    }
    if (sol.max_residual_ > opts.residual_tolerance)
        throw numerical_error("boundary residual " + std::to_string(sol.max_residual_) +
                              " exceeds tolerance " + std::to_string(opts.residual_tolerance) +
                              " (condition estimate " + std::to_string(sol.condition_) + ")");
    return sol;
}

double EquilibriumSolution::capacity() const { return std::exp(-gamma_); }

double EquilibriumSolution::density_fine(int curve, double t) const {
    const auto& ser = series_[curve];
    const int half = static_cast<int>(ser.a.size()) - 1;
    // 0.5 a_0 + sum a_k cos kt + b_k sin kt + 0.5 (a_n cos nt + b_n sin nt)
    double sum = 0.5 * ser.a[0];
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = 1.0, sk = 0.0;
    for (int k = 1; k <= half; ++k) {
        const double cn = ck * c1 - sk * s1;
        const double snn = sk * c1 + ck * s1;
        ck = cn;
        sk = snn;
        const double w = (k == half) ? 0.5 : 1.0;
        sum += w * (ser.a[k] * ck + ser.b[k] * sk);
    }
    return sum;
}

double EquilibriumSolution::distance_to_boundary(cplx z) const {
    double best = std::numeric_limits<double>::max();
    for (const Curve& c : disc_.shape.curves) {
        const auto& s = c.samples();
        const int n = static_cast<int>(s.size());
        double cur = std::numeric_limits<double>::max();
        for (int j = 0; j < n; ++j)
            cur = std::min(cur, segment_distance(z, s[j], s[(j + 1) % n]));
        best = std::min(best, std::max(cur - c.chord_tolerance(), 0.0));
    }
    return best;
}

double EquilibriumSolution::quadrature_log(cplx z) const {
    const double dist = distance_to_boundary(z);
    const double diam = std::max(disc_.shape.diameter_estimate(), 1e-30);
    if (dist < opts_.near_boundary_floor * diam)
        throw too_close_to_boundary("point at distance " + std::to_string(dist) +
                                    " from Gamma is below the evaluation floor");

    double sum = 0.0;
    int off = 0;
    for (size_t cj = 0; cj < disc_.curves.size(); off += disc_.curves[cj].m, ++cj) {
        const auto& c = disc_.curves[cj];
        const Curve& curve = disc_.shape.curves[cj];
        // Refine until node spacing is a quarter of the distance to z; the
        // density refines exactly (trig polynomial), so accuracy is limited
        // only by the periodic trapezoid rule, ~e^{-2 pi dist / spacing}.
        const double arc_spacing = curve.perimeter_estimate() / c.m;
        if (dist >= 4.0 * arc_spacing) {
            for (int k = 0; k < c.m; ++k)
                sum += c.h * c.speed[k] * sigma_[off + k] * std::log(std::abs(c.pts[k] - z));
        } else {
            int fine = c.m;
            while (fine < (1 << 20) &&
                   curve.perimeter_estimate() / fine > 0.25 * dist)
                fine *= 2;
            const double hf = kTwoPi / fine;
            for (int k = 0; k < fine; ++k) {
                const double t = hf * k;
                const double f = std::max(0.0, density_fine(static_cast<int>(cj), t));
                sum += hf * f * std::log(std::abs(curve.point_at(t) - z));
            }
        }
    }
    return sum;
}

double EquilibriumSolution::log_potential(cplx z) const { return -quadrature_log(z); }

double EquilibriumSolution::green(cplx z) const {
    // Clamp to 0 on E: values inside are pure quadrature noise. The clamp
    // tolerance is absolute and far below any resolvable g.
    constexpr double clamp_tol = 1e-12;
    const double g = gamma_ - log_potential(z);
    return g < clamp_tol ? 0.0 : g;
}

double EquilibriumSolution::boundary_residual(int curve, double t) const {
    const auto& c = disc_.curves[curve];
    const Curve& shape_curve = disc_.shape.curves[curve];
    const cplx z = shape_curve.point_at(t);
    int off = 0;
    for (int q = 0; q < curve; ++q) off += disc_.curves[q].m;

    double sum = 0.0;
    for (int k = 0; k < c.m; ++k) {
        const double w = 0.5 * mk_weight(t - c.t[k], c.m / 2) +
                         c.h * smooth_kernel(shape_curve, t, z, c.t[k], c.pts[k]);
        sum += w * c.speed[k] * sigma_[off + k];
    }
    for (size_t cj = 0; cj < disc_.curves.size(); ++cj) {
        if (static_cast<int>(cj) == curve) continue;
        const auto& oc = disc_.curves[cj];
        int ooff = 0;
        for (size_t q = 0; q < cj; ++q) ooff += disc_.curves[q].m;
        for (int k = 0; k < oc.m; ++k)
            sum += oc.h * oc.speed[k] * sigma_[ooff + k] * std::log(std::abs(oc.pts[k] - z));
    }
    return sum + gamma_;
}

double EquilibriumSolution::cdf(int curve, double t) const {
    const auto& ser = series_[curve];
    if (t <= 0.0) return 0.0;
    if (t >= kTwoPi) return ser.cdf[ser.n_fine];
    const double pos = t / kTwoPi * ser.n_fine;
    const int j = std::min(static_cast<int>(pos), ser.n_fine - 1);
    const double u = pos - j;
    return ser.cdf[j] + u * (ser.cdf[j + 1] - ser.cdf[j]);
}

double EquilibriumSolution::invert_cdf(int curve, double mass) const {
    const auto& ser = series_[curve];
    const double total = ser.cdf[ser.n_fine];
    const double target = std::clamp(mass, 0.0, total);
    // Binary search for the segment, then solve the linear piece.
    int lo = 0, hi = ser.n_fine;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (ser.cdf[mid] <= target)
            lo = mid;
        else
            hi = mid;
    }
    const double seg = ser.cdf[hi] - ser.cdf[lo];
    const double u = (seg > 0.0) ? (target - ser.cdf[lo]) / seg : 0.0;
    return kTwoPi * (lo + u) / ser.n_fine;
}

std::string EquilibriumSolution::nodes_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "curve_index,t,re,im,sigma\n";
    int off = 0;
    for (size_t cj = 0; cj < disc_.curves.size(); ++cj) {
        const auto& c = disc_.curves[cj];
        for (int k = 0; k < c.m; ++k) {
            os << cj << "," << c.t[k] << "," << c.pts[k].real() << "," << c.pts[k].imag()
               << "," << sigma_[off + k] << "\n";
        }
        off += c.m;
    }
    return os.str();
}

} // namespace juliashape
