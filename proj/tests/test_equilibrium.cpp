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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "juliashape/equilibrium.hpp"
#include "juliashape/errors.hpp"
#include "juliashape/linalg.hpp"
#include "oracles.hpp"

using namespace juliashape;

namespace {
constexpr double kPi = std::numbers::pi;

EquilibriumSolution solve_disk(double radius, int m) {
    const ShapeSet s{{Curve::circle(cplx(0, 0), radius)}, {0.0, 0.0}};
    return solve_equilibrium(discretize(s, m));
}
} // namespace

TEST_CASE("martensen-kussmaul weights integrate the log kernel exactly on cos") {
    // integral log(4 sin^2((t - s)/2)) cos(s) ds = -2 pi cos(t), and the rule
    // integrates constants to zero.
    const int m = 32;
    for (double t : {0.0, 0.37, 2.0}) {
        double on_cos = 0.0, on_one = 0.0;
        for (int j = 0; j < m; ++j) {
            const double tj = 2 * kPi * j / m;
            const double w = mk_weight(t - tj, m / 2);
            on_cos += w * std::cos(tj);
            on_one += w;
        }
        CHECK(std::abs(on_cos + 2 * kPi * std::cos(t)) < 1e-12);
        CHECK(std::abs(on_one) < 1e-12);
    }
}

TEST_CASE("discretize bookkeeping and input checking") {
    const ShapeSet one{{Curve::circle(cplx(0, 0), 1.0)}, {0.0, 0.0}};
    const Discretization d = discretize(one, 16);
    CHECK(d.total_nodes() == 16);
    for (int k = 0; k < 16; ++k) {
        CHECK(std::abs(d.curves[0].pts[k] - std::polar(1.0, 2 * kPi * k / 16)) < 1e-14);
        CHECK(d.curves[0].speed[k] == doctest::Approx(1.0).epsilon(1e-13));
    }

    const ShapeSet two{{Curve::circle(cplx(0, 0), 2.0)}, {0.0, 0.0}};
    const Discretization d2 = discretize(two, 32);
    for (double s : d2.curves[0].speed) CHECK(s == doctest::Approx(2.0).epsilon(1e-13));

    const ShapeSet pair{{Curve::circle(cplx(-1.5, 0), 0.8), Curve::circle(cplx(1.5, 0), 0.8)},
                        {0.0, 0.0}};
    CHECK(discretize(pair, 64).total_nodes() == 128);

    CHECK_THROWS_AS(discretize(one, 15), invalid_resolution);
    CHECK_THROWS_AS(discretize(one, 8), invalid_resolution);
}

TEST_CASE("disk equilibrium: gamma = -log r, sigma uniform, capacity = r") {
    const EquilibriumSolution sol = solve_disk(2.0, 64);
    CHECK(std::abs(sol.robin_gamma() + std::log(2.0)) < 1e-12);
    CHECK(sol.capacity() == doctest::Approx(2.0).epsilon(1e-12));
    for (double s : sol.sigma()) CHECK(s == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-10));

    const EquilibriumSolution unit = solve_disk(1.0, 64);
    CHECK(std::abs(unit.robin_gamma()) < 1e-12); // capacity 1 stays well-posed
    CHECK(unit.capacity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ellipse capacity matches the joukowski oracle") {
    const ShapeSet e{{Curve::ellipse(cplx(0, 0), 2.0, 1.0, 0.0)}, {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(e, 128));
    CHECK(std::abs(sol.capacity() - oracle::ellipse_capacity(2.0, 1.0)) < 1e-10);
    CHECK(std::abs(sol.robin_gamma() + std::log(1.5)) < 1e-10);
}

TEST_CASE("two congruent disks split the measure evenly") {
    const ShapeSet pair{{Curve::circle(cplx(0, -1.5), 0.8), Curve::circle(cplx(0, 1.5), 0.8)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 64));
    CHECK(sol.masses()[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.masses()[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.masses()[0] + sol.masses()[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("total discrete mass is 1 within 1e-12") {
    const ShapeSet pair{{Curve::circle(cplx(0, 0), 0.8), Curve::ellipse(cplx(3, 0), 1.0, 0.6, 0.3)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 128));
    double total = 0.0;
    for (double m : sol.masses()) total += m;
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("log_potential: disk closed forms inside and outside") {
    const EquilibriumSolution sol = solve_disk(2.0, 128);
    CHECK(std::abs(sol.log_potential(cplx(0, 0)) + std::log(2.0)) < 1e-10);
    CHECK(std::abs(sol.log_potential(cplx(4, 0)) + std::log(4.0)) < 1e-10);
}

TEST_CASE("log_potential: ellipse at z = 10 via the joukowski oracle") {
    const ShapeSet e{{Curve::ellipse(cplx(0, 0), 2.0, 1.0, 0.0)}, {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(e, 256));
    const double expected = oracle::ellipse_log_potential(cplx(10, 0), 2.0, 1.0);
    CHECK(std::abs(sol.log_potential(cplx(10, 0)) - expected) < 1e-6);
    // sanity: the correction to -log 10 is O(1e-2)
    CHECK(std::abs(expected + std::log(10.0)) < 2e-2);
    CHECK(std::abs(expected + std::log(10.0)) > 1e-3);
}

TEST_CASE("green: closed form on the disk, zero inside, near-boundary value") {
    const EquilibriumSolution sol = solve_disk(2.0, 128);
    CHECK(std::abs(sol.green(cplx(4, 0)) - std::log(2.0)) < 1e-10);
    CHECK(sol.green(cplx(0.5, 0.3)) == 0.0);
    for (double theta : {0.0, 1.1, 2.7}) {
        const cplx z = std::polar(2.0 * 1.0001, theta);
        CHECK(std::abs(sol.green(z) - std::log(1.0001)) < 2e-6);
    }
}

TEST_CASE("green far field: |U(z) + log|z|| small at |z| = 1e4") {
    const ShapeSet pair{{Curve::circle(cplx(0, 0), 0.8), Curve::circle(cplx(3, 0), 0.8)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 128));
    const cplx z = std::polar(1e4, 0.7);
    CHECK(std::abs(sol.log_potential(z) + std::log(std::abs(z))) < 1e-3);
}

TEST_CASE("boundary constancy at off-node boundary points") {
    const ShapeSet pair{{Curve::circle(cplx(0, 0), 0.8), Curve::ellipse(cplx(3, 0), 1.0, 0.6, 0.0)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 256));
    std::mt19937 gen(77u);
    std::uniform_real_distribution<double> unif(0.0, 2 * kPi);
    for (int curve = 0; curve < 2; ++curve)
        for (int k = 0; k < 8; ++k)
            CHECK(std::abs(sol.boundary_residual(curve, unif(gen))) < 1e-6);
}

TEST_CASE("spectral convergence: gamma moves < 1e-8 from m=128 to m=256") {
    const ShapeSet e{{Curve::ellipse(cplx(0.5, -0.25), 1.5, 0.9, 0.6)}, {0.0, 0.0}};
    const double g128 = solve_equilibrium(discretize(e, 128)).robin_gamma();
    const double g256 = solve_equilibrium(discretize(e, 256)).robin_gamma();
    CHECK(std::abs(g128 - g256) < 1e-8);
}

TEST_CASE("density matches |dg/dn| / 2pi estimated by one-sided differences") {
    const ShapeSet e{{Curve::ellipse(cplx(0, 0), 2.0, 1.0, 0.0)}, {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(e, 256));
    const Curve& curve = e.curves[0];
    const auto& d = sol.disc().curves[0];
    for (int k : {0, 40, 97, 128, 200}) {
        const cplx tan = curve.tangent_at(d.t[k]);
        const cplx nrm = cplx(tan.imag(), -tan.real()) / std::abs(tan); // outward for ccw
        const double h = 1e-3;
        const cplx p = d.pts[k];
        const double g1 = sol.green(p + h * nrm);
        const double g2 = sol.green(p + 2 * h * nrm);
        const double dgdn = (4.0 * g1 - g2) / (2.0 * h);
        const double sigma_est = std::abs(dgdn) / (2 * kPi);
        CHECK(std::abs(sigma_est - sol.sigma()[k]) <= 1e-2 * sol.sigma()[k]);
    }
}

TEST_CASE("cdf is monotone with total mass and inverts correctly") {
    const ShapeSet pair{{Curve::circle(cplx(0, 0), 0.8), Curve::ellipse(cplx(3, 0), 1.0, 0.6, 0.0)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 128));
    for (int c = 0; c < 2; ++c) {
        double prev = -1.0;
        for (int j = 0; j <= 50; ++j) {
            const double t = 2 * kPi * j / 50;
            const double v = sol.cdf(c, t);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
        CHECK(sol.cdf(c, 2 * kPi - 1e-12) == doctest::Approx(sol.masses()[c]).epsilon(1e-6));
        for (double frac : {0.1, 0.5, 0.9}) {
            const double target = frac * sol.masses()[c];
            const double t = sol.invert_cdf(c, target);
            CHECK(std::abs(sol.cdf(c, t) - target) < 1e-12);
        }
    }
}

TEST_CASE("log_potential rejects points essentially on Gamma") {
    const EquilibriumSolution sol = solve_disk(1.0, 64);
    CHECK_THROWS_AS(sol.log_potential(cplx(1.0 + 1e-12, 0.0)), too_close_to_boundary);
}

// Fully independent route for the two-disk exterior field: charge simulation
// (multipole collocation). g(z) = q log|z| + (1-q) log|z-c| + Re sum a_k (r/z)^k
// + Re sum b_k (r/(z-c))^k + gamma, fit by least squares to g = 0 on both
// circles. Shares no code path with the Nystrom solver.
TEST_CASE("two-disk green values cross-checked by charge simulation") {
    const double r = 0.8, c2 = 3.0;
    const int K = 32, M = 256, P = 2 + 4 * K;
    std::vector<cplx> zs;
    for (int j = 0; j < M; ++j) zs.push_back(std::polar(r, 2 * kPi * j / M));
    for (int j = 0; j < M; ++j) zs.push_back(c2 + std::polar(r, 2 * kPi * j / M));
    const int N = static_cast<int>(zs.size());

    auto column = [&](const cplx& z, int p) -> double {
        if (p == 0) return std::log(std::abs(z)) - std::log(std::abs(z - c2));
        if (p == 1) return 1.0;
        const int block = (p - 2) / (2 * K);      // 0: a_k, 1: b_k
        const int idx = (p - 2) % (2 * K);
        const int k = idx / 2 + 1;
        const cplx base = (block == 0) ? (r / z) : (r / (z - c2));
        const cplx w = std::pow(base, k);
        return (idx % 2 == 0) ? w.real() : -w.imag();
    };

    // Normal equations for the least-squares fit, solved with the dense LU.
    DenseMatrix AtA(P, P);
    std::vector<double> Atb(P, 0.0);
    for (int i = 0; i < N; ++i) {
        std::vector<double> row(P);
        for (int p = 0; p < P; ++p) row[p] = column(zs[i], p);
        const double b = -std::log(std::abs(zs[i] - c2));
        for (int p = 0; p < P; ++p) {
            Atb[p] += row[p] * b;
            for (int q = 0; q < P; ++q) AtA(p, q) += row[p] * row[q];
        }
    }
    const std::vector<double> x = LuFactors(AtA).solve(Atb);

    auto oracle_g = [&](cplx z) {
        double v = x[0] * std::log(std::abs(z)) + (1.0 - x[0]) * std::log(std::abs(z - c2)) +
                   x[1];
        for (int p = 2; p < P; ++p) v += x[p] * column(z, p);
        return v;
    };

    // The fit must itself be tight before it can serve as an oracle.
    for (int j = 0; j < 37; ++j) {
        const double t = 2 * kPi * (j + 0.37) / 37;
        CHECK(std::abs(oracle_g(std::polar(r, t))) < 1e-9);
        CHECK(std::abs(oracle_g(c2 + std::polar(r, t))) < 1e-9);
    }

    const ShapeSet pair{{Curve::circle(cplx(0, 0), r), Curve::circle(cplx(c2, 0), r)},
                        {0.0, 0.0}};
    const EquilibriumSolution sol = solve_equilibrium(discretize(pair, 128));
    CHECK(std::abs(sol.robin_gamma() - x[1]) < 1e-9); // gamma = far-field constant
    for (const cplx z : {cplx(0.9, 0), cplx(1.5, 0), cplx(1.5, 0.5), cplx(-1.2, 0.3),
                         cplx(2.0, -0.8), cplx(5.0, 1.0)})
        CHECK(std::abs(sol.green(z) - std::max(0.0, oracle_g(z))) < 1e-8);
}
