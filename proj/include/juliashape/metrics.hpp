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
#ifndef JULIASHAPE_METRICS_HPP
#define JULIASHAPE_METRICS_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "juliashape/dynamics.hpp"
#include "juliashape/geometry.hpp"

namespace juliashape {

/// Square-pixel raster window. Row 0 is the top scanline.
struct Grid {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int width = 0, height = 0;
    double cell = 0.0;

    static Grid make(double x0, double y0, double x1, double y1, int width, int height);
    /// Smallest square viewport covering the shape and the escape disk
    /// |z + offset-origin| <= R, with a small margin.
    static Grid cover(const ShapeSet& shape, cplx escape_center, double escape_radius,
                      int pixels, double margin = 0.02);

    cplx center(int row, int col) const {
        return cplx(x0 + (col + 0.5) * cell, y1 - (row + 0.5) * cell);
    }
    int size() const { return width * height; }
    double diagonal() const { return cell * std::numbers::sqrt2; }
    bool contains_disk(cplx c, double r) const {
        return c.real() - r >= x0 && c.real() + r <= x1 && c.imag() - r >= y0 &&
               c.imag() + r <= y1;
    }
};

enum class Label : std::uint8_t { inside = 0, outside = 1 };
enum class Provenance { target_shape, polynomial_dynamics };

struct Classification {
    Grid grid;
    std::vector<std::uint8_t> labels;  // Label per pixel, row-major
    std::vector<std::int32_t> iters;   // escape iteration count, 0 for inside
    int ambiguous_count = 0;           // boundary-ambiguous pixels (assigned outside)
    Provenance source = Provenance::target_shape;

    Label at(int row, int col) const {
        return static_cast<Label>(labels[static_cast<size_t>(row) * grid.width + col]);
    }
    int count(Label l) const;
};

struct PixelMask {
    int width = 0, height = 0;
    std::vector<std::uint8_t> bits;

    bool at(int row, int col) const { return bits[static_cast<size_t>(row) * width + col] != 0; }
    int count() const;
};

Classification rasterize_target(const ShapeSet& shape, const Grid& grid);

/// Escape-time classification of the filled Julia set over pixel centers.
/// Data-parallel over pixels; threads = 0 means hardware concurrency. The
/// output is independent of the thread count.
Classification classify_grid(const ShapedPolynomial& poly, const Grid& grid, int max_iter,
                             int threads = 0);

PixelMask mask_of(const Classification& c, Label l);

/// Pixels on either side of the inside/outside front (union of both fronts,
/// 4-neighborhood).
PixelMask extract_boundary(const Classification& c);

/// Exact Euclidean distance (in plane units) from every pixel center to the
/// nearest set pixel center; two-pass separable transform over integer
/// squared distances. Throws empty_mask.
std::vector<double> distance_transform(const PixelMask& mask, const Grid& grid);

double hausdorff_planar(const PixelMask& a, const PixelMask& b, const Grid& grid);

/// Hausdorff distance between the two complements on the Riemann sphere in
/// the chordal metric d(z,w) = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)). Both
/// complements are the Outside pixels plus the point at infinity; beyond the
/// viewport the complements coincide, contributing nothing.
double hausdorff_chordal_complement(const Classification& target,
                                    const Classification& computed);

double chordal_distance(cplx z, cplx w);
double chordal_distance_to_infinity(cplx z);

struct HausdorffReport {
    int n = 0;
    double delta = 0.0;
    int m_per_curve = 0;
    int max_iter = 0;
    Grid grid;
    double escape_radius = 0.0;
    double d_filled = 0.0;
    double d_boundary = 0.0;
    double d_complement_chordal = 0.0;
    int inside_target = 0;
    int inside_computed = 0;
    int boundary_target = 0;
    int boundary_computed = 0;
    int ambiguous_target = 0;
    bool degenerate = false; // one of the masks was empty; distances are +inf
    // Wall-clock seconds; reported on the console only, never serialized
    // (output artifacts are byte-deterministic).
    double classify_seconds = 0.0;
    double metrics_seconds = 0.0;
};

HausdorffReport measure(const ShapeSet& original_shape, const ShapedPolynomial& poly,
                        const Grid& grid, int max_iter, int threads = 0,
                        Classification* keep_target = nullptr,
                        Classification* keep_computed = nullptr);

struct StudyOptions {
    std::vector<double> deltas;
    std::vector<int> ns;
    int max_iter = 60;
    int threads = 0;
    std::optional<double> eps_target; // stop at the first row with all three < eps
};

struct StudyResult {
    std::vector<HausdorffReport> rows;
    // Per delta: true when d_boundary is non-increasing in n within one grid
    // diagonal.
    std::vector<std::pair<double, bool>> monotone_trend;
    std::optional<std::pair<double, int>> eps_hit; // first (delta, n) meeting the target
    bool exhausted_scan = false;                   // eps target requested but never met
};

class EquilibriumSolution;

StudyResult convergence_study(const ShapeSet& original_shape, const EquilibriumSolution& sol,
                              const Grid& grid, const StudyOptions& opts);

} // namespace juliashape

#endif // JULIASHAPE_METRICS_HPP
