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
#include "juliashape/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "juliashape/equilibrium.hpp"
#include "juliashape/errors.hpp"
#include "juliashape/sampler.hpp"

namespace juliashape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
} // namespace

// ---------------------------------------------------------------------------
// Grid

Grid Grid::make(double x0, double y0, double x1, double y1, int width, int height) {
    if (width <= 0 || height <= 0) throw validation_error("grid must have positive dimensions");
    if (!(x1 > x0) || !(y1 > y0)) throw validation_error("viewport must have positive extent");
    const double cx = (x1 - x0) / width;
    const double cy = (y1 - y0) / height;
    if (std::abs(cx - cy) > 1e-9 * std::max(cx, cy))
        throw validation_error("viewport/pixel dimensions give non-square pixels");
    Grid g;
    g.x0 = x0;
    g.y0 = y0;
    g.x1 = x1;
    g.y1 = y1;
    g.width = width;
    g.height = height;
    g.cell = cx;
    return g;
}

Grid Grid::cover(const ShapeSet& shape, cplx escape_center, double escape_radius, int pixels,
                 double margin) {
    double x0, y0, x1, y1;
    shape.bounding_box(x0, y0, x1, y1);
    x0 = std::min(x0, escape_center.real() - escape_radius);
    y0 = std::min(y0, escape_center.imag() - escape_radius);
    x1 = std::max(x1, escape_center.real() + escape_radius);
    y1 = std::max(y1, escape_center.imag() + escape_radius);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double side = std::max(x1 - x0, y1 - y0) * (1.0 + 2.0 * margin);
    return make(cx - 0.5 * side, cy - 0.5 * side, cx + 0.5 * side, cy + 0.5 * side, pixels,
                pixels);
}

int Classification::count(Label l) const {
    int c = 0;
    for (std::uint8_t v : labels)
        if (static_cast<Label>(v) == l) ++c;
    return c;
}

int PixelMask::count() const {
    int c = 0;
    for (std::uint8_t v : bits)
        if (v) ++c;
    return c;
}

// ---------------------------------------------------------------------------
// Rasterization

Classification rasterize_target(const ShapeSet& shape, const Grid& grid) {
    Classification out;
    out.grid = grid;
    out.source = Provenance::target_shape;
    out.labels.assign(static_cast<size_t>(grid.size()), static_cast<std::uint8_t>(Label::outside));
    out.iters.assign(static_cast<size_t>(grid.size()), 0);

    // Pixels outside every curve's bounding box are Outside without a
    // winding-number evaluation (a closed curve has winding 0 there).
    double bx0 = 0, by0 = 0, bx1 = 0, by1 = 0;
    shape.bounding_box(bx0, by0, bx1, by1);

    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            const cplx z = grid.center(r, c);
            if (z.real() < bx0 || z.real() > bx1 || z.imag() < by0 || z.imag() > by1) continue;
            try {
                if (contains(shape, z))
                    out.labels[static_cast<size_t>(r) * grid.width + c] =
                        static_cast<std::uint8_t>(Label::inside);
            } catch (const ambiguous_boundary&) {
                ++out.ambiguous_count; // assigned Outside, flagged
            }
        }
    }
    return out;
}

Classification classify_grid(const ShapedPolynomial& poly, const Grid& grid, int max_iter,
                             int threads) {
    const double R = poly.escape_radius();
    const cplx escape_center = -poly.translation_offset();
    if (!grid.contains_disk(escape_center, R))
        throw validation_error("viewport does not contain the escape disk (radius " +
                               std::to_string(R) + ")");

    Classification out;
    out.grid = grid;
    out.source = Provenance::polynomial_dynamics;
    out.labels.assign(static_cast<size_t>(grid.size()), 0);
    out.iters.assign(static_cast<size_t>(grid.size()), 0);

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, grid.height);
    const cplx offset = poly.translation_offset();

    auto work = [&](int row_begin, int row_end) {
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < grid.width; ++c) {
                const cplx z = grid.center(r, c) + offset; // into the polynomial's frame
                const ClassifyResult res = poly.classify_point(z, max_iter, R);
                const size_t idx = static_cast<size_t>(r) * grid.width + c;
                out.labels[idx] = static_cast<std::uint8_t>(res.escaped ? Label::outside
                                                                        : Label::inside);
                out.iters[idx] = res.escaped ? res.iterations : 0;
            }
        }
    };

    if (nthreads == 1) {
        work(0, grid.height);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (grid.height + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(grid.height, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

PixelMask mask_of(const Classification& c, Label l) {
    PixelMask m;
    m.width = c.grid.width;
    m.height = c.grid.height;
    m.bits.assign(c.labels.size(), 0);
    for (size_t i = 0; i < c.labels.size(); ++i)
        if (static_cast<Label>(c.labels[i]) == l) m.bits[i] = 1;
    return m;
}

PixelMask extract_boundary(const Classification& c) {
    PixelMask m;
    const int w = c.grid.width, h = c.grid.height;
    m.width = w;
    m.height = h;
    m.bits.assign(static_cast<size_t>(w) * h, 0);
    auto lab = [&](int r, int q) { return c.labels[static_cast<size_t>(r) * w + q]; };
    for (int r = 0; r < h; ++r) {
        for (int q = 0; q < w; ++q) {
            const std::uint8_t own = lab(r, q);
            const bool front = (r > 0 && lab(r - 1, q) != own) ||
                               (r + 1 < h && lab(r + 1, q) != own) ||
                               (q > 0 && lab(r, q - 1) != own) ||
                               (q + 1 < w && lab(r, q + 1) != own);
            if (front) m.bits[static_cast<size_t>(r) * w + q] = 1;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Exact Euclidean distance transform (two-pass, integer squared distances)

namespace {

constexpr std::int64_t kIntInf = std::int64_t(1) << 40;

// 1D squared-distance lower envelope over valid sites (f finite).
void edt_column(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& d) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v;
    std::vector<double> zb;
    v.reserve(n);
    zb.reserve(n + 1);
    for (int q = 0; q < n; ++q) {
        if (f[q] >= kIntInf) continue;
        const auto fq = static_cast<double>(f[q] + static_cast<std::int64_t>(q) * q);
        while (!v.empty()) {
            const int p = v.back();
            const auto fp = static_cast<double>(f[p] + static_cast<std::int64_t>(p) * p);
            const double s = (fq - fp) / (2.0 * q - 2.0 * p);
            if (!zb.empty() && s <= zb.back()) {
                v.pop_back();
                zb.pop_back();
            } else {
                v.push_back(q);
                zb.push_back(s);
                break;
            }
        }
        if (v.empty()) {
            v.push_back(q);
            zb.push_back(-std::numeric_limits<double>::infinity());
        }
    }
    d.assign(n, kIntInf);
    if (v.empty()) return;
    size_t k = 0;
    for (int q = 0; q < n; ++q) {
        while (k + 1 < v.size() && zb[k + 1] < q) ++k;
        const std::int64_t dy = q - v[k];
        d[q] = dy * dy + f[v[k]];
    }
}

} // namespace

std::vector<double> distance_transform(const PixelMask& mask, const Grid& grid) {
    const int w = mask.width, h = mask.height;
    if (mask.count() == 0) throw empty_mask("distance transform of an empty mask");

    // Pass 1: per-row horizontal distance (in cells) to the nearest set pixel.
    std::vector<std::int64_t> rowdist(static_cast<size_t>(w) * h, kIntInf);
    for (int r = 0; r < h; ++r) {
        std::int64_t d = kIntInf;
        for (int q = 0; q < w; ++q) {
            d = mask.at(r, q) ? 0 : (d >= kIntInf ? kIntInf : d + 1);
            rowdist[static_cast<size_t>(r) * w + q] = d;
        }
        d = kIntInf;
        for (int q = w - 1; q >= 0; --q) {
            d = mask.at(r, q) ? 0 : (d >= kIntInf ? kIntInf : d + 1);
            auto& cur = rowdist[static_cast<size_t>(r) * w + q];
            cur = std::min(cur, d);
        }
    }

    // Pass 2: per-column lower envelope over squared distances.
    std::vector<double> out(static_cast<size_t>(w) * h, 0.0);
    std::vector<std::int64_t> f(h), d(h);
    for (int q = 0; q < w; ++q) {
        for (int r = 0; r < h; ++r) {
            const std::int64_t rd = rowdist[static_cast<size_t>(r) * w + q];
            f[r] = (rd >= kIntInf) ? kIntInf : rd * rd;
        }
        edt_column(f, d);
        for (int r = 0; r < h; ++r)
            out[static_cast<size_t>(r) * w + q] =
                grid.cell * std::sqrt(static_cast<double>(d[r]));
    }
    return out;
}

double hausdorff_planar(const PixelMask& a, const PixelMask& b, const Grid& grid) {
    if (a.count() == 0 || b.count() == 0)
        throw empty_mask("hausdorff_planar needs two nonempty masks");
    const std::vector<double> to_b = distance_transform(b, grid);
    const std::vector<double> to_a = distance_transform(a, grid);
    double d_ab = 0.0, d_ba = 0.0;
    for (size_t i = 0; i < a.bits.size(); ++i) {
        if (a.bits[i]) d_ab = std::max(d_ab, to_b[i]);
        if (b.bits[i]) d_ba = std::max(d_ba, to_a[i]);
    }
    return std::max(d_ab, d_ba);
}

// ---------------------------------------------------------------------------
// Chordal complement distance

double chordal_distance(cplx z, cplx w) {
    return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

double chordal_distance_to_infinity(cplx z) { return 2.0 / std::sqrt(1.0 + std::norm(z)); }

namespace {

// Directed chordal distance from every set pixel of `a` (plus infinity) to
// the set pixels of `b` (plus infinity). Expanding ring search with a
// rigorous cutoff: any pixel at Chebyshev ring l is at least l*cell away in
// the plane, hence at least 2*l*cell/sqrt((1+|a|^2)(1+maxnorm)) chordally.
double directed_chordal(const PixelMask& a, const PixelMask& b, const Grid& grid) {
    const int w = a.width, h = a.height;
    double max_corner_norm = 0.0;
    for (const cplx corner : {cplx(grid.x0, grid.y0), cplx(grid.x0, grid.y1),
                              cplx(grid.x1, grid.y0), cplx(grid.x1, grid.y1)})
        max_corner_norm = std::max(max_corner_norm, std::norm(corner));

    double worst = 0.0; // contribution of infinity in `a` is 0: infinity is in `b`
    for (int r = 0; r < h; ++r) {
        for (int q = 0; q < w; ++q) {
            const size_t idx = static_cast<size_t>(r) * w + q;
            if (!a.bits[idx]) continue;
            if (b.bits[idx]) continue; // shared pixel, distance 0
            const cplx za = grid.center(r, q);
            double best = chordal_distance_to_infinity(za);
            const double denom = std::sqrt((1.0 + std::norm(za)) * (1.0 + max_corner_norm));
            const int lmax = std::max(w, h);
            for (int l = 1; l <= lmax; ++l) {
                if (2.0 * (l - 1) * grid.cell / denom >= best) break;
                const int r0 = std::max(0, r - l), r1 = std::min(h - 1, r + l);
                const int q0 = std::max(0, q - l), q1 = std::min(w - 1, q + l);
                auto visit = [&](int rr, int qq) {
                    if (!b.at(rr, qq)) return;
                    best = std::min(best, chordal_distance(za, grid.center(rr, qq)));
                };
                if (r - l >= 0)
                    for (int qq = q0; qq <= q1; ++qq) visit(r - l, qq);
                if (r + l < h)
                    for (int qq = q0; qq <= q1; ++qq) visit(r + l, qq);
                if (q - l >= 0)
                    for (int rr = std::max(r0, r - l + 1); rr <= std::min(r1, r + l - 1); ++rr)
                        visit(rr, q - l);
                if (q + l < w)
                    for (int rr = std::max(r0, r - l + 1); rr <= std::min(r1, r + l - 1); ++rr)
                        visit(rr, q + l);
            }
            worst = std::max(worst, best);
        }
    }
    return worst;
}

} // namespace

double hausdorff_chordal_complement(const Classification& target,
                                    const Classification& computed) {
    const PixelMask a = mask_of(target, Label::outside);
    const PixelMask b = mask_of(computed, Label::outside);
    if (a.count() == 0 || b.count() == 0)
        throw empty_mask("complement masks must be nonempty");
    return std::max(directed_chordal(a, b, target.grid),
                    directed_chordal(b, a, computed.grid));
}

// ---------------------------------------------------------------------------
// Reports and studies

namespace {

HausdorffReport measure_against(const Classification& target, const ShapedPolynomial& poly,
                                const Grid& grid, int max_iter, int threads,
                                Classification* keep_computed) {
    HausdorffReport rep;
    rep.n = poly.n();
    rep.delta = poly.delta();
    rep.max_iter = max_iter;
    rep.grid = grid;
    rep.escape_radius = poly.escape_radius();

    const auto t0 = std::chrono::steady_clock::now();
    const Classification computed = classify_grid(poly, grid, max_iter, threads);
    rep.classify_seconds = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    rep.inside_target = target.count(Label::inside);
    rep.inside_computed = computed.count(Label::inside);
    rep.ambiguous_target = target.ambiguous_count;

    const PixelMask fill_t = mask_of(target, Label::inside);
    const PixelMask fill_c = mask_of(computed, Label::inside);
    const PixelMask bnd_t = extract_boundary(target);
    const PixelMask bnd_c = extract_boundary(computed);
    rep.boundary_target = bnd_t.count();
    rep.boundary_computed = bnd_c.count();

    if (fill_t.count() == 0 || fill_c.count() == 0 || bnd_t.count() == 0 ||
        bnd_c.count() == 0) {
        rep.degenerate = true;
        rep.d_filled = rep.d_boundary = rep.d_complement_chordal = kInf;
    } else {
        rep.d_filled = hausdorff_planar(fill_t, fill_c, grid);
        rep.d_boundary = hausdorff_planar(bnd_t, bnd_c, grid);
        rep.d_complement_chordal = hausdorff_chordal_complement(target, computed);
    }
    rep.metrics_seconds = seconds_since(t1);
    if (keep_computed) *keep_computed = computed;
    return rep;
}

} // namespace

HausdorffReport measure(const ShapeSet& original_shape, const ShapedPolynomial& poly,
                        const Grid& grid, int max_iter, int threads,
                        Classification* keep_target, Classification* keep_computed) {
    const Classification target = rasterize_target(original_shape, grid);
    HausdorffReport rep = measure_against(target, poly, grid, max_iter, threads, keep_computed);
    if (keep_target) *keep_target = target;
    return rep;
}

StudyResult convergence_study(const ShapeSet& original_shape, const EquilibriumSolution& sol,
                              const Grid& grid, const StudyOptions& opts) {
    if (opts.deltas.empty() || opts.ns.empty())
        throw validation_error("study needs nonempty delta and n lists");
    StudyResult out;
    std::vector<RootSample> samples;
    samples.reserve(opts.ns.size());
    for (int n : opts.ns) samples.push_back(sample_roots(sol, n));
    const Classification target = rasterize_target(original_shape, grid);

    for (double delta : opts.deltas) {
        bool monotone = true;
        double prev = kInf;
        for (size_t i = 0; i < opts.ns.size(); ++i) {
            const ShapedPolynomial poly = ShapedPolynomial::build(sol, samples[i], delta);
            HausdorffReport rep =
                measure_against(target, poly, grid, opts.max_iter, opts.threads, nullptr);
            rep.m_per_curve = sol.disc().curves.empty() ? 0 : sol.disc().curves[0].m;
            if (rep.d_boundary > prev + grid.diagonal()) monotone = false;
            prev = rep.d_boundary;
            out.rows.push_back(rep);
            if (opts.eps_target && !rep.degenerate && rep.d_filled < *opts.eps_target &&
                rep.d_boundary < *opts.eps_target &&
                rep.d_complement_chordal < *opts.eps_target) {
                out.eps_hit = {delta, poly.n()};
                out.monotone_trend.emplace_back(delta, monotone);
                return out;
            }
        }
        out.monotone_trend.emplace_back(delta, monotone);
    }
    out.exhausted_scan = opts.eps_target.has_value();
    return out;
}

} // namespace juliashape
