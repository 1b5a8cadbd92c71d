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
#include "juliashape/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "juliashape/errors.hpp"

namespace juliashape {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from p to segment [a, b].
double segment_distance(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double u = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(p - (a + u * ab));
}

double segment_segment_distance(cplx a0, cplx a1, cplx b0, cplx b1) {
    auto orient = [](cplx p, cplx q, cplx r) {
        return (q.real() - p.real()) * (r.imag() - p.imag()) -
               (q.imag() - p.imag()) * (r.real() - p.real());
    };
    const double d1 = orient(a0, a1, b0), d2 = orient(a0, a1, b1);
    const double d3 = orient(b0, b1, a0), d4 = orient(b0, b1, a1);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0; // proper crossing
    return std::min(std::min(segment_distance(b0, a0, a1), segment_distance(b1, a0, a1)),
                    std::min(segment_distance(a0, b0, b1), segment_distance(a1, b0, b1)));
}

} // namespace

// ---------------------------------------------------------------------------
// Curve construction

Curve Curve::circle(cplx center, double radius) {
    if (!(radius > 0.0)) throw validation_error("circle radius must be positive");
    Curve c;
    c.kind_ = CurveKind::circle;
    c.center_ = center;
    c.pos_ = {cplx(radius, 0.0)};
    c.build_samples();
    return c;
}

Curve Curve::ellipse(cplx center, double semi_a, double semi_b, double rotation) {
    if (!(semi_a > 0.0) || !(semi_b > 0.0))
        throw validation_error("ellipse semi-axes must be positive");
    // a cos t + i b sin t = (a+b)/2 e^{it} + (a-b)/2 e^{-it}, rotated.
    const cplx rot = std::polar(1.0, rotation);
    Curve c;
    c.kind_ = CurveKind::ellipse;
    c.center_ = center;
    c.pos_ = {rot * cplx(0.5 * (semi_a + semi_b), 0.0)};
    c.neg_ = {rot * cplx(0.5 * (semi_a - semi_b), 0.0)};
    c.build_samples();
    return c;
}

Curve Curve::fourier(cplx center, const std::vector<std::pair<int, cplx>>& coeffs) {
    Curve c;
    c.kind_ = CurveKind::fourier;
    c.center_ = center;
    int kmax = 0;
    for (const auto& [k, v] : coeffs) kmax = std::max(kmax, std::abs(k));
    if (kmax == 0) throw validation_error("fourier curve needs at least one k != 0 coefficient");
    c.pos_.assign(kmax, cplx(0.0, 0.0));
    c.neg_.assign(kmax, cplx(0.0, 0.0));
    for (const auto& [k, v] : coeffs) {
        if (k == 0)
            c.center_ += v;
        else if (k > 0)
            c.pos_[k - 1] += v;
        else
            c.neg_[-k - 1] += v;
    }
    c.build_samples();
    return c;
}

Curve Curve::rounded_polygon(const std::vector<cplx>& vertices, double rounding) {
    const int p = static_cast<int>(vertices.size());
    if (p < 3) throw validation_error("rounded_polygon needs at least 3 vertices");
    if (!(rounding > 0.0)) throw validation_error("rounding radius must be positive");

    // Ensure counterclockwise order.
    std::vector<cplx> v = vertices;
    double area2 = 0.0;
    for (int i = 0; i < p; ++i) {
        const cplx a = v[i], b = v[(i + 1) % p];
        area2 += a.real() * b.imag() - a.imag() * b.real();
    }
    if (area2 < 0.0) std::reverse(v.begin(), v.end());

    // Fillet each corner with a circular arc tangent to both edges.
    struct Arc { cplx center; double a0, a1, r; cplx entry, exit; };
    std::vector<Arc> arcs(p);
    for (int i = 0; i < p; ++i) {
        const cplx prev = v[(i + p - 1) % p], cur = v[i], next = v[(i + 1) % p];
        const cplx din = (cur - prev) / std::abs(cur - prev);
        const cplx dout = (next - cur) / std::abs(next - cur);
        const double cross = din.real() * dout.imag() - din.imag() * dout.real();
        const double dot = din.real() * dout.real() + din.imag() * dout.imag();
        const double turn = std::atan2(cross, dot); // exterior turn angle at cur
        if (std::abs(turn) < 1e-12) { // collinear, no fillet needed
            arcs[i] = {cur, 0.0, 0.0, 0.0, cur, cur};
            continue;
        }
        const double setback = rounding * std::abs(std::tan(0.5 * turn));
        const double lin = std::abs(cur - prev), lout = std::abs(next - cur);
        if (setback > 0.5 * std::min(lin, lout)) {
            std::ostringstream os;
            os << "rounding " << rounding << " too large at vertex " << i;
            throw validation_error(os.str());
        }
        const cplx entry = cur - din * setback;
        const cplx exit = cur + dout * setback;
        const cplx nin = (turn > 0) ? cplx(-din.imag(), din.real()) : cplx(din.imag(), -din.real());
        const cplx center = entry + nin * rounding;
        double a0 = std::arg(entry - center);
        double a1 = std::arg(exit - center);
        // Sweep in the direction of the turn.
        if (turn > 0) { while (a1 < a0) a1 += kTwoPi; }
        else { while (a1 > a0) a1 -= kTwoPi; }
        arcs[i] = {center, a0, a1, rounding, entry, exit};
    }

    // Walk the path (arc_i, segment from exit_i to entry_{i+1}, ...) by arclength.
    struct Piece { bool is_arc; int idx; double len; };
    std::vector<Piece> pieces;
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
        const double alen = arcs[i].r * std::abs(arcs[i].a1 - arcs[i].a0);
        pieces.push_back({true, i, alen});
        total += alen;
        const double slen = std::abs(arcs[(i + 1) % p].entry - arcs[i].exit);
        pieces.push_back({false, i, slen});
        total += slen;
    }

    auto path_point = [&](double s) -> cplx {
        for (const auto& pc : pieces) {
            if (s <= pc.len || &pc == &pieces.back()) {
                const double u = (pc.len > 0.0) ? std::min(s / pc.len, 1.0) : 0.0;
                if (pc.is_arc) {
                    const Arc& a = arcs[pc.idx];
                    if (a.r == 0.0) return a.entry;
                    return a.center + std::polar(a.r, a.a0 + u * (a.a1 - a.a0));
                }
                const cplx from = arcs[pc.idx].exit;
                const cplx to = arcs[(pc.idx + 1) % p].entry;
                return from + u * (to - from);
            }
            s -= pc.len;
        }
        return arcs[0].entry;
    };

    // Project the arclength-parameterized path onto <= kMaxPolygonModes modes.
    const int nsamp = 4096;
    std::vector<cplx> path(nsamp);
    for (int j = 0; j < nsamp; ++j) path[j] = path_point(total * j / nsamp);

    const int kmax = kMaxPolygonModes;
    cplx c0(0.0, 0.0);
    for (const cplx& z : path) c0 += z;
    c0 /= static_cast<double>(nsamp);

    Curve c;
    c.kind_ = CurveKind::rounded_polygon;
    c.center_ = c0;
    c.pos_.assign(kmax, cplx(0.0, 0.0));
    c.neg_.assign(kmax, cplx(0.0, 0.0));
    for (int k = 1; k <= kmax; ++k) {
        cplx cp(0.0, 0.0), cn(0.0, 0.0);
        for (int j = 0; j < nsamp; ++j) {
            const double ang = kTwoPi * k * j / nsamp;
            const cplx e(std::cos(ang), -std::sin(ang)); // e^{-ikt_j}
            cp += path[j] * e;
            cn += path[j] * std::conj(e);
        }
        c.pos_[k - 1] = cp / static_cast<double>(nsamp);
        c.neg_[k - 1] = cn / static_cast<double>(nsamp);
    }
    c.build_samples();
    return c;
}

void Curve::build_samples() {
    samples_.resize(kSampleCount);
    for (int j = 0; j < kSampleCount; ++j)
        samples_[j] = point_at(kTwoPi * j / kSampleCount);
    // Chord deviation: compare curve midpoints against chord midpoints.
    chord_tol_ = 0.0;
    perimeter_ = 0.0;
    for (int j = 0; j < kSampleCount; ++j) {
        const cplx a = samples_[j], b = samples_[(j + 1) % kSampleCount];
        const cplx mid = point_at(kTwoPi * (j + 0.5) / kSampleCount);
        chord_tol_ = std::max(chord_tol_, std::abs(mid - 0.5 * (a + b)));
        perimeter_ += std::abs(b - a);
    }
}

cplx Curve::point_at(double t) const {
    const cplx u = std::polar(1.0, t);
    const cplx uc = std::conj(u);
    cplx sum = center_;
    cplx up = u, un = uc;
    const size_t kmax = std::max(pos_.size(), neg_.size());
    for (size_t k = 0; k < kmax; ++k) {
        if (k < pos_.size()) sum += pos_[k] * up;
        if (k < neg_.size()) sum += neg_[k] * un;
        up *= u;
        un *= uc;
    }
    return sum;
}

cplx Curve::tangent_at(double t) const {
    const cplx u = std::polar(1.0, t);
    const cplx uc = std::conj(u);
    cplx sum(0.0, 0.0);
    cplx up = u, un = uc;
    const size_t kmax = std::max(pos_.size(), neg_.size());
    for (size_t k = 0; k < kmax; ++k) {
        const double kk = static_cast<double>(k + 1);
        if (k < pos_.size()) sum += pos_[k] * up * cplx(0.0, kk);
        if (k < neg_.size()) sum += neg_[k] * un * cplx(0.0, -kk);
        up *= u;
        un *= uc;
    }
    return sum;
}

int Curve::max_mode() const {
    return static_cast<int>(std::max(pos_.size(), neg_.size()));
}

void Curve::bounding_box(double& x0, double& y0, double& x1, double& y1) const {
    x0 = y0 = std::numeric_limits<double>::max();
    x1 = y1 = std::numeric_limits<double>::lowest();
    for (const cplx& z : samples_) {
        x0 = std::min(x0, z.real());
        y0 = std::min(y0, z.imag());
        x1 = std::max(x1, z.real());
        y1 = std::max(y1, z.imag());
    }
    x0 -= chord_tol_; y0 -= chord_tol_;
    x1 += chord_tol_; y1 += chord_tol_;
}

Curve Curve::translated(cplx offset) const {
    Curve c = *this;
    c.center_ += offset;
    for (cplx& z : c.samples_) z += offset;
    return c;
}

std::string Curve::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case CurveKind::circle: os << "circle"; break;
        case CurveKind::ellipse: os << "ellipse"; break;
        case CurveKind::fourier: os << "fourier"; break;
        case CurveKind::rounded_polygon: os << "rounded_polygon"; break;
    }
    os << " center=(" << center_.real() << "," << center_.imag() << ") modes=" << max_mode();
    return os.str();
}

// ---------------------------------------------------------------------------
// ShapeSet

void ShapeSet::bounding_box(double& x0, double& y0, double& x1, double& y1) const {
    x0 = y0 = std::numeric_limits<double>::max();
    x1 = y1 = std::numeric_limits<double>::lowest();
    for (const Curve& c : curves) {
        double a, b, d, e;
        c.bounding_box(a, b, d, e);
        x0 = std::min(x0, a);
        y0 = std::min(y0, b);
        x1 = std::max(x1, d);
        y1 = std::max(y1, e);
    }
}

double ShapeSet::diameter_estimate() const {
    double x0, y0, x1, y1;
    bounding_box(x0, y0, x1, y1);
    return std::hypot(x1 - x0, y1 - y0);
}

// ---------------------------------------------------------------------------
// Point location

namespace {

// Winding number of one curve about z over the sample polygon, plus the
// minimum distance from z to the polygon.
void winding_of_curve(const Curve& c, cplx z, int stride, double& winding, double& min_dist) {
    const auto& s = c.samples();
    const int n = static_cast<int>(s.size());
    double theta = 0.0;
    min_dist = std::numeric_limits<double>::max();
    cplx prev = s[0] - z;
    for (int j = stride; j <= n; j += stride) {
        const cplx curp = s[j % n] - z;
        const double cross = prev.real() * curp.imag() - prev.imag() * curp.real();
        const double dot = prev.real() * curp.real() + prev.imag() * curp.imag();
        theta += std::atan2(cross, dot);
        min_dist = std::min(min_dist, segment_distance(cplx(0, 0), prev, curp));
        prev = curp;
    }
    winding = theta / kTwoPi;
}

} // namespace

bool contains(const ShapeSet& shape, cplx z, const ContainsOptions& opts) {
    bool inside = false;
    for (size_t i = 0; i < shape.curves.size(); ++i) {
        const Curve& c = shape.curves[i];
        double bx0, by0, bx1, by1;
        c.bounding_box(bx0, by0, bx1, by1);
        const double tol = (opts.boundary_tolerance >= 0.0)
                               ? opts.boundary_tolerance
                               : std::max(4.0 * c.chord_tolerance(), 1e-12);
        if (z.real() < bx0 - tol || z.real() > bx1 + tol ||
            z.imag() < by0 - tol || z.imag() > by1 + tol)
            continue; // exterior of bbox: winding 0
        const int stride =
            std::max(1, Curve::kSampleCount / std::max(1, opts.winding_samples));
        double w = 0.0, dist = 0.0;
        winding_of_curve(c, z, stride, w, dist);
        if (dist < tol)
            throw ambiguous_boundary("point within tolerance of curve " + std::to_string(i));
        const double snapped = std::round(w);
        if (std::abs(w - snapped) > 0.25)
            throw ambiguous_boundary("winding number " + std::to_string(w) +
                                     " failed integer snap for curve " + std::to_string(i));
        if (std::lround(snapped) != 0) inside = true;
    }
    return inside;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate(const ShapeSet& shape) {
    std::vector<Violation> out;
    const int N = Curve::kSampleCount;

    for (size_t i = 0; i < shape.curves.size(); ++i) {
        const Curve& c = shape.curves[i];
        const double scale = std::max(c.perimeter_estimate(), 1e-30);

        // Regular parameterization: |zeta'(t)| > 0 at the sampling resolution.
        for (int j = 0; j < N; ++j) {
            const double t = kTwoPi * j / N;
            if (std::abs(c.tangent_at(t)) < 1e-9 * scale) {
                out.push_back({Violation::Kind::irregular, static_cast<int>(i), -1, t, 0.0,
                               "curve " + std::to_string(i) + " has vanishing speed near t=" +
                                   std::to_string(t)});
                break;
            }
        }

        // Simple closed curve: non-adjacent sample segments must stay apart.
        const auto& s = c.samples();
        const double self_tol = std::max(2.0 * c.chord_tolerance(), 1e-12 * scale);
        bool reported = false;
        for (int a = 0; a < N && !reported; ++a) {
            for (int b = a + 2; b < N; ++b) {
                if (a == 0 && b == N - 1) continue; // wrap-adjacent
                const double d = segment_segment_distance(s[a], s[(a + 1) % N], s[b],
                                                          s[(b + 1) % N]);
                if (d < self_tol) {
                    out.push_back({Violation::Kind::self_intersection, static_cast<int>(i), -1,
                                   kTwoPi * a / N, kTwoPi * b / N,
                                   "curve " + std::to_string(i) +
                                       " self-intersects near t=" + std::to_string(kTwoPi * a / N) +
                                       " and t=" + std::to_string(kTwoPi * b / N)});
                    reported = true;
                    break;
                }
            }
        }
    }

    for (size_t i = 0; i < shape.curves.size(); ++i) {
        for (size_t j = i + 1; j < shape.curves.size(); ++j) {
            const Curve& ci = shape.curves[i];
            const Curve& cj = shape.curves[j];
            const auto& si = ci.samples();
            const auto& sj = cj.samples();
            const double tol =
                2.0 * std::max(ci.chord_tolerance(), cj.chord_tolerance()) + 1e-12;

            double bix0, biy0, bix1, biy1, bjx0, bjy0, bjx1, bjy1;
            ci.bounding_box(bix0, biy0, bix1, biy1);
            cj.bounding_box(bjx0, bjy0, bjx1, bjy1);
            const bool boxes_apart = bix1 + tol < bjx0 || bjx1 + tol < bix0 ||
                                     biy1 + tol < bjy0 || bjy1 + tol < biy0;

            double min_d = std::numeric_limits<double>::max();
            double ta = 0.0, tb = 0.0;
            if (!boxes_apart) {
                for (int a = 0; a < N; ++a) {
                    for (int b = 0; b < N; ++b) {
                        const double d = segment_segment_distance(
                            si[a], si[(a + 1) % N], sj[b], sj[(b + 1) % N]);
                        if (d < min_d) {
                            min_d = d;
                            ta = kTwoPi * a / N;
                            tb = kTwoPi * b / N;
                        }
                    }
                }
            }
            if (!boxes_apart && min_d < tol) {
                out.push_back({Violation::Kind::overlap, static_cast<int>(i),
                               static_cast<int>(j), ta, tb,
                               "curves " + std::to_string(i) + " and " + std::to_string(j) +
                                   " overlap (min distance " + std::to_string(min_d) + ")"});
                continue;
            }

            // Mutually exterior: neither curve may lie inside the other.
            ShapeSet only_j{{cj}, {0.0, 0.0}};
            ShapeSet only_i{{ci}, {0.0, 0.0}};
            try {
                if (contains(only_j, si[0])) {
                    out.push_back({Violation::Kind::nesting, static_cast<int>(i),
                                   static_cast<int>(j), 0.0, 0.0,
                                   "curve " + std::to_string(i) + " lies inside curve " +
                                       std::to_string(j)});
                } else if (contains(only_i, sj[0])) {
                    out.push_back({Violation::Kind::nesting, static_cast<int>(j),
                                   static_cast<int>(i), 0.0, 0.0,
                                   "curve " + std::to_string(j) + " lies inside curve " +
                                       std::to_string(i)});
                }
            } catch (const ambiguous_boundary&) {
                // Curves touching within tolerance already reported as overlap.
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Origin normalization

namespace {

cplx interior_point(const Curve& c) {
    ShapeSet one{{c}, {0.0, 0.0}};
    try {
        if (contains(one, c.center())) return c.center();
    } catch (const ambiguous_boundary&) {
    }
    // Concave curve whose Fourier mean falls outside: scan the bbox.
    double x0, y0, x1, y1;
    c.bounding_box(x0, y0, x1, y1);
    const int grid = 17;
    for (int r = 0; r < grid; ++r) {
        for (int q = 0; q < grid; ++q) {
            const cplx p(x0 + (x1 - x0) * (q + 0.5) / grid, y0 + (y1 - y0) * (r + 0.5) / grid);
            try {
                if (contains(one, p)) return p;
            } catch (const ambiguous_boundary&) {
            }
        }
    }
    throw numerical_error("could not locate an interior point of a curve");
}

} // namespace

ShapeSet normalize_origin(const ShapeSet& shape) {
    try {
        if (contains(shape, cplx(0.0, 0.0))) return shape;
    } catch (const ambiguous_boundary&) {
        // Origin essentially on Gamma: translate as if outside.
    }
    size_t best = 0;
    double best_dist = std::numeric_limits<double>::max();
    for (size_t i = 0; i < shape.curves.size(); ++i) {
        const double d = std::abs(shape.curves[i].center());
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    const cplx offset = -interior_point(shape.curves[best]);
    ShapeSet out;
    out.curves.reserve(shape.curves.size());
    for (const Curve& c : shape.curves) out.curves.push_back(c.translated(offset));
    out.translation_applied = shape.translation_applied + offset;
    return out;
}

} // namespace juliashape
