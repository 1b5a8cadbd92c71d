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
#ifndef JULIASHAPE_GEOMETRY_HPP
#define JULIASHAPE_GEOMETRY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace juliashape {

using cplx = std::complex<double>;

enum class CurveKind { circle, ellipse, fourier, rounded_polygon };

/// A smooth Jordan curve stored as a truncated Fourier series
///   zeta(t) = center + sum_{k != 0} c_k e^{ikt},  t in [0, 2pi).
/// Circles and ellipses are represented exactly (one or two modes);
/// rounded polygons are fit by sampling a corner-filleted path and
/// projecting onto at most 64 modes. Derivatives are evaluated termwise,
/// so tangents are exact. Instances are immutable after construction.
class Curve {
public:
    static Curve circle(cplx center, double radius);
    static Curve ellipse(cplx center, double semi_a, double semi_b, double rotation);
    /// coeffs[i] is the coefficient of e^{i k t} with k = coeff_index[i];
    /// a k = 0 term is folded into the center.
    static Curve fourier(cplx center, const std::vector<std::pair<int, cplx>>& coeffs);
    static Curve rounded_polygon(const std::vector<cplx>& vertices, double rounding);

    cplx point_at(double t) const;
    cplx tangent_at(double t) const;

    CurveKind kind() const { return kind_; }
    cplx center() const { return center_; }
    int max_mode() const;

    /// Dense sample polygon used by validation / point location.
    const std::vector<cplx>& samples() const { return samples_; }
    /// Max deviation of the true curve from the sample polygon chords.
    double chord_tolerance() const { return chord_tol_; }
    double perimeter_estimate() const { return perimeter_; }
    void bounding_box(double& x0, double& y0, double& x1, double& y1) const;

    Curve translated(cplx offset) const;

    std::string describe() const;

    static constexpr int kSampleCount = 1024;
    static constexpr int kMaxPolygonModes = 64;

private:
    Curve() = default;
    void build_samples();

    CurveKind kind_ = CurveKind::fourier;
    cplx center_{0.0, 0.0};
    // coeff for e^{ikt}: pos_[k-1] holds k >= 1, neg_[k-1] holds -k.
    std::vector<cplx> pos_;
    std::vector<cplx> neg_;
    std::vector<cplx> samples_;
    double chord_tol_ = 0.0;
    double perimeter_ = 0.0;
};

/// The target region E: a finite union of disjoint, mutually exterior
/// smooth Jordan curves, plus the translation applied so that 0 lies in E.
struct ShapeSet {
    std::vector<Curve> curves;
    cplx translation_applied{0.0, 0.0};

    void bounding_box(double& x0, double& y0, double& x1, double& y1) const;
    double diameter_estimate() const;
};

struct Violation {
    enum class Kind { self_intersection, irregular, overlap, nesting };
    Kind kind;
    int curve_a = -1;
    int curve_b = -1;
    double t_a = 0.0;
    double t_b = 0.0;
    std::string message;
};

struct ContainsOptions {
    // Points closer to Gamma than this raise ambiguous_boundary. Negative
    // means auto: a small multiple of the sample-polygon chord deviation.
    double boundary_tolerance = -1.0;
    int winding_samples = 512;
};

/// Membership test for z in E by winding number of each curve about z,
/// accumulated over the sample polygon with exact integer snap (tolerance
/// 0.25). Throws ambiguous_boundary for z within tolerance of Gamma.
bool contains(const ShapeSet& shape, cplx z, const ContainsOptions& opts = {});

/// Checks the ShapeSet invariants at sampling resolution. Violations are
/// data, not exceptions; an empty result means the shape is valid.
std::vector<Violation> validate(const ShapeSet& shape);

/// Translates the shape so the origin lies strictly inside the component
/// whose centroid is nearest the origin; no-op when 0 is already in E.
/// The applied offset accumulates into translation_applied.
ShapeSet normalize_origin(const ShapeSet& shape);

} // namespace juliashape

#endif // JULIASHAPE_GEOMETRY_HPP
