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
#include "juliashape/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "juliashape/errors.hpp"

namespace juliashape {

std::vector<int> allocate_counts(const std::vector<double>& masses, int n) {
    const int nc = static_cast<int>(masses.size());
    if (n < nc)
        throw too_few_roots("n = " + std::to_string(n) + " is less than the number of curves (" +
                            std::to_string(nc) + ")");
    std::vector<int> counts(nc);
    std::vector<std::pair<double, int>> remainder(nc); // (-fraction, index) for stable sort
    int assigned = 0;
    for (int j = 0; j < nc; ++j) {
        const double exact = masses[j] * n;
        counts[j] = static_cast<int>(std::floor(exact));
        remainder[j] = {-(exact - counts[j]), j};
        assigned += counts[j];
    }
    std::sort(remainder.begin(), remainder.end());
    for (int r = 0; r < n - assigned; ++r) counts[remainder[r % nc].second] += 1;

    // Every curve needs at least one root; steal from the largest count.
    for (int j = 0; j < nc; ++j) {
        while (counts[j] == 0) {
            const int donor =
                static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
            counts[donor] -= 1;
            counts[j] += 1;
        }
    }
    return counts;
}

RootSample sample_roots(const EquilibriumSolution& sol, int n) {
    const auto& masses = sol.masses();
    const int nc = static_cast<int>(masses.size());
    RootSample out;
    out.n = n;
    out.per_curve_counts = allocate_counts(masses, n);
    out.roots.reserve(n);
    out.root_curve.reserve(n);
    out.root_t.reserve(n);

    for (int j = 0; j < nc; ++j) {
        const int nj = out.per_curve_counts[j];
        const Curve& curve = sol.disc().shape.curves[j];
        for (int k = 0; k < nj; ++k) {
            const double target = masses[j] * k / nj;
            const double t = sol.invert_cdf(j, target);
            out.root_t.push_back(t);
            out.root_curve.push_back(j);
            out.roots.push_back(curve.point_at(t));
        }
    }

    // Achieved equidistribution: max over all arcs of |mass - 1/n|. Within a
    // curve consecutive roots are sorted in t by construction.
    double dev = 0.0;
    int idx = 0;
    for (int j = 0; j < nc; ++j) {
        const int nj = out.per_curve_counts[j];
        for (int k = 0; k < nj; ++k) {
            const double t0 = out.root_t[idx + k];
            const double t1 = out.root_t[idx + (k + 1) % nj];
            double arc = sol.cdf(j, t1) - sol.cdf(j, t0);
            if (k + 1 == nj) arc += masses[j]; // wraps through the seam
            dev = std::max(dev, std::abs(arc - 1.0 / n));
        }
        idx += nj;
    }
    out.max_arc_mass_deviation = dev;
    return out;
}

std::string RootSample::csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "index,curve_index,t,re,im\n";
    for (size_t i = 0; i < roots.size(); ++i) {
        os << i << "," << root_curve[i] << "," << root_t[i] << "," << roots[i].real() << ","
           << roots[i].imag() << "\n";
    }
    return os.str();
}

} // namespace juliashape
