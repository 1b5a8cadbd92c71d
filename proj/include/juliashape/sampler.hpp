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
#ifndef JULIASHAPE_SAMPLER_HPP
#define JULIASHAPE_SAMPLER_HPP

#include <string>
#include <vector>

#include "juliashape/equilibrium.hpp"

namespace juliashape {

/// n boundary points approximately equidistributed with respect to the
/// harmonic measure: cutting Gamma at the roots yields arcs whose measures
/// all lie within max_arc_mass_deviation of 1/n.
struct RootSample {
    int n = 0;
    std::vector<int> per_curve_counts;
    std::vector<cplx> roots;
    std::vector<int> root_curve;    // curve index per root
    std::vector<double> root_t;     // parameter per root
    double max_arc_mass_deviation = 0.0;

    std::string csv() const; // index,curve_index,t,re,im
};

/// Distributes n among the curves proportionally to their measures by
/// largest-remainder rounding (ties broken by curve index). Throws
/// too_few_roots when n < number of curves.
std::vector<int> allocate_counts(const std::vector<double>& masses, int n);

/// Places the allocated roots per curve at cumulative-measure targets
/// k * mu_j / n_j (k = 0..n_j-1) by inverting the curve's CDF. Deterministic:
/// identical inputs give identical roots bit-for-bit.
RootSample sample_roots(const EquilibriumSolution& sol, int n);

} // namespace juliashape

#endif // JULIASHAPE_SAMPLER_HPP
