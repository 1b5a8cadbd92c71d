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
#ifndef JULIASHAPE_IMAGE_HPP
#define JULIASHAPE_IMAGE_HPP

#include <string>

#include "juliashape/metrics.hpp"

namespace juliashape {

// Binary PGM (P5, maxval 255): Inside = 0, Outside = 255. Byte-exact output.
void write_pgm_labels(const Classification& c, const std::string& path);

// Set pixels = 0, rest = 255.
void write_pgm_mask(const PixelMask& m, const std::string& path);

// Binary PPM (P6) colored by escape iteration count; inside stays black.
void write_ppm_iterations(const Classification& c, int max_iter, const std::string& path);

} // namespace juliashape

#endif // JULIASHAPE_IMAGE_HPP
