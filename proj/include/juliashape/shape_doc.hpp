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
#ifndef JULIASHAPE_SHAPE_DOC_HPP
#define JULIASHAPE_SHAPE_DOC_HPP

#include <string>

#include "juliashape/geometry.hpp"

namespace juliashape {

/// Parsed shape document: {"name": ..., "curves": [...]}. Unknown fields are
/// rejected. Curve entries:
///   {"type": "circle",          "center": [re, im], "radius": r}
///   {"type": "ellipse",         "center": [re, im], "semi_axes": [a, b], "rotation": rad}
///   {"type": "fourier",         "center": [re, im], "coefficients": [{"k": int, "c": [re, im]}, ...]}
///   {"type": "rounded_polygon", "vertices": [[re, im], ...], "rounding": r}
struct ShapeDocument {
    std::string name;
    ShapeSet shape;
};

ShapeDocument parse_shape_document(const std::string& json_text);
ShapeDocument load_shape_document(const std::string& path);

} // namespace juliashape

#endif // JULIASHAPE_SHAPE_DOC_HPP
