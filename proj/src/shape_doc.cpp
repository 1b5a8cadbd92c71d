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
#include "juliashape/shape_doc.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "juliashape/errors.hpp"

namespace juliashape {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw io_error("unknown field \"" + it.key() + "\" in " + where);
}

cplx parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw io_error(where + " must be a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

double parse_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw io_error(where + " needs a numeric \"" + key + "\"");
    return obj[key].get<double>();
}

Curve parse_curve(const json& j, size_t index) {
    const std::string where = "curves[" + std::to_string(index) + "]";
    if (!j.is_object()) throw io_error(where + " must be an object");
    if (!j.contains("type") || !j["type"].is_string())
        throw io_error(where + " needs a string \"type\"");
    const std::string type = j["type"].get<std::string>();

    if (type == "circle") {
        reject_unknown(j, {"type", "center", "radius"}, where);
        return Curve::circle(parse_complex(j.value("center", json::array({0.0, 0.0})),
                                           where + ".center"),
                             parse_number(j, "radius", where));
    }
    if (type == "ellipse") {
        reject_unknown(j, {"type", "center", "semi_axes", "rotation"}, where);
        if (!j.contains("semi_axes") || !j["semi_axes"].is_array() || j["semi_axes"].size() != 2)
            throw io_error(where + " needs \"semi_axes\": [a, b]");
        const double a = j["semi_axes"][0].get<double>();
        const double b = j["semi_axes"][1].get<double>();
        const double rot = j.contains("rotation") ? parse_number(j, "rotation", where) : 0.0;
        return Curve::ellipse(parse_complex(j.value("center", json::array({0.0, 0.0})),
                                            where + ".center"),
                              a, b, rot);
    }
    if (type == "fourier") {
        reject_unknown(j, {"type", "center", "coefficients"}, where);
        if (!j.contains("coefficients") || !j["coefficients"].is_array())
            throw io_error(where + " needs a \"coefficients\" array");
        std::vector<std::pair<int, cplx>> coeffs;
        for (size_t i = 0; i < j["coefficients"].size(); ++i) {
            const json& term = j["coefficients"][i];
            const std::string term_where =
                where + ".coefficients[" + std::to_string(i) + "]";
            if (!term.is_object()) throw io_error(term_where + " must be an object");
            reject_unknown(term, {"k", "c"}, term_where);
            if (!term.contains("k") || !term["k"].is_number_integer())
                throw io_error(term_where + " needs an integer \"k\"");
            coeffs.emplace_back(term["k"].get<int>(),
                                parse_complex(term.value("c", json::array({0.0, 0.0})),
                                              term_where + ".c"));
        }
        return Curve::fourier(parse_complex(j.value("center", json::array({0.0, 0.0})),
                                            where + ".center"),
                              coeffs);
    }
    if (type == "rounded_polygon") {
        reject_unknown(j, {"type", "vertices", "rounding"}, where);
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw io_error(where + " needs a \"vertices\" array");
        std::vector<cplx> verts;
        for (size_t i = 0; i < j["vertices"].size(); ++i)
            verts.push_back(parse_complex(j["vertices"][i],
                                          where + ".vertices[" + std::to_string(i) + "]"));
        return Curve::rounded_polygon(verts, parse_number(j, "rounding", where));
    }
    throw io_error(where + " has unknown type \"" + type + "\"");
}

} // namespace

ShapeDocument parse_shape_document(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("shape document parse error: ") + e.what());
    }
    if (!doc.is_object()) throw io_error("shape document must be a JSON object");
    reject_unknown(doc, {"name", "curves"}, "shape document");
    ShapeDocument out;
    out.name = doc.value("name", "unnamed");
    if (!doc.contains("curves") || !doc["curves"].is_array() || doc["curves"].empty())
        throw io_error("shape document needs a nonempty \"curves\" array");
    for (size_t i = 0; i < doc["curves"].size(); ++i)
        out.shape.curves.push_back(parse_curve(doc["curves"][i], i));
    return out;
}

ShapeDocument load_shape_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read shape document: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_shape_document(buf.str());
}

} // namespace juliashape
