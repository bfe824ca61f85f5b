#pragma once

// JSON and CSV formats:
//   matrix      {"dim": d, "entries": [[[re, im], ...], ...]}
//   scheme      {"label", "pairing": {"kind", "scale" | "J"}, "quantizers", "dequantizers"}
//   constants   {"n", "values": [[[[re, im], ...], ...], ...]}
//   grid        {"n", "L", "values": [[[re, im], ...], ...]}
//   tomogram    {"grid": {"n", "L"}, "ray_data": [[[re, im], ...], ...]}

#include "starprod/lie_structures.hpp"
#include "starprod/tomography.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace starprod::io {

using Json = nlohmann::json;

/// Parses a document; syntax errors raise ParseError carrying the line number.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Accepts the matrix format with zero imaginary parts or a plain array of rows.
Eigen::Matrix3d real3_from_json(const Json& j);

Json scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const Json& j);

Json constants_to_json(const StructureConstants& c);
StructureConstants constants_from_json(const Json& j);

Json classification_to_json(const ThreeDClass& c);

Json grid_function_to_json(const GridFunction& g);
GridFunction grid_function_from_json(const Json& j);

Json tomogram_to_json(const Tomogram& w);
Tomogram tomogram_from_json(const Json& j);

/// Rows q, p, re, im.
void write_grid_csv(const std::string& path, const GridFunction& g);

/// Rows mu, nu, X, w for every frame and every X sample.
void write_ray_csv(const std::string& path, const Tomogram& w, const std::vector<std::pair<double, double>>& frames,
                   const std::vector<double>& xs);

}  // namespace starprod::io
