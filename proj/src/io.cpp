#include "starprod/io.hpp"

#include "starprod/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace starprod::io {

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 0); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

int positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(std::string(what) + " must be a positive integer");
  return j.get<int>();
}

Json square_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix square_from_json(const Json& rows, int dim, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    fail(std::string(what) + " must have " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(std::string(what) + " row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json grid_to_json(const Grid& g) { return Json{{"n", g.n()}, {"L", g.half_width()}}; }

Grid grid_from_json(const Json& j) {
  try {
    return Grid(positive_int(field(j, "n"), "n"), number(field(j, "L"), "L"));
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ": " + e.what(), line);
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const ComplexMatrix& m) {
  return Json{{"dim", m.rows()}, {"entries", square_to_json(m)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int dim = positive_int(field(j, "dim"), "dim");
  return square_from_json(field(j, "entries"), dim, "entries");
}

Eigen::Matrix3d real3_from_json(const Json& j) {
  const ComplexMatrix m = j.is_object() ? matrix_from_json(j) : square_from_json(j, 3, "matrix");
  if (m.rows() != 3) fail("expected a 3x3 matrix");
  if (m.imag().cwiseAbs().maxCoeff() > 0.0) fail("expected a real matrix");
  return m.real();
}

Json scheme_to_json(const Scheme& s) {
  Json pairing{{"kind", s.pairing().kind_name()}};
  if (s.pairing().kind() == PairingForm::Kind::JTwistedTrace) {
    pairing["J"] = matrix_to_json(s.pairing().twist());
  } else {
    pairing["scale"] = s.pairing().scale();
  }
  Json q = Json::array();
  Json d = Json::array();
  for (Index x = 0; x < s.size(); ++x) {
    q.push_back(matrix_to_json(s.quantizer(x)));
    d.push_back(matrix_to_json(s.dequantizer(x)));
  }
  return Json{{"label", s.label()}, {"pairing", pairing}, {"quantizers", q}, {"dequantizers", d}};
}

Scheme scheme_from_json(const Json& j) {
  const Json& p = field(j, "pairing");
  const Json& kind_j = field(p, "kind");
  if (!kind_j.is_string()) fail("pairing kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  std::string label = "custom";
  if (j.contains("label")) {
    if (!j.at("label").is_string()) fail("label must be a string");
    label = j.at("label").get<std::string>();
  }
  try {
    auto make_pairing = [&]() {
      if (kind == "scaled-trace") return PairingForm::scaled_trace(number(field(p, "scale"), "scale"));
      if (kind == "scaled-imag-trace") return PairingForm::scaled_imag_trace(number(field(p, "scale"), "scale"));
      if (kind == "J-twisted-trace") return PairingForm::j_twisted_trace(matrix_from_json(field(p, "J")));
      fail("unknown pairing kind \"" + kind + "\"");
    };
    return Scheme(label, make_pairing(), matrices_from_json(field(j, "quantizers"), "quantizers"),
                  matrices_from_json(field(j, "dequantizers"), "dequantizers"));
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
}

Json constants_to_json(const StructureConstants& c) {
  Json outer = Json::array();
  for (Index i = 0; i < c.size(); ++i) {
    Json mid = Json::array();
    for (Index k = 0; k < c.size(); ++k) {
      Json inner = Json::array();
      for (Index l = 0; l < c.size(); ++l) inner.push_back(complex_to_json(c(i, k, l)));
      mid.push_back(std::move(inner));
    }
    outer.push_back(std::move(mid));
  }
  return Json{{"n", c.size()}, {"values", outer}};
}

StructureConstants constants_from_json(const Json& j) {
  const int n = positive_int(field(j, "n"), "n");
  const Json& v = field(j, "values");
  std::vector<Complex> flat;
  flat.reserve(static_cast<std::size_t>(n) * n * n);
  if (!v.is_array() || static_cast<int>(v.size()) != n) fail("values must be an n x n x n array");
  for (const auto& mid : v) {
    if (!mid.is_array() || static_cast<int>(mid.size()) != n) fail("values must be an n x n x n array");
    for (const auto& inner : mid) {
      if (!inner.is_array() || static_cast<int>(inner.size()) != n) fail("values must be an n x n x n array");
      for (const auto& z : inner) flat.push_back(complex_from_json(z));
    }
  }
  try {
    return StructureConstants::from_values(n, flat);
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
}

Json classification_to_json(const ThreeDClass& c) {
  return Json{{"label", to_string(c.label)}, {"h", c.params.h},           {"a", c.params.a},
              {"b", c.params.b},             {"c", c.params.c},           {"jacobi_residual", c.jacobi_residual}};
}

Json grid_function_to_json(const GridFunction& g) {
  return Json{{"n", g.grid.n()}, {"L", g.grid.half_width()}, {"values", square_to_json(g.values)}};
}

GridFunction grid_function_from_json(const Json& j) {
  const Grid g = grid_from_json(j);
  return {g, square_from_json(field(j, "values"), g.n(), "values")};
}

Json tomogram_to_json(const Tomogram& w) {
  return Json{{"grid", grid_to_json(w.grid())}, {"ray_data", square_to_json(w.ray_data().values)}};
}

Tomogram tomogram_from_json(const Json& j) {
  const Grid g = grid_from_json(field(j, "grid"));
  return Tomogram(FourierFunction{g, square_from_json(field(j, "ray_data"), g.n(), "ray_data")});
}

void write_grid_csv(const std::string& path, const GridFunction& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "q,p,re,im\n";
  for (int j = 0; j < g.grid.n(); ++j)
    for (int k = 0; k < g.grid.n(); ++k) {
      out << g.grid.q(j) << ',' << g.grid.q(k) << ',' << g.values(j, k).real() << ',' << g.values(j, k).imag()
          << '\n';
    }
}

void write_ray_csv(const std::string& path, const Tomogram& w, const std::vector<std::pair<double, double>>& frames,
                   const std::vector<double>& xs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "mu,nu,X,w\n";
  for (const auto& [mu, nu] : frames)
    for (double x : xs) out << mu << ',' << nu << ',' << x << ',' << w.evaluate(x, mu, nu) << '\n';
}

}  // namespace starprod::io
