#include "starprod/cli.hpp"

#include "starprod/errors.hpp"
#include "starprod/io.hpp"
#include "starprod/lie_structures.hpp"
#include "starprod/phase_space.hpp"
#include "starprod/scheme_core.hpp"
#include "starprod/tomography.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace starprod::cli {

namespace {

using io::Json;

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out_path;
  std::string csv_dir;
  std::vector<std::string> tol_overrides;
  std::uint64_t seed = 20240601;
};

std::map<std::string, double> merged_tolerances(const std::vector<std::string>& overrides) {
  std::map<std::string, double> t = default_tolerances();
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got \"" + item + "\"");
    const std::string name = item.substr(0, eq);
    if (!t.count(name)) throw UsageError("unknown tolerance \"" + name + "\"");
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || !(v >= 0.0)) throw std::invalid_argument("bad");
      t[name] = v;
    } catch (const std::exception&) {
      throw UsageError("--tol value for \"" + name + "\" must be a nonnegative number");
    }
  }
  return t;
}

class Report {
 public:
  Report(std::string command, const Common& common)
      : command_(std::move(command)), tolerances_(merged_tolerances(common.tol_overrides)) {}

  Json& inputs() { return inputs_; }
  Json& values() { return values_; }

  void residual(const std::string& name, double value) { residual(name, value, name); }

  void residual(const std::string& name, double value, const std::string& tolerance_name) {
    const double tol = tolerances_.at(tolerance_name);
    const bool ok = std::isfinite(value) && value <= tol;
    pass_ = pass_ && ok;
    residuals_[name] = Json{{"value", value}, {"tol", tol}, {"pass", ok}};
  }

  void fail(const std::string& reason) {
    pass_ = false;
    values_["failure"] = reason;
  }

  bool pass() const { return pass_; }

  Json finish(long long elapsed_ms) const {
    return Json{{"schema", kReportSchema},
                {"tolerance_table_version", kToleranceTableVersion},
                {"command", command_},
                {"inputs", inputs_.is_null() ? Json::object() : inputs_},
                {"residuals", residuals_.is_null() ? Json::object() : residuals_},
                {"values", values_.is_null() ? Json::object() : values_},
                {"status", pass_ ? "pass" : "fail"},
                {"elapsed_ms", elapsed_ms}};
  }

 private:
  std::string command_;
  std::map<std::string, double> tolerances_;
  Json inputs_;
  Json residuals_;
  Json values_;
  bool pass_ = true;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": \"" + item + "\" is not a number");
    }
  }
  return out;
}

Scheme resolve_scheme(const std::string& name) {
  const auto names = builtin_scheme_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return builtin_scheme(name);
  if (std::filesystem::exists(name)) return io::scheme_from_json(io::load_json_file(name));
  throw UnknownScheme(name);
}

// Complex matrix with entries in [-1,1] + i[-1,1].
ComplexMatrix random_matrix(Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) m(r, c) = Complex(u(rng), u(rng));
  return m;
}

// For a pairing that only sees imaginary parts, a deformation keeps the
// Jacobi identity when Im Tr K = 0.
ComplexMatrix admissible(const Scheme& s, ComplexMatrix k) {
  if (s.pairing().complex_linear()) return k;
  const double shift = k.trace().imag() / static_cast<double>(k.rows());
  k.diagonal().array() -= Complex(0.0, shift);
  return k;
}

SymbolVector random_symbol(const Scheme& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymbolVector f(s.size());
  for (Index x = 0; x < s.size(); ++x) f(x) = s.pairing().complex_linear() ? Complex(u(rng), u(rng)) : Complex(u(rng), 0.0);
  return f;
}

ComplexMatrix random_density(Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

void write_outputs(const Json& report, const Common& common, std::ostream& out) {
  const std::string text = report.dump(2);
  out << text << '\n';
  if (!common.out_path.empty()) {
    std::ofstream f(common.out_path);
    if (!f) throw Error("cannot write " + common.out_path);
    f << text << '\n';
  }
}

std::string csv_path(const Common& common, const std::string& file) {
  std::filesystem::create_directories(common.csv_dir);
  return (std::filesystem::path(common.csv_dir) / file).string();
}

// ---- verify-scheme ----------------------------------------------------------

struct VerifyArgs {
  std::string scheme;
  std::string k_path;
  int draws = 10;
};

void cmd_verify_scheme(const VerifyArgs& args, const Common& common, Report& r) {
  const Scheme s = resolve_scheme(args.scheme);
  r.inputs() = Json{{"scheme", args.scheme}, {"seed", common.seed}, {"draws", args.draws}};
  if (!args.k_path.empty()) r.inputs()["k"] = args.k_path;
  r.values()["scheme"] = Json{{"label", s.label()}, {"n", s.size()}, {"dim", s.dim()},
                              {"pairing", s.pairing().kind_name()}};

  r.residual("pairing_residual", pairing_residual(s));

  std::mt19937_64 rng(common.seed);
  std::vector<ComplexMatrix> ks;
  if (!args.k_path.empty()) {
    ks.push_back(io::matrix_from_json(io::load_json_file(args.k_path)));
    if (ks.back().rows() != s.dim()) throw UsageError("K dimension does not match the scheme");
  } else {
    for (int i = 0; i < args.draws; ++i) ks.push_back(admissible(s, random_matrix(s.dim(), rng)));
  }
  std::vector<std::pair<std::string, KernelVariant>> variants{{"plain", KernelVariant::plain()},
                                                              {"dual", KernelVariant::dual()}};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    variants.emplace_back("k_deformed[" + std::to_string(i) + "]", KernelVariant::k_deformed(ks[i]));
    variants.emplace_back("k_deformed_dual[" + std::to_string(i) + "]", KernelVariant::k_deformed_dual(ks[i]));
  }

  // Associativity is a theorem only when the span is closed under the product;
  // otherwise the residual is reported but not gated.
  const double closure_tol = default_tolerances().at("product_closure");
  double gated = 0.0;
  bool any_gated = false;
  double jac = 0.0;
  Json per_variant = Json::object();
  for (const auto& [name, v] : variants) {
    const double assoc = associativity_residual(star_kernel(s, v));
    const double closure = product_closure_residual(s, v);
    const bool gate = closure <= closure_tol;
    if (gate) {
      gated = std::max(gated, assoc);
      any_gated = true;
    }
    const double j = jacobi_residual(antisym_kernel(s, v));
    jac = std::max(jac, j);
    per_variant[name] = Json{{"associativity_residual", assoc}, {"product_closure_residual", closure},
                             {"associativity_gated", gate}, {"jacobi_residual", j}};
  }
  if (any_gated) r.residual("associativity_residual", gated);
  r.values()["variants"] = per_variant;
  r.residual("jacobi_residual", jac);

  const DoubleCheck dc = double_check(s);
  r.residual("double_check_plain", dc.residual_plain, "double_check");
  r.residual("double_check_dual", dc.residual_dual, "double_check");

  double roundtrip = 0.0;
  double mean_gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SymbolVector f = random_symbol(s, rng);
    const ComplexMatrix a = reconstruct(s, f);
    const SymbolVector back = symbol_of(s, a);
    roundtrip = std::max({roundtrip, (back - f).cwiseAbs().maxCoeff(),
                          (reconstruct(s, back) - a).cwiseAbs().maxCoeff()});
    const ComplexMatrix rho = random_density(s.dim(), rng);
    const ComplexMatrix obs = reconstruct_dual(s, random_symbol(s, rng));
    mean_gap = std::max(mean_gap, std::abs(mean_value(s, rho, obs) - (rho * obs).trace()));
  }
  r.residual("roundtrip_residual", roundtrip);
  r.residual("mean_value_residual", mean_gap);
  r.values()["kernel_scaling_exponent"] = kernel_scaling_exponent(s, 2.0);
}

// ---- lie ----------------------------------------------------------------------

struct LieArgs {
  std::string k;
  double h = 1.0;
  bool unchecked = false;
  bool classify = false;
  std::string params;
  std::string constants_path;
};

Eigen::Matrix3d parse_k(const std::string& arg, bool triangular) {
  auto tail = [&arg](std::size_t n) { return arg.substr(n); };
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  if (arg == "identity") return Eigen::Matrix3d::Identity();
  if (arg.rfind("diag:", 0) == 0) {
    const auto v = parse_numbers(tail(5), "--k diag");
    if (v.size() != 3) throw UsageError("--k diag: expects 3 values");
    k.diagonal() << v[0], v[1], v[2];
    return k;
  }
  if (arg.rfind("sym:", 0) == 0) {
    const auto v = parse_numbers(tail(4), "--k sym");
    if (v.size() != 6) throw UsageError("--k sym: expects lambda1,lambda2,lambda3,mu1,mu2,mu3");
    k << v[0], v[3], v[5], v[3], v[1], v[4], v[5], v[4], v[2];
    return k;
  }
  if (arg.rfind("tri:", 0) == 0) {
    const auto v = parse_numbers(tail(4), "--k tri");
    if (v.size() != 7) throw UsageError("--k tri: expects alpha,beta,gamma,epsilon,phi,zeta,iota");
    k << v[0], v[1], v[2], 0.0, v[3], v[4], 0.0, v[5], v[6];
    return k;
  }
  if (arg.rfind("full:", 0) == 0) {
    const auto v = parse_numbers(tail(5), "--k full");
    if (v.size() != 9) throw UsageError("--k full: expects 9 values in row order");
    for (int i = 0; i < 9; ++i) k(i / 3, i % 3) = v[static_cast<std::size_t>(i)];
    return k;
  }
  if (std::filesystem::exists(arg)) return io::real3_from_json(io::load_json_file(arg));
  throw UsageError(std::string("--k: expected ") + (triangular ? "tri:" : "diag:/sym:") +
                   "..., full:..., identity or a JSON file, got \"" + arg + "\"");
}

void attach_classification(const StructureConstants& c, Report& r) {
  try {
    r.values()["classification"] = io::classification_to_json(classify_3d(c));
  } catch (const Unclassifiable& e) {
    r.fail(std::string("unclassifiable: ") + e.what());
  }
}

void cmd_deform_so3(const LieArgs& args, const Common&, Report& r) {
  r.inputs() = Json{{"k", args.k}, {"classify", args.classify}};
  const Eigen::Matrix3d k = parse_k(args.k, false);
  StructureConstants c(3);
  try {
    c = so3_k_deform(k);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  r.values()["constants"] = io::constants_to_json(c);
  r.residual("jacobi_residual", jacobi_residual(c));
  if (args.classify) attach_classification(c, r);
}

void cmd_deform_b4(const LieArgs& args, const Common&, Report& r) {
  r.inputs() = Json{{"k", args.k}, {"h", args.h}, {"unchecked", args.unchecked}, {"classify", args.classify}};
  const Eigen::Matrix3d k = parse_k(args.k, true);
  const StructureConstants c = typeb_k_deform(k, args.h, !args.unchecked);
  r.values()["constants"] = io::constants_to_json(c);
  r.residual("span_residual", typeb_span_residual(k, args.h));
  r.residual("jacobi_residual", jacobi_residual(c));
  if (args.classify) attach_classification(c, r);
}

StructureConstants constants_input(const LieArgs& args, Report& r, std::optional<CasimirParams>& params) {
  if (args.params.empty() == args.constants_path.empty()) {
    throw UsageError("give exactly one of --params h,a,b,c or --constants <path>");
  }
  if (!args.params.empty()) {
    const auto v = parse_numbers(args.params, "--params");
    if (v.size() != 4) throw UsageError("--params expects h,a,b,c");
    params = CasimirParams{v[0], v[1], v[2], v[3]};
    r.inputs() = Json{{"params", Json{{"h", v[0]}, {"a", v[1]}, {"b", v[2]}, {"c", v[3]}}}};
    return brackets_from_params(*params);
  }
  r.inputs() = Json{{"constants", args.constants_path}};
  return io::constants_from_json(io::load_json_file(args.constants_path));
}

void cmd_classify(const LieArgs& args, const Common&, Report& r) {
  std::optional<CasimirParams> p;
  const StructureConstants c = constants_input(args, r, p);
  r.residual("jacobi_residual", jacobi_residual(c));
  attach_classification(c, r);
}

void cmd_jacobi(const LieArgs& args, const Common&, Report& r) {
  std::optional<CasimirParams> p;
  const StructureConstants c = constants_input(args, r, p);
  r.residual("jacobi_residual", jacobi_residual(c));
  if (p) r.values()["casimir_obstruction"] = casimir_jacobi_obstruction(*p);
}

// ---- tomo ---------------------------------------------------------------------

struct TomoArgs {
  int n = 64;
  double L = 8.0;
  double hbar = 1.0;
  std::string hbars = "0.1,0.01,0.001";
};

Grid make_grid(const TomoArgs& args) {
  try {
    return Grid(args.n, args.L);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

GridFunction gaussian(const Grid& g, double width, double q0, double p0) {
  return sample(g, [=](double q, double p) {
    return Complex(std::exp(-width * ((q - q0) * (q - q0) + (p - p0) * (p - p0))), 0.0);
  });
}

Tomogram checked_radon(const GridFunction& a) {
  try {
    return radon(a);
  } catch (const NonDecaying& e) {
    throw UsageError(std::string("grid too small for the test functions: ") + e.what());
  }
}

void cmd_tomo_demo(const TomoArgs& args, const Common& common, Report& r) {
  const Grid g = make_grid(args);
  r.inputs() = Json{{"n", args.n}, {"L", args.L}, {"hbar", args.hbar}};
  const GridFunction a = gaussian(g, 1.0, 0.0, 0.0);
  const Tomogram wa = checked_radon(a);

  r.residual("radon_roundtrip", max_abs_difference(inverse_radon(wa).values, a.values));
  double oracle = 0.0;
  const std::vector<std::pair<double, double>> frames{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.6, -1.3}};
  for (const auto& [mu, nu] : frames) {
    const double s = std::hypot(mu, nu);
    for (double x : {-1.5, -0.4, 0.0, 0.7, 2.0}) {
      const double exact = std::exp(-x * x / (s * s)) / (2.0 * std::sqrt(kPi) * s);
      oracle = std::max(oracle, std::abs(wa.evaluate(x, mu, nu) - exact));
    }
  }
  r.residual("radon_oracle", oracle);

  const GridFunction b = gaussian(g, 0.5, 0.0, 0.0);
  const Tomogram wb = checked_radon(b);
  const Tomogram cl = classical_star(wa, wb);
  const GridFunction ab{g, a.values.cwiseProduct(b.values)};
  r.residual("classical_star", max_abs_difference(cl.ray_data().values, checked_radon(ab).ray_data().values));

  const Tomogram qs = quantum_star(wa, wb, args.hbar);
  const double h2ab = args.hbar * args.hbar * 1.0 * 0.5;
  const GridFunction moyal_exact = sample(g, [=](double q, double p) {
    return Complex(std::exp(-1.5 * (q * q + p * p) / (1.0 + h2ab)) / (1.0 + h2ab), 0.0);
  });
  r.residual("quantum_star", max_abs_difference(inverse_radon(qs).values, moyal_exact.values));

  const GridFunction c = gaussian(g, 1.0, 0.4, -0.3);
  const GridFunction d = gaussian(g, 0.7, -0.2, 0.5);
  const Tomogram wc = checked_radon(c);
  const Tomogram wd = checked_radon(d);
  r.residual("poisson_star", max_abs_difference(poisson_star(wc, wd).ray_data().values,
                                                checked_radon(poisson_bracket_grid(c, d)).ray_data().values));
  const Tomogram unit = twisted_star(wc, wd, [](const TomographicPoint&, const TomographicPoint&) {
    return Complex(1.0, 0.0);
  });
  r.residual("kernel_factorization", max_abs_difference(unit.ray_data().values,
                                                        classical_star(wc, wd).ray_data().values));

  if (!common.csv_dir.empty()) {
    io::write_grid_csv(csv_path(common, "gaussian_grid.csv"), a);
    std::vector<double> xs;
    for (int i = -16; i <= 16; ++i) xs.push_back(0.25 * i);
    io::write_ray_csv(csv_path(common, "gaussian_rays.csv"), wa, frames, xs);
    r.values()["csv"] = Json::array({"gaussian_grid.csv", "gaussian_rays.csv"});
  }
}

void cmd_tomo_limit(const TomoArgs& args, const Common& common, Report& r) {
  const Grid g = make_grid(args);
  const std::vector<double> hbars = parse_numbers(args.hbars, "--hbars");
  if (hbars.empty()) throw UsageError("--hbars needs at least one value");
  for (double h : hbars)
    if (!(h > 0.0)) throw UsageError("--hbars values must be positive");
  r.inputs() = Json{{"n", args.n}, {"L", args.L}, {"hbars", hbars}};
  const GridFunction a = gaussian(g, 1.0, 0.4, -0.3);
  const GridFunction b = gaussian(g, 0.7, -0.2, 0.5);
  const Tomogram wa = checked_radon(a);
  const Tomogram wb = checked_radon(b);
  const Tomogram p = poisson_star(wa, wb);
  r.residual("poisson_star",
             max_abs_difference(p.ray_data().values, checked_radon(poisson_bracket_grid(a, b)).ray_data().values));

  Json rows = Json::array();
  std::vector<double> res;
  for (double h : hbars) {
    const ComplexMatrix quotient =
        (quantum_star(wa, wb, h).ray_data().values - quantum_star(wb, wa, h).ray_data().values) / Complex(0.0, h);
    res.push_back(max_abs_difference(quotient, p.ray_data().values));
    rows.push_back(Json{{"hbar", h}, {"residual", res.back()}});
  }
  double violation = 0.0;
  Json slopes = Json::array();
  for (std::size_t i = 1; i < res.size(); ++i) {
    violation = std::max(violation, res[i] - res[i - 1]);
    slopes.push_back(std::log(res[i - 1] / res[i]) / std::log(hbars[i - 1] / hbars[i]));
  }
  r.values()["rows"] = rows;
  r.values()["log_slopes"] = slopes;
  r.residual("monotone_violation", std::max(0.0, violation));
  if (!common.csv_dir.empty()) {
    std::ofstream f(csv_path(common, "classical_limit.csv"));
    f << std::setprecision(17) << "hbar,residual\n";
    for (std::size_t i = 0; i < res.size(); ++i) f << hbars[i] << ',' << res[i] << '\n';
    r.values()["csv"] = Json::array({"classical_limit.csv"});
  }
}

void cmd_tomo_mean(const TomoArgs& args, const Common&, Report& r) {
  const Grid g = make_grid(args);
  if (!(args.hbar > 0.0)) throw UsageError("--hbar must be positive");
  r.inputs() = Json{{"n", args.n}, {"L", args.L}, {"hbar", args.hbar}};
  const WaveFunction ground = gaussian_wave_packet(0.0, 0.0, std::sqrt(args.hbar), args.hbar);
  const Tomogram w = checked_radon(weyl_symbol(ground, g, args.hbar));
  const GridFunction obs = gaussian(g, 1.0, 0.0, 0.0);
  const double value = mean_value_tomographic(w, obs, args.hbar);
  // <exp(-q^2-p^2)> in the ground state.
  const double exact = 1.0 / (1.0 + args.hbar);
  r.values()["mean_value"] = value;
  r.values()["expected"] = exact;
  r.residual("mean_value_gap", std::abs(value - exact));
  double norm_gap = 0.0;
  for (const auto& [mu, nu] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}) {
    const double s2 = args.hbar * (mu * mu + nu * nu);
    for (double x : {0.0, 0.8}) {
      const double exact_w = std::exp(-x * x / s2) / std::sqrt(kPi * s2);
      norm_gap = std::max(norm_gap, std::abs(pure_state_tomogram(ground, {x, mu, nu}, args.hbar) - exact_w));
    }
  }
  r.residual("pure_state_tomogram", norm_gap);
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"pairing_residual", 1e-12},
      {"associativity_residual", 1e-10},
      {"product_closure", 1e-10},
      {"jacobi_residual", 1e-10},
      {"double_check", 1e-12},
      {"roundtrip_residual", 1e-12},
      {"mean_value_residual", 1e-12},
      {"span_residual", 1e-10},
      {"radon_roundtrip", 1e-5},
      {"radon_oracle", 1e-5},
      {"classical_star", 1e-4},
      {"quantum_star", 1e-3},
      {"poisson_star", 1e-4},
      {"kernel_factorization", 0.0},
      {"monotone_violation", 0.0},
      {"mean_value_gap", 1e-3},
      {"pure_state_tomogram", 1e-6},
  };
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantizer-dequantizer star products: kernels, Lie structures and tomograms", "starprod"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--out", common.out_path, "Write the JSON report to this file");
    sub->add_option("--csv", common.csv_dir, "Directory for CSV side outputs");
    sub->add_option("--tol", common.tol_overrides, "Override a tolerance, name=value")->take_all();
    sub->add_option("--seed", common.seed, "Seed for randomized checks");
  };

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-scheme", "Check a builtin or JSON scheme");
  verify_cmd->add_option("scheme", verify.scheme, "Builtin name (u2, su2sb2, gl2half) or scheme JSON path")
      ->required();
  verify_cmd->add_option("--k", verify.k_path, "Deformation matrix JSON used instead of random draws");
  verify_cmd->add_option("--draws", verify.draws, "Number of random deformations")->check(CLI::Range(0, 1000));
  add_common(verify_cmd);

  LieArgs lie;
  auto* lie_cmd = app.add_subcommand("lie", "Lie structure constants");
  lie_cmd->require_subcommand(1);
  auto* so3_cmd = lie_cmd->add_subcommand("deform-so3", "K-deformed so(3)");
  so3_cmd->add_option("--k", lie.k, "diag:l1,l2,l3 | sym:l1,l2,l3,m1,m2,m3 | full:... | identity | path")
      ->required();
  so3_cmd->add_flag("--classify", lie.classify, "Attach the 3D classification");
  auto* b4_cmd = lie_cmd->add_subcommand("deform-b4", "K-deformed type-B base algebra");
  b4_cmd->add_option("--k", lie.k, "tri:alpha,beta,gamma,epsilon,phi,zeta,iota | full:... | identity | path")
      ->required();
  b4_cmd->add_option("--h", lie.h, "Generator parameter h");
  b4_cmd->add_flag("--unchecked", lie.unchecked, "Allow a nonzero lower-left block");
  b4_cmd->add_flag("--classify", lie.classify, "Attach the 3D classification");
  auto* classify_cmd = lie_cmd->add_subcommand("classify", "Classify 3D structure constants");
  auto* jacobi_cmd = lie_cmd->add_subcommand("jacobi", "Jacobi residual of structure constants");
  for (auto* sub : {classify_cmd, jacobi_cmd}) {
    sub->add_option("--params", lie.params, "h,a,b,c");
    sub->add_option("--constants", lie.constants_path, "Structure constants JSON");
  }
  for (auto* sub : {so3_cmd, b4_cmd, classify_cmd, jacobi_cmd}) add_common(sub);

  TomoArgs tomo;
  auto* tomo_cmd = app.add_subcommand("tomo", "Tomograms and phase-space products");
  tomo_cmd->require_subcommand(1);
  auto* demo_cmd = tomo_cmd->add_subcommand("demo", "Radon round trip and star-product comparisons");
  auto* limit_cmd = tomo_cmd->add_subcommand("limit", "Classical-limit convergence table");
  auto* mean_cmd = tomo_cmd->add_subcommand("mean", "Tomographic mean value");
  for (auto* sub : {demo_cmd, limit_cmd, mean_cmd}) {
    sub->add_option("--n", tomo.n, "Samples per axis (power of two, >= 8)");
    sub->add_option("--L", tomo.L, "Grid half width");
    add_common(sub);
  }
  demo_cmd->add_option("--hbar", tomo.hbar, "Planck constant");
  mean_cmd->add_option("--hbar", tomo.hbar, "Planck constant");
  limit_cmd->add_option("--hbars", tomo.hbars, "Comma separated hbar sequence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::string command;
  std::function<void(Report&)> body;
  if (verify_cmd->parsed()) {
    command = "verify-scheme";
    body = [&](Report& r) { cmd_verify_scheme(verify, common, r); };
  } else if (lie_cmd->parsed()) {
    if (so3_cmd->parsed()) {
      command = "lie deform-so3";
      body = [&](Report& r) { cmd_deform_so3(lie, common, r); };
    } else if (b4_cmd->parsed()) {
      command = "lie deform-b4";
      body = [&](Report& r) { cmd_deform_b4(lie, common, r); };
    } else if (classify_cmd->parsed()) {
      command = "lie classify";
      body = [&](Report& r) { cmd_classify(lie, common, r); };
    } else {
      command = "lie jacobi";
      body = [&](Report& r) { cmd_jacobi(lie, common, r); };
    }
  } else {
    if (demo_cmd->parsed()) {
      command = "tomo demo";
      body = [&](Report& r) { cmd_tomo_demo(tomo, common, r); };
    } else if (limit_cmd->parsed()) {
      command = "tomo limit";
      body = [&](Report& r) { cmd_tomo_limit(tomo, common, r); };
    } else {
      command = "tomo mean";
      body = [&](Report& r) { cmd_tomo_mean(tomo, common, r); };
    }
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report report(command, common);
    body(report);
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    write_outputs(report.finish(elapsed), common, out);
    return report.pass() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UnknownScheme& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ShapeViolation& e) {
    err << "error: shape violation at entry (" << e.row() << "," << e.col() << "): " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace starprod::cli
