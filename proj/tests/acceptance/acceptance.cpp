// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include "oracles.hpp"
#include "starprod/errors.hpp"
#include "starprod/lie_structures.hpp"
#include "starprod/tomography.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace starprod;
using oracle::C;
using oracle::M;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  failures += !ok;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

C gauss(double q, double p) { return std::exp(-(q * q + p * p) / 2.0); }

double normal_density(double x, double mean, double var) {
  return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
}

M random_deformation(const Scheme& s, std::mt19937_64& rng) {
  M k = oracle::random_complex(static_cast<int>(s.dim()), rng);
  // Real-valued pairings need Im Tr K = 0 for the deformed bracket to close.
  if (!s.pairing().complex_linear()) k.diagonal().array() -= C(0, k.trace().imag() / static_cast<double>(s.dim()));
  return k;
}

std::vector<KernelVariant> variants(const Scheme& s, std::mt19937_64& rng, bool with_dual_deformed) {
  std::vector<KernelVariant> v{KernelVariant::plain(), KernelVariant::dual()};
  for (int i = 0; i < 10; ++i) {
    const M k = random_deformation(s, rng);
    v.push_back(KernelVariant::k_deformed(k));
    if (with_dual_deformed) v.push_back(KernelVariant::k_deformed_dual(k));
  }
  return v;
}

// Best scalar s with C ~ s T, and the remaining residual.
std::pair<C, double> fit_scalar(const StructureConstants& c, const std::vector<double>& target) {
  C num = 0;
  double den = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    num += c.values()[i] * target[i];
    den += target[i] * target[i];
  }
  const C s = num / den;
  double r = 0;
  for (std::size_t i = 0; i < target.size(); ++i) r = std::max(r, std::abs(c.values()[i] - s * target[i]));
  return {s, r};
}

void criterion_1() {
  double worst = 0;
  std::string detail;
  for (const auto& name : builtin_scheme_names()) {
    const double r = pairing_residual(builtin_scheme(name));
    worst = std::max(worst, r);
    detail += name + "=" + fmt("%.2e ", r);
  }
  report(1, "scheme validity", worst <= 1e-12, detail);
}

void criterion_2() {
  std::mt19937_64 rng(20240601);
  bool ok = true;
  std::string detail;
  for (const auto& name : builtin_scheme_names()) {
    const Scheme s = builtin_scheme(name);
    double worst = 0;
    for (const auto& v : variants(s, rng, false)) worst = std::max(worst, associativity_residual(star_kernel(s, v)));
    ok = ok && worst <= 1e-10;
    detail += name + "=" + fmt("%.2e ", worst);
  }
  report(2, "associativity", ok, detail);
}

void criterion_3() {
  std::mt19937_64 rng(20240602);
  bool ok = true;
  std::string detail;
  for (const auto& name : builtin_scheme_names()) {
    const Scheme s = builtin_scheme(name);
    double worst = 0;
    for (const auto& v : variants(s, rng, true)) worst = std::max(worst, jacobi_residual(antisym_kernel(s, v)));
    ok = ok && worst <= 1e-10;
    detail += name + "=" + fmt("%.2e ", worst);
  }
  report(3, "Jacobi from kernels", ok, detail);
}

void criterion_4() {
  const StructureConstants c = antisym_kernel(builtin_scheme("u2"), KernelVariant::plain());
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const C expected = (i && j && k) ? C(0, oracle::eps(i - 1, j - 1, k - 1)) : C(0);
        worst = std::max(worst, std::abs(c(i, j, k) - expected));
      }
  report(4, "U(2) constants", worst <= 1e-12,
         "C(1,2,3)=" + fmt("%+.3f", c(1, 2, 3).real()) + fmt("%+.3fi", c(1, 2, 3).imag()) + fmt(" max dev %.2e", worst));
}

void criterion_5() {
  const Scheme s = builtin_scheme("su2sb2");
  std::vector<double> eps3(27), dual3(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        eps3[(i * 3 + j) * 3 + k] = oracle::eps(i, j, k);
        double t = 0;
        for (int l = 0; l < 3; ++l) t += oracle::eps(i, j, l) * oracle::eps(l, k, 2);
        dual3[(i * 3 + j) * 3 + k] = t;
      }
  const StructureConstants plain = antisym_kernel(s, KernelVariant::plain());
  const StructureConstants dual = antisym_kernel(s, KernelVariant::dual());
  const auto [sp, rp] = fit_scalar(plain, eps3);
  const auto [sd, rd] = fit_scalar(dual, dual3);
  const double jp = jacobi_residual(plain);
  const double jd = jacobi_residual(dual);
  const bool ok = rp <= 1e-12 && rd <= 1e-12 && std::abs(sp) > 0.5 && std::abs(sd) > 0.5 && jp <= 1e-12 && jd <= 1e-12;
  report(5, "dual pair", ok,
         fmt("plain scale %+.3f", sp.real()) + fmt(" fit %.2e", rp) + fmt(" jacobi %.2e;", jp) +
             fmt(" dual scale %+.3f", sd.real()) + fmt(" fit %.2e", rd) + fmt(" jacobi %.2e", jd));
}

void criterion_6() {
  const std::vector<std::pair<std::array<double, 3>, std::string>> cases{
      {{1, 1, 1}, "A1"}, {{1, 1, 0}, "A2"}, {{1, -1, 1}, "A3"}, {{0, 0, 1}, "A5"}, {{0, 0, 0}, "A6"}};
  bool ok = true;
  std::string labels;
  for (const auto& [diag, expected] : cases) {
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    k.diagonal() << diag[0], diag[1], diag[2];
    const std::string got = to_string(classify_3d(so3_k_deform(k)).label);
    ok = ok && got == expected;
    labels += got + " ";
  }
  Eigen::Matrix3d kb = Eigen::Matrix3d::Zero();
  kb(0, 0) = 1.0;
  const StructureConstants sb = typeb_k_deform(kb, 1.0);
  const StructureConstants sb_ref = brackets_from_params({1, 0, 0, 0});
  double sb_dev = 0;
  for (std::size_t i = 0; i < sb.values().size(); ++i) sb_dev = std::max(sb_dev, std::abs(sb.values()[i] - sb_ref.values()[i]));
  const std::string sb_label = to_string(classify_3d(sb).label);
  ok = ok && sb_dev <= 1e-12 && sb_label == "B1";

  const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  int obstructed = 0, detected = 0;
  for (double h : grid)
    for (double a : grid)
      for (double b : grid)
        for (double c : grid) {
          if (h * c == 0.0) continue;
          ++obstructed;
          detected += jacobi_residual(brackets_from_params({h, a, b, c})) > 1e-10;
        }
  ok = ok && detected == obstructed;
  report(6, "3D classification", ok,
         "so3 labels " + labels + "typeB " + sb_label + fmt(" (dev %.1e)", sb_dev) + "; hc!=0 failing Jacobi " +
             std::to_string(detected) + "/" + std::to_string(obstructed));
}

void criterion_7() {
  const Grid g(64, 8.0);
  const FourierFunction imp = discrete_impulse(g);
  const double imp_dev = max_abs_difference(moyal_fourier_apply(imp, imp, 1.0).values, imp.values);
  const GridFunction a = sample(g, gauss);
  const GridFunction b = sample(g, [](double q, double p) { return C(std::exp(-(q * q + p * p))); });
  const GridFunction ab = idft2(moyal_fourier_apply(dft2(a), dft2(b), 1.0));
  const double probes[5][2] = {{0, 0}, {0.5, -0.25}, {-1, 1}, {1, 0.75}, {-0.25, -1}};
  double worst = 0;
  for (const auto& pt : probes) {
    const int j = static_cast<int>(std::lround((pt[0] + 8.0) / g.spacing()));
    const int k = static_cast<int>(std::lround((pt[1] + 8.0) / g.spacing()));
    worst = std::max(worst, std::abs(ab.values(j, k) - groenewold_sample(a, b, pt[0], pt[1], 1.0)));
  }
  report(7, "Moyal identity", imp_dev == 0.0 && worst <= 1e-4,
         fmt("impulse dev %.2e", imp_dev) + fmt("; Groenewold max dev %.2e", worst));
}

void criterion_8() {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, gauss);
  const GridFunction b = sample(g, [](double q, double p) { return C(1.0, q) * std::exp(-(q - 0.5) * (q - 0.5) - p * p); });
  const double rt = std::max(max_abs_difference(inverse_radon(radon(a)).values, a.values),
                             max_abs_difference(inverse_radon(radon(b)).values, b.values));

  const double hbar = 1.0;
  const WaveFunction ground = gaussian_wave_packet(0.0, 0.0, 1.0, hbar);
  const double pts[][3] = {{0.0, 1.0, 0.0}, {0.4, 0.0, 1.0}, {-0.7, 0.6, 0.8}, {1.2, 2.0, -0.5}, {0.3, 0.3, 0.1}};
  double oracle_dev = 0;
  for (const auto& pt : pts) {
    const double var = (pt[1] * pt[1] + pt[2] * pt[2]) / 2.0;
    oracle_dev = std::max(oracle_dev, std::abs(pure_state_tomogram(ground, {pt[0], pt[1], pt[2]}, hbar) -
                                               normal_density(pt[0], 0.0, var)));
  }
  using boost::math::quadrature::gauss_kronrod;
  double norm_dev = 0;
  for (const auto& f : {std::pair{1.0, 0.0}, std::pair{0.6, 0.8}, std::pair{0.2, 1.5}}) {
    const double norm = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return pure_state_tomogram(ground, {x, f.first, f.second}, hbar); }, -20.0, 20.0, 10, 1e-12);
    norm_dev = std::max(norm_dev, std::abs(norm - 1.0));
  }
  report(8, "tomographic round trip", rt <= 1e-5 && oracle_dev <= 1e-6 && norm_dev <= 1e-8,
         fmt("round trip %.2e", rt) + fmt("; ground-state dev %.2e", oracle_dev) + fmt("; normalization dev %.2e", norm_dev));
}

void criterion_9() {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, [](double q, double p) { return gauss(q - 0.5, p); });
  const GridFunction b = sample(g, [](double q, double p) { return C(1.0, 0.5 * q) * gauss(q, p + 0.3); });
  const Tomogram wa = radon(a);
  const Tomogram wb = radon(b);
  const ComplexMatrix classical = classical_star(wa, wb).ray_data().values;
  const double fact = std::max(max_abs_difference(quantum_star(wa, wb, 0.0).ray_data().values, classical),
                               max_abs_difference(quantum_star(wa, wb, 1e-12).ray_data().values, classical));

  const ComplexMatrix pstar = poisson_star(wa, wb).ray_data().values;
  std::vector<double> errs;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const ComplexMatrix quotient =
        (quantum_star(wa, wb, h).ray_data().values - quantum_star(wb, wa, h).ray_data().values) / C(0, h);
    errs.push_back(max_abs_difference(quotient, pstar));
  }
  bool converges = true;
  std::string slopes;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double slope = std::log10(errs[i - 1] / errs[i]);
    converges = converges && errs[i] < errs[i - 1] && slope >= 1.0;
    slopes += fmt(" %.2f", slope);
  }
  const double pb = max_abs_difference(pstar, radon(poisson_bracket_grid(a, b)).ray_data().values);
  report(9, "kernel factorization and classical limit", fact <= 1e-10 && converges && pb <= 1e-4,
         fmt("factorization %.2e", fact) + fmt("; quotient errors %.2e", errs[0]) + fmt(" %.2e", errs[1]) +
             fmt(" %.2e", errs[2]) + " slopes" + slopes + fmt("; Poisson vs bracket %.2e", pb));
}

void criterion_10() {
  std::mt19937_64 rng(20240610);
  const Scheme u2 = builtin_scheme("u2");
  double worst = 0;
  for (int t = 0; t < 10; ++t) {
    const M rho = oracle::random_density(2, rng);
    const M a = oracle::random_complex(2, rng);
    worst = std::max(worst, std::abs(mean_value(u2, rho, a) - (rho * a).trace()));
  }
  const Grid g(64, 8.0);
  const double hbar = 0.5;
  const WaveFunction psi = gaussian_wave_packet(0.3, -0.2, 0.8, hbar);
  const GridFunction weyl = weyl_symbol(psi, g, hbar);
  const Tomogram w = radon(weyl);
  const GridFunction obs = sample(g, [](double q, double p) { return C(q * q) * std::exp(-(q * q + p * p) / 4.0); });
  const double overlap = (weyl.values.cwiseProduct(obs.values).sum() * g.spacing() * g.spacing() / (2.0 * M_PI * hbar)).real();
  const double tomo_dev = std::abs(mean_value_tomographic(w, obs, hbar) - overlap);
  report(10, "mean values", worst <= 1e-12 && tomo_dev <= 1e-3,
         fmt("u2 max dev %.2e", worst) + fmt("; tomographic vs overlap %.2e", tomo_dev));
}

}  // namespace

int main() {
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                          criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  for (auto c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion raised: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("acceptance: 10 criteria evaluated, %d failed\n", failures);
  return failures;
}
