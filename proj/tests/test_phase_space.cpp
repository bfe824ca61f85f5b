#include "oracles.hpp"
#include "starprod/errors.hpp"
#include "starprod/phase_space.hpp"

#include <doctest.h>

#include <cmath>

using namespace starprod;
using oracle::C;

namespace {

C gauss(double q, double p) { return std::exp(-(q * q + p * p) / 2.0); }

// exp(-alpha r^2) * exp(-beta r^2) in the Moyal product.
double moyal_gauss_pair(double alpha, double beta, double q, double p, double hbar) {
  const double d = 1.0 + alpha * beta * hbar * hbar;
  return std::exp(-(alpha + beta) / d * (q * q + p * p)) / d;
}

GridFunction moyal_grid(const GridFunction& a, const GridFunction& b, double hbar) {
  return idft2(moyal_fourier_apply(dft2(a), dft2(b), hbar));
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(64, 8.0);
  CHECK(g.spacing() == 0.25);
  CHECK(g.frequency_spacing() == doctest::Approx(M_PI / 8.0));
  CHECK(g.q(0) == -8.0);
  CHECK(g.q(32) == 0.0);
  CHECK(g.mu(32) == 0.0);
  CHECK_THROWS_AS(Grid(48, 8.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(4, 8.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(64, 0.0), InvalidArgument);
  CHECK(Grid(64, 8.0) != Grid(64, 6.0));
}

TEST_CASE("Fourier image of a Gaussian") {
  const Grid g(64, 8.0);
  const FourierFunction f = dft2(sample(g, gauss));
  double err = 0.0;
  for (int m = 0; m < g.n(); ++m)
    for (int l = 0; l < g.n(); ++l) err = std::max(err, std::abs(f.values(m, l) - gauss(g.mu(m), g.mu(l))));
  CHECK(err <= 1e-6);
}

TEST_CASE("transform matches the direct sum and inverts") {
  std::mt19937_64 rng(3);
  const Grid g(16, 3.0);
  GridFunction a{g, oracle::random_complex(16, rng)};
  const FourierFunction f = dft2(a);
  CHECK(max_abs_difference(f.values, oracle::naive_dft2(a.values, 3.0)) <= 1e-12);
  CHECK(max_abs_difference(idft2(f).values, a.values) <= 1e-8);
  const Grid big(128, 10.0);
  const GridFunction s = sample(big, [](double q, double p) { return C(q, p) * std::exp(-q * q - 0.5 * p * p); });
  CHECK(max_abs_difference(idft2(dft2(s)).values, s.values) <= 1e-8);
}

TEST_CASE("constant function maps to the impulse") {
  const Grid g(32, 6.0);
  const FourierFunction f = dft2(sample(g, [](double, double) { return C(1.0); }));
  const FourierFunction imp = discrete_impulse(g);
  CHECK(max_abs_difference(f.values, imp.values) <= 1e-12);
  const double dmu = M_PI / 6.0;
  CHECK(std::abs(imp.values(16, 16) - 2.0 * M_PI / (dmu * dmu)) <= 1e-12);
  CHECK(imp.values.cwiseAbs().sum() == doctest::Approx(2.0 * M_PI / (dmu * dmu)));
}

TEST_CASE("pointwise product through the convolution") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, gauss);
  const GridFunction b = sample(g, [](double q, double p) { return C(q, -p) * std::exp(-(q - 0.5) * (q - 0.5) - p * p); });
  GridFunction ab{g, a.values.cwiseProduct(b.values)};
  const FourierFunction conv = pointwise_fourier_apply(dft2(a), dft2(b));
  CHECK(max_abs_difference(conv.values, dft2(ab).values) <= 1e-10);
}

TEST_CASE("impulse is the unit") {
  const Grid g(32, 6.0);
  const FourierFunction imp = discrete_impulse(g);
  CHECK(max_abs_difference(moyal_fourier_apply(imp, imp, 0.7).values, imp.values) <= 1e-9);
  const FourierFunction fa = dft2(sample(g, gauss));
  CHECK(max_abs_difference(moyal_fourier_apply(imp, fa, 0.7).values, fa.values) <= 1e-12);
  CHECK(max_abs_difference(moyal_fourier_apply(fa, imp, 0.7).values, fa.values) <= 1e-12);
}

TEST_CASE("zero hbar gives the pointwise product") {
  const Grid g(32, 6.0);
  const FourierFunction fa = dft2(sample(g, gauss));
  const FourierFunction fb = dft2(sample(g, [](double q, double p) { return C(q) * gauss(q, p - 0.3); }));
  CHECK(max_abs_difference(moyal_fourier_apply(fa, fb, 0.0).values, pointwise_fourier_apply(fa, fb).values) == 0.0);
}

TEST_CASE("Moyal product of Gaussians") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, gauss);
  for (double hbar : {0.5, 1.0, 2.0}) {
    const GridFunction ab = moyal_grid(a, a, hbar);
    double err = 0.0;
    for (int j = 0; j < g.n(); ++j)
      for (int k = 0; k < g.n(); ++k)
        err = std::max(err, std::abs(ab.values(j, k) - moyal_gauss_pair(0.5, 0.5, g.q(j), g.q(k), hbar)));
    CHECK(err <= 1e-8);
  }
}

TEST_CASE("Groenewold kernel") {
  CHECK(std::abs(groenewold_kernel(0, 0, 0, 0, 0, 0, 1.0) - 1.0 / (M_PI * M_PI)) <= 1e-15);
  CHECK(std::abs(groenewold_kernel(1, 0, 0, 1, 0, 0, 1.0) - std::exp(C(0, 2)) / (M_PI * M_PI)) <= 1e-15);
  const double pts[6] = {0.3, -0.7, 1.1, 0.2, -0.4, 0.9};
  const C k = groenewold_kernel(pts[0], pts[1], pts[2], pts[3], pts[4], pts[5], 0.8);
  const C swapped = groenewold_kernel(pts[2], pts[3], pts[0], pts[1], pts[4], pts[5], 0.8);
  CHECK(std::abs(k - std::conj(swapped)) <= 1e-15);
  CHECK(std::abs(groenewold_kernel(1, 0, 0, 1, 0, 0, 2.0) - std::exp(C(0, 1)) / (4.0 * M_PI * M_PI)) <= 1e-15);
}

TEST_CASE("Groenewold quadrature agrees with the Fourier picture") {
  const Grid g(64, 8.0);
  const double hbar = 1.0;
  const GridFunction a = sample(g, gauss);
  const GridFunction b = sample(g, [](double q, double p) { return std::exp(-(q * q + p * p)); });
  const double probes[5][2] = {{0, 0}, {0.5, -0.25}, {-1, 1}, {1, 0.75}, {-0.25, -1}};
  for (const auto& pt : probes) {
    const C direct = groenewold_sample(a, b, pt[0], pt[1], hbar);
    CHECK(std::abs(direct - moyal_gauss_pair(0.5, 1.0, pt[0], pt[1], hbar)) <= 1e-4);
  }
  CHECK_THROWS_AS(groenewold_sample(a, b, 9.0, 0.0, hbar), InvalidArgument);
}

TEST_CASE("Moyal product is associative") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, gauss);
  const GridFunction b = sample(g, [](double q, double p) { return C(1.0, q) * std::exp(-(q - 0.5) * (q - 0.5) - p * p); });
  const GridFunction c = sample(g, [](double q, double p) { return C(p) * std::exp(-q * q - (p + 0.4) * (p + 0.4)); });
  for (double hbar : {0.3, 1.0}) {
    const GridFunction left = moyal_grid(moyal_grid(a, b, hbar), c, hbar);
    const GridFunction right = moyal_grid(a, moyal_grid(b, c, hbar), hbar);
    CHECK(max_abs_difference(left.values, right.values) <= 1e-8);
  }
}

TEST_CASE("spectral derivative") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, gauss);
  const GridFunction dq = spectral_derivative(a, 0);
  const GridFunction dpp = spectral_derivative(a, 1, 2);
  double e1 = 0.0, e2 = 0.0;
  for (int j = 0; j < g.n(); ++j)
    for (int k = 0; k < g.n(); ++k) {
      const double q = g.q(j), p = g.q(k);
      e1 = std::max(e1, std::abs(dq.values(j, k) + q * gauss(q, p)));
      e2 = std::max(e2, std::abs(dpp.values(j, k) - (p * p - 1.0) * gauss(q, p)));
    }
  CHECK(e1 <= 1e-8);
  CHECK(e2 <= 1e-8);
}

TEST_CASE("Poisson bracket on the grid") {
  const Grid g(64, 8.0);
  const double q0 = 0.5, p0 = -0.3;
  const GridFunction a = sample(g, [&](double q, double p) { return gauss(q - q0, p); });
  const GridFunction b = sample(g, [&](double q, double p) { return gauss(q, p - p0); });
  const GridFunction pb = poisson_bracket_grid(a, b);
  const GridFunction pf = idft2(poisson_fourier_apply(dft2(a), dft2(b)));
  double err = 0.0, err_f = 0.0;
  for (int j = 0; j < g.n(); ++j)
    for (int k = 0; k < g.n(); ++k) {
      const double q = g.q(j), p = g.q(k);
      const C exact = gauss(q - q0, p) * gauss(q, p - p0) * ((q - q0) * (p - p0) - p * q);
      err = std::max(err, std::abs(pb.values(j, k) - exact));
      err_f = std::max(err_f, std::abs(pf.values(j, k) - exact));
    }
  CHECK(err <= 1e-8);
  CHECK(err_f <= 1e-8);
}

TEST_CASE("asymptotic expansion") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, [](double q, double p) { return gauss(q - 0.5, p); });
  const GridFunction b = sample(g, [](double q, double p) { return C(q) * gauss(q, p - 0.3); });
  const double hbar = 0.4;
  const GridFunction o0 = moyal_asymptotic(a, b, 0, hbar);
  CHECK(max_abs_difference(o0.values, a.values.cwiseProduct(b.values)) <= 1e-15);

  const GridFunction ab1 = moyal_asymptotic(a, b, 1, hbar);
  const GridFunction ba1 = moyal_asymptotic(b, a, 1, hbar);
  const GridFunction pb = poisson_bracket_grid(a, b);
  CHECK(max_abs_difference(ab1.values - ba1.values, C(0, hbar) * pb.values) <= 1e-12);

  std::vector<double> errs;
  for (double h : {0.4, 0.2, 0.1}) {
    errs.push_back(max_abs_difference(moyal_asymptotic(a, b, 2, h).values, moyal_grid(a, b, h).values));
  }
  const double slope1 = std::log2(errs[0] / errs[1]);
  const double slope2 = std::log2(errs[1] / errs[2]);
  CHECK(slope1 >= 2.7);
  CHECK(slope2 >= 2.7);
  CHECK_THROWS_AS(moyal_asymptotic(a, b, 3, hbar), InvalidArgument);
}

TEST_CASE("commutator quotient tends to the Poisson bracket") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, [](double q, double p) { return gauss(q - 0.5, p); });
  const GridFunction b = sample(g, [](double q, double p) { return gauss(q, p + 0.3); });
  const double hbar = 1e-3;
  const ComplexMatrix quotient = (moyal_grid(a, b, hbar).values - moyal_grid(b, a, hbar).values) / C(0, hbar);
  CHECK(max_abs_difference(quotient, poisson_bracket_grid(a, b).values) <= 1e-5);
}

TEST_CASE("Moyal product is continuous in hbar") {
  const Grid g(64, 8.0);
  const GridFunction a = sample(g, [](double q, double p) { return gauss(q - 0.5, p); });
  const GridFunction b = sample(g, [](double q, double p) { return C(q) * gauss(q, p - 0.3); });
  const ComplexMatrix pointwise = a.values.cwiseProduct(b.values);
  double previous = INFINITY;
  for (double hbar : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const double d = max_abs_difference(moyal_grid(a, b, hbar).values, pointwise);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous <= 0.05);
}

TEST_CASE("boundary magnitude and mismatched grids") {
  const Grid g(32, 6.0);
  const GridFunction one = sample(g, [](double, double) { return C(1.0); });
  CHECK(boundary_magnitude(one) == 1.0);
  CHECK(boundary_magnitude(sample(g, gauss)) == doctest::Approx(std::exp(-0.5 * 5.625 * 5.625)));
  const FourierFunction fa = dft2(one);
  const FourierFunction fb = dft2(sample(Grid(32, 5.0), gauss));
  CHECK_THROWS_AS(pointwise_fourier_apply(fa, fb), GridMismatch);
}
