#include "starprod/phase_space.hpp"

#include "starprod/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace starprod {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalized 2D DFT in place; sign = FFTW_FORWARD or FFTW_BACKWARD.
void fft2_inplace(ComplexMatrix& data, int sign) {
  const int n = static_cast<int>(data.rows());
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(plan);
}

double checkerboard(Index a, Index b) { return ((a + b) % 2 == 0) ? 1.0 : -1.0; }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) throw GridMismatch(std::string(what) + ": operands live on different grids");
}

void require_shape(const Grid& g, const ComplexMatrix& v, const char* what) {
  if (v.rows() != g.n() || v.cols() != g.n()) {
    throw GridMismatch(std::string(what) + ": values do not match the grid size");
  }
}

template <class Weight>
FourierFunction convolve(const FourierFunction& fa, const FourierFunction& fb, Weight&& weight) {
  require_same_grid(fa.grid, fb.grid, "fourier product");
  require_shape(fa.grid, fa.values, "fourier product");
  require_shape(fb.grid, fb.values, "fourier product");
  const int n = fa.grid.n();
  const int half = n / 2;
  const int mask = n - 1;
  const double dmu = fa.grid.frequency_spacing();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int m1 = 0; m1 < n; ++m1) {
    for (int l1 = 0; l1 < n; ++l1) {
      const Complex a = fa.values(m1, l1);
      if (a == 0.0) continue;
      for (int l = 0; l < n; ++l) {
        const int l2 = (l - l1 + half) & mask;
        for (int m = 0; m < n; ++m) {
          const int m2 = (m - m1 + half) & mask;
          out(m, l) += a * fb.values(m2, l2) * weight(m1, l1, m2, l2);
        }
      }
    }
  }
  out *= dmu * dmu / (2.0 * kPi);
  return {fa.grid, std::move(out)};
}

}  // namespace

Grid::Grid(int n, double half_width) : n_(n), half_width_(half_width) {
  if (n < 8 || (n & (n - 1)) != 0) throw InvalidArgument("grid size must be a power of two >= 8");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("grid half width must be positive");
}

double Grid::frequency_spacing() const { return kPi / half_width_; }

GridFunction sample(const Grid& grid, const std::function<Complex(double, double)>& f) {
  const int n = grid.n();
  ComplexMatrix v(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) v(j, k) = f(grid.q(j), grid.q(k));
  return {grid, std::move(v)};
}

FourierFunction dft2(const GridFunction& a) {
  require_shape(a.grid, a.values, "dft2");
  const int n = a.grid.n();
  ComplexMatrix work(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) work(j, k) = checkerboard(j, k) * a.values(j, k);
  fft2_inplace(work, FFTW_FORWARD);
  const double dq = a.grid.spacing();
  const double scale = dq * dq / (2.0 * kPi);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) work(m, l) *= scale * checkerboard(m, l);
  return {a.grid, std::move(work)};
}

GridFunction idft2(const FourierFunction& f) {
  require_shape(f.grid, f.values, "idft2");
  const int n = f.grid.n();
  ComplexMatrix work(n, n);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) work(m, l) = checkerboard(m, l) * f.values(m, l);
  fft2_inplace(work, FFTW_BACKWARD);
  const double dmu = f.grid.frequency_spacing();
  const double scale = dmu * dmu / (2.0 * kPi);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) work(j, k) *= scale * checkerboard(j, k);
  return {f.grid, std::move(work)};
}

FourierFunction discrete_impulse(const Grid& grid) {
  const int n = grid.n();
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  const double dmu = grid.frequency_spacing();
  v(n / 2, n / 2) = 2.0 * kPi / (dmu * dmu);
  return {grid, std::move(v)};
}

FourierFunction weighted_fourier_apply(const FourierFunction& fa, const FourierFunction& fb,
                                       const ConvolutionWeight& weight) {
  const Grid& g = fa.grid;
  return convolve(fa, fb, [&](int m1, int l1, int m2, int l2) {
    return weight(g.mu(m1), g.mu(l1), g.mu(m2), g.mu(l2));
  });
}

FourierFunction pointwise_fourier_apply(const FourierFunction& fa, const FourierFunction& fb) {
  return convolve(fa, fb, [](int, int, int, int) { return Complex(1.0, 0.0); });
}

FourierFunction moyal_fourier_apply(const FourierFunction& fa, const FourierFunction& fb, double hbar) {
  if (!std::isfinite(hbar) || hbar < 0.0) throw InvalidArgument("hbar must be finite and nonnegative");
  const int n = fa.grid.n();
  // table(a, b) = exp(i hbar/2 f_a f_b)
  ComplexMatrix table(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table(a, b) = std::exp(Complex(0.0, 0.5 * hbar * fa.grid.mu(a) * fa.grid.mu(b)));
  return convolve(fa, fb, [&table](int m1, int l1, int m2, int l2) {
    return table(l1, m2) * std::conj(table(l2, m1));
  });
}

FourierFunction poisson_fourier_apply(const FourierFunction& fa, const FourierFunction& fb) {
  const Grid& g = fa.grid;
  return convolve(fa, fb, [&g](int m1, int l1, int m2, int l2) {
    return Complex(g.mu(l1) * g.mu(m2) - g.mu(l2) * g.mu(m1), 0.0);
  });
}

Complex groenewold_kernel(double q1, double p1, double q2, double p2, double q, double p, double hbar) {
  const double area = p2 * q1 - p1 * q2 + p * q2 - p2 * q + p1 * q - p * q1;
  return std::exp(Complex(0.0, 2.0 * area / hbar)) / (kPi * kPi * hbar * hbar);
}

Complex groenewold_sample(const GridFunction& a, const GridFunction& b, double q, double p, double hbar) {
  require_same_grid(a.grid, b.grid, "groenewold_sample");
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const Grid& g = a.grid;
  const double lo = -g.half_width();
  const double hi = g.half_width();
  if (!(q >= lo && q < hi && p >= lo && p < hi)) throw InvalidArgument("sample point lies outside the grid");
  const int n = g.n();
  const double k = 2.0 / hbar;
  // e1(k1, j2) = exp(i k p1 (q - q2)),  e2(k2, j1) = exp(i k p2 (q1 - q))
  ComplexMatrix e1(n, n);
  ComplexMatrix e2(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      e1(r, s) = std::exp(Complex(0.0, k * g.q(r) * (q - g.q(s))));
      e2(r, s) = std::exp(Complex(0.0, k * g.q(r) * (g.q(s) - q)));
    }
  const ComplexMatrix sa = a.values * e1;  // (j1, j2)
  const ComplexMatrix sb = b.values * e2;  // (j2, j1)
  Complex total = 0.0;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      total += sa(j1, j2) * sb(j2, j1) * std::exp(Complex(0.0, k * p * (g.q(j2) - g.q(j1))));
    }
  const double dq = g.spacing();
  return total * std::pow(dq, 4) / (kPi * kPi * hbar * hbar);
}

GridFunction spectral_derivative(const GridFunction& a, int axis, int order) {
  if (axis != 0 && axis != 1) throw InvalidArgument("axis must be 0 (q) or 1 (p)");
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  FourierFunction f = dft2(a);
  const int n = a.grid.n();
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      const int idx = axis == 0 ? m : l;
      // The Nyquist bin has no symmetric partner and is dropped.
      const Complex mult = idx == 0 && order > 0 ? Complex(0.0) : std::pow(Complex(0.0, a.grid.mu(idx)), order);
      f.values(m, l) *= mult;
    }
  }
  return idft2(f);
}

GridFunction moyal_asymptotic(const GridFunction& a, const GridFunction& b, int order, double hbar) {
  require_same_grid(a.grid, b.grid, "moyal_asymptotic");
  if (order < 0 || order > 2) throw InvalidArgument("asymptotic order must be 0, 1 or 2");
  GridFunction out{a.grid, a.values.cwiseProduct(b.values)};
  if (order >= 1) {
    out.values += Complex(0.0, 0.5 * hbar) * poisson_bracket_grid(a, b).values;
  }
  if (order >= 2) {
    auto mixed = [](const GridFunction& f) { return spectral_derivative(spectral_derivative(f, 0), 1); };
    const ComplexMatrix aqq = spectral_derivative(a, 0, 2).values;
    const ComplexMatrix app = spectral_derivative(a, 1, 2).values;
    const ComplexMatrix aqp = mixed(a).values;
    const ComplexMatrix bqq = spectral_derivative(b, 0, 2).values;
    const ComplexMatrix bpp = spectral_derivative(b, 1, 2).values;
    const ComplexMatrix bqp = mixed(b).values;
    const ComplexMatrix term =
        aqq.cwiseProduct(bpp) - 2.0 * aqp.cwiseProduct(bqp) + app.cwiseProduct(bqq);
    out.values -= (hbar * hbar / 8.0) * term;
  }
  return out;
}

GridFunction poisson_bracket_grid(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid, b.grid, "poisson_bracket_grid");
  const ComplexMatrix aq = spectral_derivative(a, 0).values;
  const ComplexMatrix ap = spectral_derivative(a, 1).values;
  const ComplexMatrix bq = spectral_derivative(b, 0).values;
  const ComplexMatrix bp = spectral_derivative(b, 1).values;
  return {a.grid, aq.cwiseProduct(bp) - ap.cwiseProduct(bq)};
}

double boundary_magnitude(const GridFunction& a) {
  const int n = a.grid.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max({worst, std::abs(a.values(0, i)), std::abs(a.values(n - 1, i)), std::abs(a.values(i, 0)),
                      std::abs(a.values(i, n - 1))});
  }
  return worst;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_difference: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace starprod
