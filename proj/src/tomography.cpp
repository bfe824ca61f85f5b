#include "starprod/tomography.hpp"

#include "starprod/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace starprod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTolerance = 1e-8;

// Index reflection m -> -m on the cyclic frequency grid.
ComplexMatrix reflect(const ComplexMatrix& v) {
  const Index n = v.rows();
  ComplexMatrix out(n, n);
  for (Index l = 0; l < n; ++l)
    for (Index m = 0; m < n; ++m) out(m, l) = v((n - m) % n, (n - l) % n);
  return out;
}

template <class F>
Complex integrate_complex(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate([&](double y) { return f(y).real(); }, a, b, 15, 1e-13);
  const double im = gauss_kronrod<double, 61>::integrate([&](double y) { return f(y).imag(); }, a, b, 15, 1e-13);
  return {re, im};
}

void require_same_grid(const Tomogram& a, const Tomogram& b, const char* what) {
  if (a.grid() != b.grid()) throw GridMismatch(std::string(what) + ": tomograms live on different grids");
}

// Position-space tomogram formula, valid for nu != 0.
double direct_tomogram(const std::function<Complex(double)>& psi, double half_width, double X, double mu,
                       double nu, double hbar) {
  const Complex amp = integrate_complex(
      [&](double y) {
        return psi(y) * std::exp(Complex(0.0, mu * y * y / (2.0 * nu * hbar) - X * y / (hbar * nu)));
      },
      -half_width, half_width);
  return std::norm(amp) / (2.0 * kPi * hbar * std::abs(nu));
}

}  // namespace

std::pair<double, double> frame_to_munu(const ReferenceFrame& f) {
  if (!(f.s > 0.0)) throw InvalidArgument("squeeze parameter must be positive");
  return {f.s * std::cos(f.theta), std::sin(f.theta) / f.s};
}

Tomogram::Tomogram(FourierFunction ray_data)
    : ray_(std::move(ray_data)), samples_(idft2(FourierFunction{ray_.grid, reflect(ray_.values)})) {}

Complex Tomogram::ray_value(double mu, double nu) const {
  const Grid& g = ray_.grid;
  const int n = g.n();
  Eigen::VectorXcd eq(n);
  Eigen::VectorXcd ep(n);
  for (int j = 0; j < n; ++j) {
    eq(j) = std::exp(Complex(0.0, mu * g.q(j)));
    ep(j) = std::exp(Complex(0.0, nu * g.q(j)));
  }
  const double dq = g.spacing();
  return (eq.transpose() * samples_.values * ep)(0, 0) * (dq * dq / (2.0 * kPi));
}

Complex Tomogram::evaluate_complex(double X, double mu, double nu) const {
  const double reach = std::max(std::abs(mu), std::abs(nu));
  if (reach == 0.0) throw SingularFrame("tomogram undefined at mu = nu = 0");
  const Grid& g = ray_.grid;
  const double kappa_max = kPi / (g.spacing() * reach);
  // The trapezoid periodizes w in X; the period must clear its support.
  const double period = 2.0 * g.half_width() * (std::abs(mu) + std::abs(nu)) + std::abs(X) + 1.0;
  const int steps = static_cast<int>(std::ceil(2.0 * kappa_max * period / (2.0 * kPi)));
  const double dk = 2.0 * kappa_max / steps;
  Complex total = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double kappa = -kappa_max + i * dk;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    total += w * ray_value(kappa * mu, kappa * nu) * std::exp(Complex(0.0, -kappa * X));
  }
  return total * dk / (2.0 * kPi);
}

Tomogram radon(const GridFunction& a) {
  const double edge = boundary_magnitude(a);
  if (edge > kBoundaryTolerance) {
    throw NonDecaying("function does not decay at the grid boundary (max " + std::to_string(edge) + ")");
  }
  const FourierFunction f = dft2(a);
  return Tomogram(FourierFunction{f.grid, reflect(f.values)});
}

GridFunction inverse_radon(const Tomogram& w) {
  return idft2(FourierFunction{w.grid(), reflect(w.ray_data().values)});
}

WaveFunction gaussian_wave_packet(double q0, double p0, double sigma, double hbar) {
  if (!(sigma > 0.0) || !(hbar > 0.0)) throw InvalidArgument("sigma and hbar must be positive");
  WaveFunction wf;
  const double norm_q = std::pow(kPi * sigma * sigma, -0.25);
  const double norm_p = std::pow(sigma * sigma / (kPi * hbar * hbar), 0.25);
  wf.position = [=](double y) {
    return norm_q * std::exp(Complex(-(y - q0) * (y - q0) / (2.0 * sigma * sigma), p0 * y / hbar));
  };
  wf.momentum = [=](double p) {
    return norm_p * std::exp(Complex(-sigma * sigma * (p - p0) * (p - p0) / (2.0 * hbar * hbar),
                                     -(p - p0) * q0 / hbar));
  };
  wf.half_width = std::abs(q0) + 12.0 * sigma;
  wf.momentum_half_width = std::abs(p0) + 12.0 * hbar / sigma;
  return wf;
}

Complex momentum_amplitude(const WaveFunction& psi, double p, double hbar) {
  if (!psi.position) throw InvalidArgument("wave function has no position representation");
  const Complex v = integrate_complex(
      [&](double y) { return psi.position(y) * std::exp(Complex(0.0, -p * y / hbar)); }, -psi.half_width,
      psi.half_width);
  return v / std::sqrt(2.0 * kPi * hbar);
}

double pure_state_tomogram(const WaveFunction& psi, const TomographicPoint& pt, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (pt.mu == 0.0 && pt.nu == 0.0) throw SingularFrame("tomogram undefined at mu = nu = 0");
  if (!psi.position) throw InvalidArgument("wave function has no position representation");
  if (std::abs(pt.nu) >= std::abs(pt.mu)) {
    return direct_tomogram(psi.position, psi.half_width, pt.X, pt.mu, pt.nu, hbar);
  }
  // Momentum picture: q -> p, p -> -q, so (mu, nu) -> (nu, -mu).
  std::function<Complex(double)> phi = psi.momentum;
  if (!phi) phi = [&psi, hbar](double p) { return momentum_amplitude(psi, p, hbar); };
  return direct_tomogram(phi, psi.momentum_half_width, pt.X, pt.nu, -pt.mu, hbar);
}

GridFunction weyl_symbol(const WaveFunction& psi, const Grid& grid, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (!psi.position) throw InvalidArgument("wave function has no position representation");
  return sample(grid, [&](double q, double p) {
    return integrate_complex(
        [&](double u) {
          return psi.position(q + 0.5 * u) * std::conj(psi.position(q - 0.5 * u)) *
                 std::exp(Complex(0.0, -p * u / hbar));
        },
        -2.0 * psi.half_width, 2.0 * psi.half_width);
  });
}

Tomogram classical_star(const Tomogram& wa, const Tomogram& wb) {
  require_same_grid(wa, wb, "classical_star");
  return Tomogram(pointwise_fourier_apply(wa.ray_data(), wb.ray_data()));
}

Complex twist_factor(const TomographicPoint& x1, const TomographicPoint& x2, double hbar) {
  return std::exp(Complex(0.0, 0.5 * hbar * (x1.nu * x2.mu - x2.nu * x1.mu)));
}

Tomogram quantum_star(const Tomogram& wa, const Tomogram& wb, double hbar) {
  require_same_grid(wa, wb, "quantum_star");
  // The twist is even under (mu, nu) -> (-mu, -nu), so the Moyal weight applies
  // to ray data unchanged.
  return Tomogram(moyal_fourier_apply(wa.ray_data(), wb.ray_data(), hbar));
}

Tomogram twisted_star(const Tomogram& wa, const Tomogram& wb,
                      const std::function<Complex(const TomographicPoint&, const TomographicPoint&)>& twist) {
  require_same_grid(wa, wb, "twisted_star");
  return Tomogram(weighted_fourier_apply(wa.ray_data(), wb.ray_data(),
                                         [&twist](double mu1, double nu1, double mu2, double nu2) {
                                           return twist({0.0, mu1, nu1}, {0.0, mu2, nu2});
                                         }));
}

Tomogram poisson_star(const Tomogram& wa, const Tomogram& wb) {
  require_same_grid(wa, wb, "poisson_star");
  // The weight is bilinear in the two frames, hence even under the joint reflection.
  return Tomogram(poisson_fourier_apply(wa.ray_data(), wb.ray_data()));
}

double mean_value_tomographic(const Tomogram& w_rho, const GridFunction& a, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (w_rho.grid() != a.grid) throw GridMismatch("mean_value_tomographic: state and observable grids differ");
  const FourierFunction fa = dft2(a);
  const double dmu = a.grid.frequency_spacing();
  const Complex total = w_rho.ray_data().values.cwiseProduct(fa.values).sum();
  return (total * dmu * dmu / (2.0 * kPi * hbar)).real();
}

}  // namespace starprod
