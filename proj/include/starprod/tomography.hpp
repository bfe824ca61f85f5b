#pragma once

// Symplectic tomograms in ray representation. A tomogram
//   w(X, mu, nu) = (1/2pi) \int A(q,p) delta(X - mu q - nu p) dq dp
// is stored through its X-Fourier data, which on the ray through (mu, nu)
// equals A~(-kappa mu, -kappa nu). Star products of tomograms become weighted
// convolutions of that data.

#include "starprod/phase_space.hpp"

#include <functional>
#include <optional>

namespace starprod {

struct ReferenceFrame {
  double s = 1.0;
  double theta = 0.0;
};

struct TomographicPoint {
  double X = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

/// (s cos theta, sin theta / s). Throws InvalidArgument for s <= 0.
std::pair<double, double> frame_to_munu(const ReferenceFrame& f);

class Tomogram {
 public:
  /// ray(m, l) is the X-Fourier data at (mu_m, nu_l).
  explicit Tomogram(FourierFunction ray_data);

  const Grid& grid() const { return ray_.grid; }
  const FourierFunction& ray_data() const { return ray_; }

  /// Phase-space samples behind the tomogram.
  const GridFunction& samples() const { return samples_; }

  /// X-Fourier data at an arbitrary frequency point (mu, nu).
  Complex ray_value(double mu, double nu) const;

  /// w(X, mu, nu) by trapezoidal inversion along the ray. Throws SingularFrame
  /// for mu = nu = 0.
  Complex evaluate_complex(double X, double mu, double nu) const;
  double evaluate(double X, double mu, double nu) const { return evaluate_complex(X, mu, nu).real(); }
  double evaluate(const TomographicPoint& pt) const { return evaluate(pt.X, pt.mu, pt.nu); }

 private:
  FourierFunction ray_;
  GridFunction samples_;
};

/// Ray data from phase-space samples. Throws NonDecaying when the largest
/// boundary magnitude exceeds 1e-8.
Tomogram radon(const GridFunction& a);

GridFunction inverse_radon(const Tomogram& w);

/// Wave function in position representation, optionally with its momentum
/// representation. Quadratures run over [-half_width, half_width] and
/// [-momentum_half_width, momentum_half_width].
struct WaveFunction {
  std::function<Complex(double)> position;
  std::function<Complex(double)> momentum;
  double half_width = 10.0;
  double momentum_half_width = 10.0;
};

/// Normalized Gaussian packet centred at (q0, p0) with width sigma, with its
/// momentum representation filled in.
WaveFunction gaussian_wave_packet(double q0, double p0, double sigma, double hbar);

/// phi(p) = (2 pi hbar)^{-1/2} \int psi(y) exp(-i p y / hbar) dy by quadrature.
Complex momentum_amplitude(const WaveFunction& psi, double p, double hbar);

/// Tomogram of a pure state. For |nu| >= |mu| the position-space formula is
/// used; otherwise the equivalent momentum-space formula. Throws SingularFrame
/// for mu = nu = 0.
double pure_state_tomogram(const WaveFunction& psi, const TomographicPoint& pt, double hbar);

/// W(q, p) = \int psi(q + u/2) psi*(q - u/2) exp(-i p u / hbar) du
GridFunction weyl_symbol(const WaveFunction& psi, const Grid& grid, double hbar);

/// Tomogram of the pointwise product.
Tomogram classical_star(const Tomogram& wa, const Tomogram& wb);

/// exp[(i hbar/2)(nu1 mu2 - nu2 mu1)]
Complex twist_factor(const TomographicPoint& x1, const TomographicPoint& x2, double hbar);

/// Classical kernel times the twist factor: the tomogram of the Moyal product.
Tomogram quantum_star(const Tomogram& wa, const Tomogram& wb, double hbar);

/// quantum_star with a caller-supplied twist in place of twist_factor.
Tomogram twisted_star(const Tomogram& wa, const Tomogram& wb,
                      const std::function<Complex(const TomographicPoint&, const TomographicPoint&)>& twist);

/// Tomogram of the Poisson bracket {A, B}.
Tomogram poisson_star(const Tomogram& wa, const Tomogram& wb);

/// (1/2pi hbar) \int W_rho A dq dp evaluated in ray representation.
double mean_value_tomographic(const Tomogram& w_rho, const GridFunction& a, double hbar);

}  // namespace starprod
