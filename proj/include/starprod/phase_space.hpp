#pragma once

// Sampled phase-space functions on a square grid and their discrete Fourier
// images. Conventions:
//   q_j = -L + j dq,  dq = 2L/n,  j = 0..n-1 (same for p)
//   mu_m = (m - n/2) dmu,  dmu = pi/L (same for nu)
//   A~(mu, nu) = (1/2pi) \int A(q,p) exp(-i(mu q + nu p)) dq dp
// Products are evaluated in the Fourier picture as weighted cyclic
// convolutions.

#include "starprod/scheme_core.hpp"

#include <functional>

namespace starprod {

class Grid {
 public:
  /// Throws InvalidArgument unless n is a power of two, n >= 8 and L > 0.
  Grid(int n, double half_width);

  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double frequency_spacing() const;
  double q(int j) const { return -half_width_ + j * spacing(); }
  double mu(int m) const { return (m - n_ / 2) * frequency_spacing(); }

  bool operator==(const Grid& o) const { return n_ == o.n_ && half_width_ == o.half_width_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int n_;
  double half_width_;
};

/// values(j, k) = A(q_j, p_k)
struct GridFunction {
  Grid grid;
  ComplexMatrix values;
};

/// values(m, l) = A~(mu_m, nu_l)
struct FourierFunction {
  Grid grid;
  ComplexMatrix values;
};

GridFunction sample(const Grid& grid, const std::function<Complex(double, double)>& f);

FourierFunction dft2(const GridFunction& a);
GridFunction idft2(const FourierFunction& f);

/// Discrete stand-in for 2 pi delta(mu) delta(nu): one bin at the origin
/// carrying 2 pi / dmu^2. It is the image of the constant function 1.
FourierFunction discrete_impulse(const Grid& grid);

/// Weighted cyclic convolution
///   out(mu) = (dmu^2 / 2pi) sum_{mu1} FA(mu1) FB(mu - mu1) w(mu1, nu1, mu2, nu2)
/// with an arbitrary weight.
using ConvolutionWeight = std::function<Complex(double mu1, double nu1, double mu2, double nu2)>;
FourierFunction weighted_fourier_apply(const FourierFunction& fa, const FourierFunction& fb,
                                       const ConvolutionWeight& weight);

/// Weight 1: the image of the pointwise product.
FourierFunction pointwise_fourier_apply(const FourierFunction& fa, const FourierFunction& fb);

/// Weight exp[(i hbar/2)(nu1 mu2 - nu2 mu1)]: the image of the Moyal product.
FourierFunction moyal_fourier_apply(const FourierFunction& fa, const FourierFunction& fb, double hbar);

/// Weight (nu1 mu2 - nu2 mu1): the image of the Poisson bracket.
FourierFunction poisson_fourier_apply(const FourierFunction& fa, const FourierFunction& fb);

/// (1/pi^2 hbar^2) exp[(2i/hbar)(p2 q1 - p1 q2 + p q2 - p2 q + p1 q - p q1)]
Complex groenewold_kernel(double q1, double p1, double q2, double p2, double q, double p, double hbar);

/// (A * B)(q, p) by trapezoidal quadrature of the Groenewold kernel over the grid.
/// Throws InvalidArgument when (q, p) lies outside the grid.
Complex groenewold_sample(const GridFunction& a, const GridFunction& b, double q, double p, double hbar);

/// Spectral partial derivative; axis 0 is q, axis 1 is p.
GridFunction spectral_derivative(const GridFunction& a, int axis, int order = 1);

/// Truncated Moyal expansion of order 0, 1 or 2 in hbar.
GridFunction moyal_asymptotic(const GridFunction& a, const GridFunction& b, int order, double hbar);

/// dA/dq dB/dp - dA/dp dB/dq
GridFunction poisson_bracket_grid(const GridFunction& a, const GridFunction& b);

/// Largest |A| on the outermost ring of grid points.
double boundary_magnitude(const GridFunction& a);

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace starprod
