#pragma once

// Quantizer/dequantizer schemes over finite index sets.
//
// A scheme is a pair of operator families D(x) (quantizers) and U(x)
// (dequantizers), x = 0..n-1, together with a pairing form such that
// pair(U(x), D(x')) = delta(x, x'). Symbols are f_A(x) = pair(U(x), A) and
// operators are rebuilt as A = sum_x f_A(x) D(x). The star product of symbols
// is encoded by the rank-3 kernel K(x1, x2, x) = pair(U(x), D(x1) D(x2)).

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace starprod {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using SymbolVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Pauli matrix sigma_k for k = 0..3 (sigma_0 is the identity).
ComplexMatrix pauli(int k);

/// Elementary 2x2 matrix unit E_{row,col}, 1-based like the textbook notation.
ComplexMatrix matrix_unit(int dim, int row, int col);

class PairingForm {
 public:
  enum class Kind { ScaledTrace, ScaledImagTrace, JTwistedTrace };

  /// c * Tr(A^dagger B)
  static PairingForm scaled_trace(double c);
  /// c * Im Tr(A^dagger B^dagger); real-valued and only real-bilinear.
  static PairingForm scaled_imag_trace(double c);
  /// Tr(A^dagger J B J)
  static PairingForm j_twisted_trace(ComplexMatrix j);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  const ComplexMatrix& twist() const { return twist_; }

  /// True when the pairing is complex-linear in its second argument.
  bool complex_linear() const { return kind_ != Kind::ScaledImagTrace; }

  Complex operator()(const ComplexMatrix& a, const ComplexMatrix& b) const;

  std::string kind_name() const;

 private:
  PairingForm(Kind kind, double scale, ComplexMatrix twist)
      : kind_(kind), scale_(scale), twist_(std::move(twist)) {}

  Kind kind_;
  double scale_;
  ComplexMatrix twist_;
};

class Scheme {
 public:
  /// Throws InvalidScheme on empty families, size or dimension mismatches,
  /// or non-finite entries.
  Scheme(std::string label, PairingForm pairing, std::vector<ComplexMatrix> quantizers,
         std::vector<ComplexMatrix> dequantizers);

  const std::string& label() const { return label_; }
  const PairingForm& pairing() const { return pairing_; }
  const std::vector<ComplexMatrix>& quantizers() const { return quantizers_; }
  const std::vector<ComplexMatrix>& dequantizers() const { return dequantizers_; }
  const ComplexMatrix& quantizer(Index x) const { return quantizers_[static_cast<std::size_t>(x)]; }
  const ComplexMatrix& dequantizer(Index x) const {
    return dequantizers_[static_cast<std::size_t>(x)];
  }

  /// Size of the index set.
  Index size() const { return static_cast<Index>(quantizers_.size()); }
  /// Dimension of the underlying Hilbert space.
  Index dim() const { return quantizers_.front().rows(); }

 private:
  std::string label_;
  PairingForm pairing_;
  std::vector<ComplexMatrix> quantizers_;
  std::vector<ComplexMatrix> dequantizers_;
};

/// Dense n x n x n kernel, K(x1, x2, x).
class StarKernel {
 public:
  explicit StarKernel(Index n) : n_(n), values_(static_cast<std::size_t>(n * n * n)) {}

  Index size() const { return n_; }
  Complex& operator()(Index x1, Index x2, Index x) { return values_[offset(x1, x2, x)]; }
  const Complex& operator()(Index x1, Index x2, Index x) const { return values_[offset(x1, x2, x)]; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  std::size_t offset(Index x1, Index x2, Index x) const {
    return static_cast<std::size_t>((x1 * n_ + x2) * n_ + x);
  }

  Index n_;
  std::vector<Complex> values_;
};

class KernelVariant {
 public:
  enum class Kind { Plain, Dual, KDeformed, KDeformedDual };

  static KernelVariant plain() { return KernelVariant(Kind::Plain, {}); }
  static KernelVariant dual() { return KernelVariant(Kind::Dual, {}); }
  static KernelVariant k_deformed(ComplexMatrix k) { return KernelVariant(Kind::KDeformed, std::move(k)); }
  static KernelVariant k_deformed_dual(ComplexMatrix k) {
    return KernelVariant(Kind::KDeformedDual, std::move(k));
  }

  Kind kind() const { return kind_; }
  const ComplexMatrix& deformation() const { return deformation_; }
  bool deformed() const { return kind_ == Kind::KDeformed || kind_ == Kind::KDeformedDual; }
  bool dual_roles() const { return kind_ == Kind::Dual || kind_ == Kind::KDeformedDual; }
  std::string name() const;

 private:
  KernelVariant(Kind kind, ComplexMatrix k) : kind_(kind), deformation_(std::move(k)) {}

  Kind kind_;
  ComplexMatrix deformation_;
};

/// max over (x, x') of |pair(U(x), D(x')) - delta(x, x')|.
double pairing_residual(const Scheme& s);

SymbolVector symbol_of(const Scheme& s, const ComplexMatrix& a);

/// sum_x f(x) D(x)
ComplexMatrix reconstruct(const Scheme& s, const SymbolVector& f);

StarKernel star_kernel(const Scheme& s, const KernelVariant& variant);

/// f(x) = sum_{x1,x2} K(x1,x2,x) fA(x1) fB(x2)
SymbolVector star_multiply(const StarKernel& k, const SymbolVector& fa, const SymbolVector& fb);

/// Largest violation of the discrete associativity equation
/// sum_y K(x1,x2,y) K(y,x3,x4) = sum_y K(x2,x3,y) K(x1,y,x4).
double associativity_residual(const StarKernel& k);

/// Exchange of quantizers and dequantizers; the pairing is kept.
Scheme dual_scheme(const Scheme& s);

/// U -> lambda U, D -> D / lambda. Throws InvalidArgument for lambda == 0.
Scheme scale_scheme(const Scheme& s, double lambda);

/// Exponent e with K_lambda = lambda^e K for the plain kernel, measured on the
/// largest kernel entry. For real lambda and a sesquilinear pairing this is -1.
double kernel_scaling_exponent(const Scheme& s, double lambda);

/// Transition kernels between two schemes on the same space:
/// forward(x, y) = pair(U2(y), D1(x)) carries symbols of s1 to symbols of s2,
/// backward(y, x) = pair(U1(x), D2(y)) carries them back.
struct Intertwiners {
  ComplexMatrix forward;
  ComplexMatrix backward;
};

Intertwiners intertwiners(const Scheme& s1, const Scheme& s2);

/// f2(y) = sum_x f1(x) forward(x, y)
SymbolVector transport_forward(const Intertwiners& t, const SymbolVector& f1);
/// f1(x) = sum_y f2(y) backward(y, x)
SymbolVector transport_backward(const Intertwiners& t, const SymbolVector& f2);

/// f^d_A(x) = pair(D(x), A)
SymbolVector dual_symbol(const Scheme& s, const ComplexMatrix& a);

/// sum_x f^d(x) U(x), the reconstruction matching dual_symbol.
ComplexMatrix reconstruct_dual(const Scheme& s, const SymbolVector& fd);

/// sum_x Tr(rho U(x)) f^d_A(x); equals Tr(rho A) when A lies in the U-span.
Complex mean_value(const Scheme& s, const ComplexMatrix& rho, const ComplexMatrix& a);

/// Largest distance between a product D(x1) K D(x2) and its projection back onto
/// the quantizer span. Zero means the span is closed under the (deformed) product,
/// which is the condition for the kernel to be associative.
double product_closure_residual(const Scheme& s, const KernelVariant& variant);

/// "u2", "su2sb2" or "gl2half". Throws UnknownScheme otherwise.
Scheme builtin_scheme(std::string_view name);
std::vector<std::string> builtin_scheme_names();

}  // namespace starprod
