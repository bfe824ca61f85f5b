#pragma once

// Lie structure constants from antisymmetrized star kernels, K-deformed
// brackets of so(3) and of a type-B base algebra, and the classification of
// real three dimensional Lie algebras through the Casimir-form parameters.

#include "starprod/scheme_core.hpp"

#include <array>
#include <string>

namespace starprod {

/// C(i, j, k) with C(i, j, k) = -C(j, i, k) held exactly.
class StructureConstants {
 public:
  explicit StructureConstants(Index n);

  /// Throws InvalidArgument unless values has n^3 entries and is antisymmetric
  /// in its first two indices to within tol.
  static StructureConstants from_values(Index n, const std::vector<Complex>& values, double tol = 1e-12);

  Index size() const { return n_; }
  Complex operator()(Index i, Index j, Index k) const { return values_[offset(i, j, k)]; }

  /// Sets C(i,j,k) = v and C(j,i,k) = -v. Throws for i == j with v != 0.
  void set(Index i, Index j, Index k, Complex v);

  const std::vector<Complex>& values() const { return values_; }

  /// Largest |Im C|.
  double max_imag() const;

 private:
  std::size_t offset(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }

  Index n_;
  std::vector<Complex> values_;
};

struct CasimirParams {
  double h = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

enum class BianchiLabel { A1, A2, A3, A4, A5, A6, B1, B2, B3, B4 };

std::string to_string(BianchiLabel label);

struct ThreeDClass {
  BianchiLabel label;
  /// Normal-form parameters; for B3 and B4 h carries the invariant parameter.
  CasimirParams params;
  double jacobi_residual = 0.0;
};

/// C(x1,x2,x) = K(x1,x2,x) - K(x2,x1,x) for the chosen kernel variant.
StructureConstants antisym_kernel(const Scheme& s, const KernelVariant& variant);

/// max over (i,j,k,m) of |sum_l C(i,j,l)C(l,k,m) + C(j,k,l)C(l,i,m) + C(k,i,l)C(l,j,m)|
double jacobi_residual(const StructureConstants& c);

/// fA * fB - fB * fA through the plain kernel.
SymbolVector commutator_symbol(const Scheme& s, const SymbolVector& fa, const SymbolVector& fb);

/// Rotation generators L1, L2, L3 of so(3).
std::array<Eigen::Matrix3d, 3> so3_generators();

/// Generators X1, X2, X3 of the type-B base algebra with parameter h.
std::array<Eigen::Matrix3d, 3> typeb_generators(double h);

/// Constants of [Li, Lj]_K = Li K Lj - Lj K Li in the L basis.
/// Throws InvalidArgument when K is not symmetric.
StructureConstants so3_k_deform(const Eigen::Matrix3d& k);

/// Constants of [Xi, Xj]_K in the X basis, taken as the least-squares projection
/// of each bracket onto span{X1, X2, X3}. With enforce_shape, a nonzero entry
/// K(2,1) or K(3,1) raises ShapeViolation (1-based row and column).
StructureConstants typeb_k_deform(const Eigen::Matrix3d& k, double h, bool enforce_shape = true);

/// Largest distance of a deformed type-B bracket from span{X1, X2, X3}.
double typeb_span_residual(const Eigen::Matrix3d& k, double h);

/// {x1,x2} = c x3, {x2,x3} = a x1 - h x2, {x3,x1} = b x2 + h x1
StructureConstants brackets_from_params(const CasimirParams& p);

/// 2 h c
double casimir_jacobi_obstruction(const CasimirParams& p);

/// Bianchi-type label of a real three dimensional Lie algebra. Throws
/// Unclassifiable for n != 3, complex constants, or a failed Jacobi identity.
ThreeDClass classify_3d(const StructureConstants& c, double tol = 1e-9);

struct DoubleCheck {
  double residual_plain;
  double residual_dual;
};

DoubleCheck double_check(const Scheme& s);

}  // namespace starprod
