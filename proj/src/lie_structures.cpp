#include "starprod/lie_structures.hpp"

#include "starprod/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace starprod {

namespace {

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

using Basis = std::array<Eigen::Matrix3d, 3>;

// Least-squares coordinates of m in the basis, plus the distance to the span.
Eigen::Vector3d coordinates(const Basis& basis, const Eigen::Matrix3d& m, double* residual) {
  Eigen::Matrix<double, 9, 3> g;
  for (int k = 0; k < 3; ++k) g.col(k) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(basis[k].data());
  const Eigen::Matrix<double, 9, 1> v = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(m.data());
  const Eigen::Vector3d coeff = g.colPivHouseholderQr().solve(v);
  if (residual) *residual = (g * coeff - v).cwiseAbs().maxCoeff();
  return coeff;
}

StructureConstants deformed_constants(const Basis& basis, const Eigen::Matrix3d& k, double* span_residual) {
  StructureConstants c(3);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Matrix3d bracket = basis[i] * k * basis[j] - basis[j] * k * basis[i];
      double r = 0.0;
      const Eigen::Vector3d coeff = coordinates(basis, bracket, &r);
      worst = std::max(worst, r);
      for (int l = 0; l < 3; ++l) c.set(i, j, l, coeff(l));
    }
  }
  if (span_residual) *span_residual = worst;
  return c;
}

int sign_of(double v, double tol) {
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

}  // namespace

StructureConstants::StructureConstants(Index n) : n_(n), values_(static_cast<std::size_t>(n * n * n)) {
  if (n < 1) throw InvalidArgument("structure constants need n >= 1");
}

StructureConstants StructureConstants::from_values(Index n, const std::vector<Complex>& values, double tol) {
  if (static_cast<Index>(values.size()) != n * n * n) {
    throw InvalidArgument("structure constants need n^3 = " + std::to_string(n * n * n) + " values, got " +
                          std::to_string(values.size()));
  }
  StructureConstants c(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        const Complex v = values[c.offset(i, j, k)];
        const Complex w = values[c.offset(j, i, k)];
        if (std::abs(v + w) > tol) {
          throw InvalidArgument("structure constants are not antisymmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
        }
        if (i != j) c.set(i, j, k, 0.5 * (v - w));
      }
    }
  }
  return c;
}

void StructureConstants::set(Index i, Index j, Index k, Complex v) {
  if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_) throw InvalidArgument("structure constant index out of range");
  if (i == j) {
    if (v != 0.0) throw InvalidArgument("diagonal structure constants must vanish");
    return;
  }
  values_[offset(i, j, k)] = v;
  values_[offset(j, i, k)] = -v;
}

double StructureConstants::max_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

std::string to_string(BianchiLabel label) {
  switch (label) {
    case BianchiLabel::A1: return "A1";
    case BianchiLabel::A2: return "A2";
    case BianchiLabel::A3: return "A3";
    case BianchiLabel::A4: return "A4";
    case BianchiLabel::A5: return "A5";
    case BianchiLabel::A6: return "A6";
    case BianchiLabel::B1: return "B1";
    case BianchiLabel::B2: return "B2";
    case BianchiLabel::B3: return "B3";
    case BianchiLabel::B4: return "B4";
  }
  return {};
}

StructureConstants antisym_kernel(const Scheme& s, const KernelVariant& variant) {
  const StarKernel k = star_kernel(s, variant);
  const Index n = k.size();
  StructureConstants c(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index x = 0; x < n; ++x) c.set(i, j, x, k(i, j, x) - k(j, i, x));
  return c;
}

double jacobi_residual(const StructureConstants& c) {
  const Index n = c.size();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index m = 0; m < n; ++m) {
          Complex total = 0.0;
          for (Index l = 0; l < n; ++l) {
            total += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
          }
          worst = std::max(worst, std::abs(total));
        }
  return worst;
}

SymbolVector commutator_symbol(const Scheme& s, const SymbolVector& fa, const SymbolVector& fb) {
  const StarKernel k = star_kernel(s, KernelVariant::plain());
  return star_multiply(k, fa, fb) - star_multiply(k, fb, fa);
}

std::array<Eigen::Matrix3d, 3> so3_generators() {
  Basis l;
  l[0] << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  l[1] << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  l[2] << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return l;
}

std::array<Eigen::Matrix3d, 3> typeb_generators(double h) {
  Basis x;
  x[0] << 0, 0, 1, 0, 0, 0, 0, 0, 0;
  x[1] << 0, 1, 0, 0, 0, 0, 0, 0, 0;
  x[2] << h, 0, 0, 0, 0, 1, 0, -1, 0;
  return x;
}

StructureConstants so3_k_deform(const Eigen::Matrix3d& k) {
  if (!k.allFinite()) throw InvalidArgument("K has non-finite entries");
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("so(3) deformation requires a symmetric K");
  }
  return deformed_constants(so3_generators(), k, nullptr);
}

StructureConstants typeb_k_deform(const Eigen::Matrix3d& k, double h, bool enforce_shape) {
  if (!k.allFinite() || !std::isfinite(h)) throw InvalidArgument("K and h must be finite");
  if (enforce_shape) {
    for (int row = 1; row < 3; ++row) {
      if (k(row, 0) != 0.0) {
        throw ShapeViolation(row + 1, 1,
                             "K(" + std::to_string(row + 1) + ",1) = " + std::to_string(k(row, 0)) +
                                 " must be zero for the type-B deformation");
      }
    }
  }
  return deformed_constants(typeb_generators(h), k, nullptr);
}

double typeb_span_residual(const Eigen::Matrix3d& k, double h) {
  double r = 0.0;
  deformed_constants(typeb_generators(h), k, &r);
  return r;
}

StructureConstants brackets_from_params(const CasimirParams& p) {
  StructureConstants c(3);
  c.set(0, 1, 2, p.c);
  c.set(1, 2, 0, p.a);
  c.set(1, 2, 1, -p.h);
  c.set(2, 0, 1, p.b);
  c.set(2, 0, 0, p.h);
  return c;
}

double casimir_jacobi_obstruction(const CasimirParams& p) { return 2.0 * p.h * p.c; }

ThreeDClass classify_3d(const StructureConstants& c, double tol) {
  if (c.size() != 3) throw Unclassifiable("classification needs n = 3, got n = " + std::to_string(c.size()));
  double scale = 1.0;
  for (const auto& v : c.values()) scale = std::max(scale, std::abs(v));
  const double eps = tol * scale;
  if (c.max_imag() > eps) throw Unclassifiable("structure constants are not real");
  const double jac = jacobi_residual(c);
  if (jac > eps * scale) {
    throw Unclassifiable("Jacobi identity fails (residual " + std::to_string(jac) + ")");
  }

  auto C = [&c](int i, int j, int k) { return c(i, j, k).real(); };
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i) += 0.5 * C(i, j, j);
  Eigen::Matrix3d n = Eigen::Matrix3d::Zero();
  for (int m = 0; m < 3; ++m)
    for (int k = 0; k < 3; ++k) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) v += 0.5 * levi_civita(i, j, m) * C(i, j, k);
        v -= levi_civita(i, k, m) * a(i);
      }
      n(m, k) = v;
    }
  if ((n - n.transpose()).cwiseAbs().maxCoeff() > eps) {
    throw Unclassifiable("symmetric part does not reproduce the constants");
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double r = 0.0;
        for (int l = 0; l < 3; ++l) r += levi_civita(i, j, l) * n(l, k);
        if (j == k) r += a(i);
        if (i == k) r -= a(j);
        if (std::abs(r - C(i, j, k)) > eps) throw Unclassifiable("constants are not of Casimir normal form");
      }

  ThreeDClass out{BianchiLabel::A6, {}, jac};
  const double h = a.norm();
  if (h <= eps) {
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(n).eigenvalues();
    int pos = 0;
    int neg = 0;
    for (int i = 0; i < 3; ++i) {
      const int sg = sign_of(ev(i), eps);
      pos += sg > 0;
      neg += sg < 0;
    }
    const int rank = pos + neg;
    if (rank == 3) {
      if (pos == 3 || neg == 3) out = {BianchiLabel::A1, {0, 1, 1, 1}, jac};
      else out = {BianchiLabel::A3, {0, 1, 1, -1}, jac};
    } else if (rank == 2) {
      if (pos == 2 || neg == 2) out = {BianchiLabel::A2, {0, 0, 1, 1}, jac};
      else out = {BianchiLabel::A4, {0, 0, 1, -1}, jac};
    } else if (rank == 1) {
      out = {BianchiLabel::A5, {0, 0, 0, 1}, jac};
    }
    return out;
  }

  // Proper rotation taking the trace vector to the third axis.
  const Eigen::Vector3d e3 = a / h;
  Eigen::Vector3d e1 = std::abs(e3(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  e1 = (e1 - e1.dot(e3) * e3).normalized();
  const Eigen::Vector3d e2 = e3.cross(e1);
  Eigen::Matrix2d block;
  block << e1.dot(n * e1), e1.dot(n * e2), e2.dot(n * e1), e2.dot(n * e2);
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(block).eigenvalues();
  const int s1 = sign_of(ev(0), eps);
  const int s2 = sign_of(ev(1), eps);
  if (s1 == 0 && s2 == 0) {
    out = {BianchiLabel::B1, {1, 0, 0, 0}, jac};
  } else if (s1 == 0 || s2 == 0) {
    out = {BianchiLabel::B2, {1, 0, 1, 0}, jac};
  } else {
    const double hp = h / std::sqrt(std::abs(ev(0) * ev(1)));
    if (s1 == s2) out = {BianchiLabel::B4, {hp, 1, 1, 0}, jac};
    else out = {BianchiLabel::B3, {hp, 1, -1, 0}, jac};
  }
  return out;
}

DoubleCheck double_check(const Scheme& s) {
  return {jacobi_residual(antisym_kernel(s, KernelVariant::plain())),
          jacobi_residual(antisym_kernel(s, KernelVariant::dual()))};
}

}  // namespace starprod
