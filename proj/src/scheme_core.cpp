#include "starprod/scheme_core.hpp"

#include "starprod/errors.hpp"

#include <algorithm>
#include <cmath>

namespace starprod {

namespace {

void require_dim(const ComplexMatrix& m, Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                            std::to_string(dim) + " matrix, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
  }
}

void require_length(const SymbolVector& f, Index n, const char* what) {
  if (f.size() != n) {
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(n) +
                            ", got " + std::to_string(f.size()));
  }
}

// Families that play the dequantizer and quantizer roles for a variant.
struct Roles {
  const std::vector<ComplexMatrix>& deq;
  const std::vector<ComplexMatrix>& quant;
};

Roles roles_for(const Scheme& s, const KernelVariant& v) {
  if (v.dual_roles()) return {s.quantizers(), s.dequantizers()};
  return {s.dequantizers(), s.quantizers()};
}

}  // namespace

ComplexMatrix pauli(int k) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (k) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -i, i, 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default: throw InvalidArgument("pauli index must be in 0..3");
  }
  return m;
}

ComplexMatrix matrix_unit(int dim, int row, int col) {
  if (row < 1 || row > dim || col < 1 || col > dim) throw InvalidArgument("matrix unit index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row - 1, col - 1) = 1.0;
  return m;
}

PairingForm PairingForm::scaled_trace(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidArgument("pairing scale must be finite and nonzero");
  return PairingForm(Kind::ScaledTrace, c, {});
}

PairingForm PairingForm::scaled_imag_trace(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidArgument("pairing scale must be finite and nonzero");
  return PairingForm(Kind::ScaledImagTrace, c, {});
}

PairingForm PairingForm::j_twisted_trace(ComplexMatrix j) {
  if (j.rows() != j.cols() || j.rows() == 0) throw InvalidArgument("twist matrix J must be square");
  Eigen::FullPivLU<ComplexMatrix> lu(j);
  if (!lu.isInvertible()) throw InvalidArgument("twist matrix J must be invertible");
  return PairingForm(Kind::JTwistedTrace, 1.0, std::move(j));
}

Complex PairingForm::operator()(const ComplexMatrix& a, const ComplexMatrix& b) const {
  switch (kind_) {
    case Kind::ScaledTrace:
      return scale_ * (a.adjoint() * b).trace();
    case Kind::ScaledImagTrace:
      return {scale_ * (a.adjoint() * b.adjoint()).trace().imag(), 0.0};
    case Kind::JTwistedTrace:
      return (a.adjoint() * twist_ * b * twist_).trace();
  }
  return {};
}

std::string PairingForm::kind_name() const {
  switch (kind_) {
    case Kind::ScaledTrace: return "scaled-trace";
    case Kind::ScaledImagTrace: return "scaled-imag-trace";
    case Kind::JTwistedTrace: return "J-twisted-trace";
  }
  return {};
}

Scheme::Scheme(std::string label, PairingForm pairing, std::vector<ComplexMatrix> quantizers,
               std::vector<ComplexMatrix> dequantizers)
    : label_(std::move(label)),
      pairing_(std::move(pairing)),
      quantizers_(std::move(quantizers)),
      dequantizers_(std::move(dequantizers)) {
  if (quantizers_.empty()) throw InvalidScheme("scheme needs at least one quantizer");
  if (quantizers_.size() != dequantizers_.size()) {
    throw InvalidScheme("scheme has " + std::to_string(quantizers_.size()) + " quantizers but " +
                        std::to_string(dequantizers_.size()) + " dequantizers");
  }
  const Index d = quantizers_.front().rows();
  if (d < 1) throw InvalidScheme("matrix dimension must be at least 1");
  auto check = [d](const ComplexMatrix& m, const char* role, std::size_t x) {
    if (m.rows() != d || m.cols() != d) {
      throw InvalidScheme(std::string(role) + " " + std::to_string(x) + " is " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                          std::to_string(d) + "x" + std::to_string(d));
    }
    if (!m.allFinite()) throw InvalidScheme(std::string(role) + " " + std::to_string(x) + " has non-finite entries");
  };
  for (std::size_t x = 0; x < quantizers_.size(); ++x) {
    check(quantizers_[x], "quantizer", x);
    check(dequantizers_[x], "dequantizer", x);
  }
  if (pairing_.kind() == PairingForm::Kind::JTwistedTrace && pairing_.twist().rows() != d) {
    throw InvalidScheme("twist matrix J does not match the scheme dimension");
  }
}

std::string KernelVariant::name() const {
  switch (kind_) {
    case Kind::Plain: return "plain";
    case Kind::Dual: return "dual";
    case Kind::KDeformed: return "k_deformed";
    case Kind::KDeformedDual: return "k_deformed_dual";
  }
  return {};
}

double pairing_residual(const Scheme& s) {
  const Index n = s.size();
  double worst = 0.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Complex expected = x == y ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(s.pairing()(s.dequantizer(x), s.quantizer(y)) - expected));
    }
  }
  return worst;
}

SymbolVector symbol_of(const Scheme& s, const ComplexMatrix& a) {
  require_dim(a, s.dim(), "symbol_of");
  SymbolVector f(s.size());
  for (Index x = 0; x < s.size(); ++x) f(x) = s.pairing()(s.dequantizer(x), a);
  return f;
}

ComplexMatrix reconstruct(const Scheme& s, const SymbolVector& f) {
  require_length(f, s.size(), "reconstruct");
  ComplexMatrix a = ComplexMatrix::Zero(s.dim(), s.dim());
  for (Index x = 0; x < s.size(); ++x) a += f(x) * s.quantizer(x);
  return a;
}

StarKernel star_kernel(const Scheme& s, const KernelVariant& variant) {
  if (variant.deformed()) require_dim(variant.deformation(), s.dim(), "star_kernel deformation");
  const Roles r = roles_for(s, variant);
  const Index n = s.size();
  StarKernel k(n);
  for (Index x1 = 0; x1 < n; ++x1) {
    const ComplexMatrix& left = r.quant[static_cast<std::size_t>(x1)];
    const ComplexMatrix lk = variant.deformed() ? ComplexMatrix(left * variant.deformation()) : left;
    for (Index x2 = 0; x2 < n; ++x2) {
      const ComplexMatrix prod = lk * r.quant[static_cast<std::size_t>(x2)];
      for (Index x = 0; x < n; ++x) k(x1, x2, x) = s.pairing()(r.deq[static_cast<std::size_t>(x)], prod);
    }
  }
  return k;
}

SymbolVector star_multiply(const StarKernel& k, const SymbolVector& fa, const SymbolVector& fb) {
  const Index n = k.size();
  require_length(fa, n, "star_multiply left factor");
  require_length(fb, n, "star_multiply right factor");
  SymbolVector f = SymbolVector::Zero(n);
  for (Index x1 = 0; x1 < n; ++x1) {
    if (fa(x1) == 0.0) continue;
    for (Index x2 = 0; x2 < n; ++x2) {
      const Complex w = fa(x1) * fb(x2);
      for (Index x = 0; x < n; ++x) f(x) += k(x1, x2, x) * w;
    }
  }
  return f;
}

double associativity_residual(const StarKernel& k) {
  const Index n = k.size();
  double worst = 0.0;
  for (Index x1 = 0; x1 < n; ++x1)
    for (Index x2 = 0; x2 < n; ++x2)
      for (Index x3 = 0; x3 < n; ++x3)
        for (Index x4 = 0; x4 < n; ++x4) {
          Complex lhs = 0.0;
          Complex rhs = 0.0;
          for (Index y = 0; y < n; ++y) {
            lhs += k(x1, x2, y) * k(y, x3, x4);
            rhs += k(x2, x3, y) * k(x1, y, x4);
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

Scheme dual_scheme(const Scheme& s) {
  return Scheme(s.label() + "^d", s.pairing(), s.dequantizers(), s.quantizers());
}

Scheme scale_scheme(const Scheme& s, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw InvalidArgument("scale factor must be finite and nonzero");
  std::vector<ComplexMatrix> d;
  std::vector<ComplexMatrix> u;
  for (Index x = 0; x < s.size(); ++x) {
    d.emplace_back(s.quantizer(x) / lambda);
    u.emplace_back(s.dequantizer(x) * lambda);
  }
  return Scheme(s.label(), s.pairing(), std::move(d), std::move(u));
}

double kernel_scaling_exponent(const Scheme& s, double lambda) {
  if (std::abs(std::abs(lambda) - 1.0) < 1e-12) throw InvalidArgument("scaling exponent needs |lambda| != 1");
  const StarKernel base = star_kernel(s, KernelVariant::plain());
  const StarKernel scaled = star_kernel(scale_scheme(s, lambda), KernelVariant::plain());
  const auto& v = base.values();
  const auto it = std::max_element(v.begin(), v.end(),
                                   [](const Complex& a, const Complex& b) { return std::abs(a) < std::abs(b); });
  if (it == v.end() || std::abs(*it) == 0.0) throw InvalidArgument("plain kernel vanishes identically");
  const auto idx = static_cast<std::size_t>(it - v.begin());
  return std::log(std::abs(scaled.values()[idx]) / std::abs(*it)) / std::log(std::abs(lambda));
}

Intertwiners intertwiners(const Scheme& s1, const Scheme& s2) {
  if (s1.dim() != s2.dim() || s1.size() != s2.size()) {
    throw DimensionMismatch("intertwiners need schemes of equal size and dimension");
  }
  const Index n = s1.size();
  Intertwiners t{ComplexMatrix(n, n), ComplexMatrix(n, n)};
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      t.forward(x, y) = s1.pairing()(s2.dequantizer(y), s1.quantizer(x));
      t.backward(y, x) = s1.pairing()(s1.dequantizer(x), s2.quantizer(y));
    }
  }
  return t;
}

SymbolVector transport_forward(const Intertwiners& t, const SymbolVector& f1) {
  require_length(f1, t.forward.rows(), "transport_forward");
  return t.forward.transpose() * f1;
}

SymbolVector transport_backward(const Intertwiners& t, const SymbolVector& f2) {
  require_length(f2, t.backward.rows(), "transport_backward");
  return t.backward.transpose() * f2;
}

SymbolVector dual_symbol(const Scheme& s, const ComplexMatrix& a) {
  require_dim(a, s.dim(), "dual_symbol");
  SymbolVector f(s.size());
  for (Index x = 0; x < s.size(); ++x) f(x) = s.pairing()(s.quantizer(x), a);
  return f;
}

ComplexMatrix reconstruct_dual(const Scheme& s, const SymbolVector& fd) {
  require_length(fd, s.size(), "reconstruct_dual");
  ComplexMatrix a = ComplexMatrix::Zero(s.dim(), s.dim());
  for (Index x = 0; x < s.size(); ++x) a += fd(x) * s.dequantizer(x);
  return a;
}

Complex mean_value(const Scheme& s, const ComplexMatrix& rho, const ComplexMatrix& a) {
  require_dim(rho, s.dim(), "mean_value state");
  const SymbolVector fd = dual_symbol(s, a);
  Complex total = 0.0;
  for (Index x = 0; x < s.size(); ++x) total += (rho * s.dequantizer(x)).trace() * fd(x);
  return total;
}

double product_closure_residual(const Scheme& s, const KernelVariant& variant) {
  if (variant.deformed()) require_dim(variant.deformation(), s.dim(), "product_closure_residual deformation");
  const Scheme view = variant.dual_roles() ? dual_scheme(s) : s;
  double worst = 0.0;
  for (Index x1 = 0; x1 < view.size(); ++x1) {
    for (Index x2 = 0; x2 < view.size(); ++x2) {
      const ComplexMatrix prod = variant.deformed()
                                     ? ComplexMatrix(view.quantizer(x1) * variant.deformation() * view.quantizer(x2))
                                     : ComplexMatrix(view.quantizer(x1) * view.quantizer(x2));
      const ComplexMatrix back = reconstruct(view, symbol_of(view, prod));
      worst = std::max(worst, (prod - back).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Scheme builtin_scheme(std::string_view name) {
  const Complex i(0.0, 1.0);
  if (name == "u2") {
    std::vector<ComplexMatrix> u;
    for (int k = 0; k < 4; ++k) u.emplace_back(0.5 * pauli(k));
    return Scheme("u2", PairingForm::scaled_trace(2.0), u, u);
  }
  if (name == "su2sb2") {
    // D(j) = -(i/2) sigma_j, U(j) = (sigma_j + i eps_{jk3} sigma_k) / 2
    std::vector<ComplexMatrix> d;
    std::vector<ComplexMatrix> u;
    for (int j = 1; j <= 3; ++j) d.emplace_back(-0.5 * i * pauli(j));
    u.emplace_back(0.5 * (pauli(1) + i * pauli(2)));
    u.emplace_back(0.5 * (pauli(2) - i * pauli(1)));
    u.emplace_back(0.5 * pauli(3));
    return Scheme("su2sb2", PairingForm::scaled_imag_trace(2.0), d, u);
  }
  if (name == "gl2half") {
    ComplexMatrix j(2, 2);
    j << 0.0, 1.0, 1.0, 0.0;
    std::vector<ComplexMatrix> d{matrix_unit(2, 2, 2), matrix_unit(2, 2, 1)};
    std::vector<ComplexMatrix> u{matrix_unit(2, 1, 1), matrix_unit(2, 1, 2)};
    return Scheme("gl2half", PairingForm::j_twisted_trace(j), d, u);
  }
  throw UnknownScheme(std::string(name));
}

std::vector<std::string> builtin_scheme_names() { return {"u2", "su2sb2", "gl2half"}; }

}  // namespace starprod
