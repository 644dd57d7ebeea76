#pragma once

// Tracial states and product states on A_n.

#include <Eigen/Eigenvalues>

#include "element.hpp"

namespace ncgasket {

// Normalized trace of the ambient matrix algebra M_3^{⊗(n+1)}.
inline Complex trace_tau(const GasketElement& e) {
  return trace(e) / static_cast<double>(pow3(e.level() + 1));
}

inline Complex char_chi(const GasketElement& e, int j) { return e.xi(j); }

// Normalized trace of the block η_{m-1,j}; defined for 1 <= m <= level.
inline Complex trace_tau_mj(const GasketElement& e, int m, int j) {
  if (m < 1 || m > e.level())
    throw DomainError("trace index m=" + std::to_string(m) + " outside 1.." + std::to_string(e.level()));
  return e.block(m - 1, j).trace() / static_cast<double>(pow3(m - 1));
}

// A state ω(x) = Σ ω[p,q] x[p,q] on each tensor factor. Factors beyond the
// explicit prefix all use the tail functional, by default the compression e22*.
class ProductState {
 public:
  explicit ProductState(std::vector<Eigen::Matrix3cd> prefix, Eigen::Matrix3cd tail = e22_functional())
      : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (std::size_t i = 0; i < prefix_.size(); ++i) validate(prefix_[i], "factor " + std::to_string(i + 1));
    validate(tail_, "tail factor");
  }

  static Eigen::Matrix3cd e22_functional() {
    Eigen::Matrix3cd w = Eigen::Matrix3cd::Zero();
    w(1, 1) = 1.0;
    return w;
  }

  // 1-based factor position.
  const Eigen::Matrix3cd& factor(int f) const {
    if (f < 1) throw DomainError("factor position must be positive");
    return static_cast<std::size_t>(f) <= prefix_.size() ? prefix_[static_cast<std::size_t>(f - 1)] : tail_;
  }

  std::vector<Eigen::Matrix3cd> factors(int count) const {
    std::vector<Eigen::Matrix3cd> out;
    for (int f = 1; f <= count; ++f) out.push_back(factor(f));
    return out;
  }

 private:
  static void validate(const Eigen::Matrix3cd& w, const std::string& where) {
    if (std::abs(w.trace() - Complex(1.0)) > 1e-12) throw DomainError(where + " is not unital");
    if ((w - w.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError(where + " is not positive");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (w + w.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12) throw DomainError(where + " is not positive");
  }

  std::vector<Eigen::Matrix3cd> prefix_;
  Eigen::Matrix3cd tail_;
};

inline Complex eval_product_state(const GasketElement& e, const ProductState& omega) {
  const int n = e.level();
  // product of ω_f[2,2] for f in [from, n+1]
  auto tail22 = [&](int from) {
    Complex p = 1.0;
    for (int f = from; f <= n + 1; ++f) p *= omega.factor(f)(1, 1);
    return p;
  };
  Complex value = 0.0;
  for (int j = 1; j <= 3; ++j) value += e.xi(j) * omega.factor(1)(j - 1, j - 1) * tail22(2);
  for (int k = 0; k < n; ++k) {
    const auto head = omega.factors(k);
    const auto& wa = omega.factor(k + 1);
    const auto& wb = omega.factor(k + 2);
    const Complex rest = tail22(k + 3);
    for (int j = 1; j <= 3; ++j) {
      const int j2 = wrap_index(j + 2);
      const Complex support = wa(j - 1, j - 1) * wb(0, 0) + wa(j2 - 1, j2 - 1) * wb(2, 2);
      if (support == Complex(0.0) || rest == Complex(0.0)) continue;
      value += apply_product_functional(e.block(k, j), head) * support * rest;
    }
  }
  return value;
}

}  // namespace ncgasket
