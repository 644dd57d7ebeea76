#pragma once

// The vertex sets V_n of the classical gasket and functions on them.
//
// A vertex of V_n has one or two addresses of length n+1. The address
// d_1...d_{n+1} denotes W_{d_1} ∘ ... ∘ W_{d_n}(P_{d_{n+1}}) where W_j fixes P_j,
// sends P_2 to P_j, P_1 to the midpoint of P_j P_{j-1} and P_3 to the midpoint
// of P_j P_{j+1}. Outer vertices are j 2^n. Inner vertices are
// σ j 1 2^{k-1} = σ (j+2) 3 2^{k-1} with |σ| = n − k.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "energy.hpp"
#include "extension.hpp"

namespace ncgasket {

struct Point2 {
  double x;
  double y;
};

struct VertexLabel {
  enum class Kind { Outer, Inner };

  Kind kind = Kind::Outer;
  int level = 0;
  int j = 1;
  int generation = 0;  // k for inner vertices, 0 for outer ones
  Word prefix;         // σ, of length level − generation

  static VertexLabel outer(int n, int j) {
    require_letter(j, "outer vertex index");
    if (n < 0) throw DomainError("level must be nonnegative");
    return {Kind::Outer, n, j, 0, Word{}};
  }

  static VertexLabel inner(const Word& sigma, int j, int k) {
    require_letter(j, "inner vertex index");
    if (k < 1) throw DomainError("inner vertex generation must be >= 1");
    return {Kind::Inner, sigma.size() + k, j, k, sigma};
  }

  // Both addresses; the first is canonical (lexicographically smaller).
  std::vector<Word> addresses() const {
    if (kind == Kind::Outer) return {Word::repeated(j, 1) + Word::repeated(2, level)};
    Word a = prefix + Word({j, 1}) + Word::repeated(2, generation - 1);
    Word b = prefix + Word({wrap_index(j + 2), 3}) + Word::repeated(2, generation - 1);
    if (b < a) std::swap(a, b);
    return {a, b};
  }

  Word address() const { return addresses().front(); }
  std::string str() const { return address().str(); }

  bool operator==(const VertexLabel& o) const { return level == o.level && address() == o.address(); }
  bool operator<(const VertexLabel& o) const {
    return level != o.level ? level < o.level : address() < o.address();
  }
};

inline Index vertex_count(int n) { return (pow3(n + 1) + 3) / 2; }

inline VertexLabel label_from_address(const Word& w) {
  if (w.empty()) throw DomainError("an address has at least one letter");
  const int n = w.size() - 1;
  int p = 0;
  while (p < n && w[n - p] == 2) ++p;
  if (p >= n) {
    return VertexLabel::outer(n, w[0]);
  }
  const int c = w[n - p];
  if (c == 2) throw DomainError("malformed address");
  if (c != 1 && c != 3) throw DomainError("address " + w.str() + " is not a vertex address");
  const int m = w[n - p - 1];
  const int j = c == 1 ? m : wrap_index(m + 1);
  return VertexLabel::inner(w.prefix(n - p - 1), j, p + 1);
}

inline VertexLabel parse_label(const std::string& s) { return label_from_address(Word::from_string(s)); }

inline std::vector<VertexLabel> enumerate_vertices(int n) {
  if (n < 0) throw DomainError("level must be nonnegative");
  std::vector<VertexLabel> out;
  for (int j = 1; j <= 3; ++j) out.push_back(VertexLabel::outer(n, j));
  for (int k = 1; k <= n; ++k)
    for (Index s = 0; s < pow3(n - k); ++s)
      for (int j = 1; j <= 3; ++j) out.push_back(VertexLabel::inner(Word::from_index(s, n - k), j, k));
  return out;
}

inline Point2 root_vertex(int q) {
  require_letter(q, "root vertex");
  switch (q) {
    case 1:
      return {0.0, 0.0};
    case 2:
      return {1.0, 0.0};
    default:
      return {0.5, std::sqrt(3.0) / 2.0};
  }
}

// Barycentric image of a word; W_j acts linearly on barycentric coordinates.
inline Eigen::Vector3d barycentric_of_address(const Word& w) {
  if (w.empty()) throw DomainError("an address has at least one letter");
  Eigen::Vector3d v = Eigen::Vector3d::Unit(w[w.size() - 1] - 1);
  for (int i = w.size() - 2; i >= 0; --i) {
    const int j = w[i];
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(j - 1, 1) = 1.0;
    m(j - 1, 0) = 0.5;
    m(wrap_index(j - 1) - 1, 0) = 0.5;
    m(j - 1, 2) = 0.5;
    m(wrap_index(j + 1) - 1, 2) = 0.5;
    v = m * v;
  }
  return v;
}

inline Point2 point_of_address(const Word& w) {
  const Eigen::Vector3d b = barycentric_of_address(w);
  Point2 p{0.0, 0.0};
  for (int q = 1; q <= 3; ++q) {
    p.x += b(q - 1) * root_vertex(q).x;
    p.y += b(q - 1) * root_vertex(q).y;
  }
  return p;
}

inline Point2 label_to_point(const VertexLabel& label) {
  const auto addrs = label.addresses();
  const Point2 p = point_of_address(addrs.front());
  for (const auto& a : addrs) {
    const Point2 r = point_of_address(a);
    if (std::abs(r.x - p.x) > 1e-14 || std::abs(r.y - p.y) > 1e-14)
      throw Error("addresses of vertex " + label.str() + " resolve to different points");
  }
  return p;
}

// Number of levels the vertex has already existed before level n.
inline int vertex_age(const VertexLabel& label) {
  return label.kind == VertexLabel::Kind::Outer ? label.level : label.generation - 1;
}

inline VertexLabel relabel_in(const VertexLabel& label, int m) {
  if (m < label.level) throw DomainError("cannot relabel into a coarser level");
  VertexLabel r = label;
  r.level = m;
  if (r.kind == VertexLabel::Kind::Inner) r.generation += m - label.level;
  return r;
}

// The same vertex seen in V_{n-1}, if it already existed there.
inline std::optional<VertexLabel> restrict_label(const VertexLabel& label) {
  if (label.level < 1) throw DomainError("cannot restrict a level-0 label");
  if (vertex_age(label) == 0) return std::nullopt;
  VertexLabel r = label;
  r.level -= 1;
  if (r.kind == VertexLabel::Kind::Inner) r.generation -= 1;
  return r;
}

class ClassicalFunction {
 public:
  explicit ClassicalFunction(int level = 0) : level_(level) {
    for (const auto& v : enumerate_vertices(level)) values_[v.address()] = 0.0;
  }

  int level() const noexcept { return level_; }

  Complex operator()(const VertexLabel& v) const { return values_.at(key(v)); }
  Complex at_address(const Word& w) const { return (*this)(label_from_address(w)); }
  void set(const VertexLabel& v, Complex value) { values_.at(key(v)) = value; }

  const std::map<Word, Complex>& values() const noexcept { return values_; }

 private:
  Word key(const VertexLabel& v) const {
    if (v.level != level_) throw DomainError("vertex label level does not match the function level");
    return v.address();
  }

  int level_;
  std::map<Word, Complex> values_;  // keyed by canonical address
};

// Ordered level-n edges σp → σq, p ≠ q, as addresses.
inline std::vector<std::pair<Word, Word>> enumerate_edges(int n) {
  std::vector<std::pair<Word, Word>> out;
  for (Index s = 0; s < pow3(n); ++s) {
    const Word sigma = Word::from_index(s, n);
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q)
        if (p != q) out.emplace_back(sigma.appended(p), sigma.appended(q));
  }
  return out;
}

inline double classical_energy(const ClassicalFunction& f) {
  double e = 0.0;
  for (const auto& [a, b] : enumerate_edges(f.level())) e += std::norm(f.at_address(a) - f.at_address(b));
  return e;
}

inline double classical_osc(const ClassicalFunction& f) {
  double best = 0.0;
  for (const auto& [a, b] : enumerate_edges(f.level())) best = std::max(best, std::abs(f.at_address(a) - f.at_address(b)));
  return best;
}

// Keeps old values; each new vertex σ j 1 (midpoint of corners j and j−1 of
// cell σ) gets (1−t)(a_j + a_{j−1}) + (2t−1) a_{j+1}.
inline ClassicalFunction classical_harmonic_step(const ClassicalFunction& f, double t = kHarmonicT) {
  require_extension_parameter(t);
  const int n = f.level();
  ClassicalFunction g(n + 1);
  for (const auto& v : enumerate_vertices(n + 1)) {
    if (auto old = restrict_label(v)) {
      g.set(v, f(*old));
      continue;
    }
    std::array<Complex, 3> a;
    for (int q = 1; q <= 3; ++q) a[static_cast<std::size_t>(q - 1)] = f.at_address(v.prefix.appended(q));
    const int j = v.j;
    g.set(v, (1.0 - t) * (a[static_cast<std::size_t>(j - 1)] + a[static_cast<std::size_t>(wrap_index(j - 1) - 1)]) +
                 (2.0 * t - 1.0) * a[static_cast<std::size_t>(wrap_index(j + 1) - 1)]);
  }
  return g;
}

inline ClassicalFunction classical_restrict(const ClassicalFunction& f) {
  if (f.level() < 1) throw DomainError("cannot restrict a level-0 function");
  ClassicalFunction g(f.level() - 1);
  for (const auto& v : enumerate_vertices(f.level() - 1)) g.set(v, f(relabel_in(v, f.level())));
  return g;
}

// Diagonal embedding C(V_n) → A_n: ξ_j = f(j 2^n) and the diagonal of
// η_{n-k, j} lists f(σ j 1 2^{k-1}) over σ.
inline GasketElement to_element(const ClassicalFunction& f) {
  const int n = f.level();
  GasketElement e(n);
  for (int j = 1; j <= 3; ++j) e.set_xi(j, f(VertexLabel::outer(n, j)));
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= 3; ++j) {
      ComplexMatrix d = ComplexMatrix::Zero(pow3(n - k), pow3(n - k));
      for (Index s = 0; s < d.rows(); ++s) d(s, s) = f(VertexLabel::inner(Word::from_index(s, n - k), j, k));
      e.set_block(n - k, j, d);
    }
  return e;
}

inline ClassicalFunction from_element(const GasketElement& e) {
  if (!is_classical(e)) throw DomainError("element is not in the diagonal subalgebra");
  const int n = e.level();
  ClassicalFunction f(n);
  for (int j = 1; j <= 3; ++j) f.set(VertexLabel::outer(n, j), e.xi(j));
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= 3; ++j) {
      const auto& d = e.block(n - k, j);
      for (Index s = 0; s < d.rows(); ++s) f.set(VertexLabel::inner(Word::from_index(s, n - k), j, k), d(s, s));
    }
  return f;
}

inline ClassicalFunction indicator(const VertexLabel& v) {
  ClassicalFunction f(v.level);
  f.set(v, 1.0);
  return f;
}

// Mass of the cylinder set of a word for the self-similar measure with the
// given weights.
inline double selfsimilar_measure(const Word& prefix, const std::array<double, 3>& weights = {1.0 / 3, 1.0 / 3,
                                                                                             1.0 / 3}) {
  const double total = weights[0] + weights[1] + weights[2];
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("measure weights must sum to 1");
  for (double w : weights)
    if (w < 0.0) throw DomainError("measure weights must be nonnegative");
  double m = 1.0;
  for (int d : prefix.letters()) m *= weights[static_cast<std::size_t>(d - 1)];
  return m;
}

}  // namespace ncgasket
