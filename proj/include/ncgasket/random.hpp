#pragma once

// Seeded sampling. Distributions are derived from raw mt19937_64 output so
// that streams are identical across standard library implementations.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>

#include "element.hpp"

namespace ncgasket {

inline constexpr std::uint64_t kDefaultSeed = 42;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }

  Complex complex() { return {symmetric(), symmetric()}; }

 private:
  std::mt19937_64 gen_;
};

// --seed wins, then NCGASKET_SEED, then the default.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed) {
  if (explicit_seed) return *explicit_seed;
  if (const char* env = std::getenv("NCGASKET_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("NCGASKET_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

inline ComplexMatrix random_matrix(Rng& rng, Index dim) {
  ComplexMatrix m(dim, dim);
  for (Index c = 0; c < dim; ++c)
    for (Index r = 0; r < dim; ++r) m(r, c) = rng.complex();
  return m;
}

inline ComplexMatrix random_hermitian_matrix(Rng& rng, Index dim) {
  const ComplexMatrix m = random_matrix(rng, dim);
  return 0.5 * (m + m.adjoint());
}

inline GasketElement random_element(Rng& rng, int n) {
  GasketElement e(n);
  for (int j = 1; j <= 3; ++j) e.set_xi(j, rng.complex());
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= 3; ++j) e.set_block(k, j, random_matrix(rng, pow3(k)));
  return e;
}

inline GasketElement random_hermitian_element(Rng& rng, int n) {
  GasketElement e(n);
  for (int j = 1; j <= 3; ++j) e.set_xi(j, rng.symmetric());
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= 3; ++j) e.set_block(k, j, random_hermitian_matrix(rng, pow3(k)));
  return e;
}

// Real diagonal element, i.e. a real function on the vertex set V_n.
inline GasketElement random_real_diagonal_element(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
  GasketElement e(n);
  auto draw = [&] { return lo + (hi - lo) * rng.uniform(); };
  for (int j = 1; j <= 3; ++j) e.set_xi(j, draw());
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= 3; ++j) {
      ComplexMatrix d = ComplexMatrix::Zero(pow3(k), pow3(k));
      for (Index i = 0; i < d.rows(); ++i) d(i, i) = draw();
      e.set_block(k, j, d);
    }
  return e;
}

}  // namespace ncgasket
