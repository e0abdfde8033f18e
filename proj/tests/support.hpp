#pragma once

#include <vector>

#include "anomaly/lattice.hpp"
#include "anomaly/random.hpp"
#include "anomaly/torus.hpp"

namespace anomaly::testing {

inline IntMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.between(lo, hi);
  return m;
}

// Symmetric with even diagonal; entries bounded by `bound`.
inline IntMatrix random_even_symmetric(SplitMix64& rng, std::size_t n, long bound = 3) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2 * rng.between(-bound, bound);
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = rng.between(-bound, bound);
  }
  return m;
}

// Nondegenerate even symmetric matrix (resampled until det != 0).
inline IntMatrix random_even_lattice_gram(SplitMix64& rng, std::size_t n, long bound = 3) {
  for (;;) {
    IntMatrix m = random_even_symmetric(rng, n, bound);
    if (determinant(m) != 0) return m;
  }
}

// Positive-definite even Gram matrix: A^T A scaled by 2 plus small symmetric noise kept definite.
inline IntMatrix random_definite_even_gram(SplitMix64& rng, std::size_t n) {
  for (;;) {
    IntMatrix a = random_matrix(rng, n, n, -2, 2);
    IntMatrix g = 2 * (a.transpose() * a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const long e = rng.between(-1, 1);
        g(i, j) += e;
        g(j, i) += e;
      }
    if (is_positive_definite(g)) return g;
  }
}

inline TorusPoint random_point(SplitMix64& rng, std::size_t n) {
  return TorusPoint(sample_coordinates(rng, n, default_denominators()));
}

inline std::vector<TorusPoint> random_points(SplitMix64& rng, std::size_t n, std::size_t k) {
  std::vector<TorusPoint> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(random_point(rng, n));
  return v;
}

}  // namespace anomaly::testing
