#pragma once

#include <cstdint>
#include <random>

#include "prolie/linalg.hpp"

namespace prolie {

using Rng = std::mt19937_64;

/// p/q with |p| <= num, 1 <= q <= den.
inline Rational random_rational(Rng& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> p(-num, num), q(1, den);
  Rational r(p(rng), q(rng));
  r.canonicalize();
  return r;
}

inline ExactVector random_vector(Rng& rng, Index n, int num = 5, int den = 4) {
  ExactVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_rational(rng, num, den);
  return v;
}

inline ExactMatrix random_matrix(Rng& rng, Index r, Index c, int num = 5, int den = 4) {
  ExactMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = random_rational(rng, num, den);
  return m;
}

}  // namespace prolie
