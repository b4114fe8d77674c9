#pragma once

#include "ncval/rng.hpp"
#include "ncval/state.hpp"

namespace ncval {

// Ginibre ensemble: independent standard complex Gaussian entries.
inline Operator random_operator(CounterRng& rng, Eigen::Index dim) {
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = Complex(rng.next_normal(), rng.next_normal());
    }
  }
  return Operator(std::move(m));
}

// GUE-style Hermitian draw: (G + G^dag)/2 of a Ginibre sample.
inline Operator random_hermitian(CounterRng& rng, Eigen::Index dim) {
  const Operator g = random_operator(rng, dim);
  return Operator(0.5 * (g.matrix() + g.matrix().adjoint()));
}

// Haar-uniform ray: normalized complex Gaussian vector, gauge-fixed.
inline ProjectiveState random_state(CounterRng& rng, Eigen::Index dim) {
  Vector v(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    v[n] = Complex(rng.next_normal(), rng.next_normal());
  }
  return gauge_fix(v);
}

// Random ray supported on the lowest dim - zeroed_top levels: safe from
// truncation effects that live in the top rows.
inline ProjectiveState random_interior_state(CounterRng& rng, Eigen::Index dim,
                                             Eigen::Index zeroed_top) {
  Vector v = Vector::Zero(dim);
  for (Eigen::Index n = 0; n + zeroed_top < dim; ++n) {
    v[n] = Complex(rng.next_normal(), rng.next_normal());
  }
  return gauge_fix(v);
}

}  // namespace ncval
