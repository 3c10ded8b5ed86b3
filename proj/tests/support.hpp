// Shared fixtures for the unit tests.
#pragma once

#include <random>

#include "qgp/linalg.hpp"

namespace qgp::test {

/// Full-rank density matrix with distinct eigenvalues from a fixed seed.
inline Operator random_density_matrix(Index dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  Operator a(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) a(i, j) = cd(normal(gen), normal(gen));
  Operator rho = a * a.adjoint() + 0.1 * identity(dim);
  return rho / rho.trace();
}

inline Operator random_hermitian(Index dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  Operator a(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) a(i, j) = cd(normal(gen), normal(gen));
  return hermitian_part(a);
}

}  // namespace qgp::test
