#pragma once

#include <vector>

#include "calibra/grassmannian.hpp"

namespace calibra {

// Quadrature rule on a d-simplex in barycentric coordinates; weights sum to 1
// (multiply by the simplex volume).
struct SimplexRule {
  std::vector<Vec> barycentric;  // each of size d + 1
  std::vector<double> weights;
  int degree;                    // exact for polynomials of this total degree
};

// Grundmann-Moeller rule of the smallest odd degree >= `order`.
const SimplexRule& grundmann_moeller(int dim, int order);

}  // namespace calibra
