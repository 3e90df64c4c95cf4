#pragma once

#include <vector>

namespace flatsym {

/// Gauss-Legendre rule mapped to [0, 1]; exact for polynomials of degree
/// <= 2 * order - 1.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_order from Chebyshev initial guesses.
QuadratureRule gauss_legendre_unit(int order);

} // namespace flatsym
