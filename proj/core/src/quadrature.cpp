#include "flatsym/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flatsym {

QuadratureRule gauss_legendre_unit(int order) {
  if (order < 1)
    throw std::invalid_argument("gauss_legendre_unit: order must be positive");
  QuadratureRule rule;
  rule.points.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_order(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1].
    rule.points[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 0.5 * w;
    rule.points[order - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

} // namespace flatsym
