#pragma once

// Reference computations written independently of the library.

#include <complex>

#include <Eigen/Dense>

namespace oracle {

using CMat = Eigen::MatrixXcd;
inline const std::complex<double> I{0.0, 1.0};

/// Scaling and squaring with a 30-term Taylor series.
inline CMat expm(const CMat &a) {
  int squarings = 0;
  double norm = a.norm();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const CMat b = a / std::pow(2.0, squarings);
  CMat term = CMat::Identity(a.rows(), a.cols());
  CMat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s)
    sum = sum * sum;
  return sum;
}

inline CMat pauli(int k) {
  CMat s(2, 2);
  if (k == 1)
    s << 0, 1, 1, 0;
  else if (k == 2)
    s << 0, -I, I, 0;
  else
    s << 1, 0, 0, -1;
  return s;
}

/// e_k = -i sigma_k / 2: [e1, e2] = e3, <e_a, e_b> = delta_ab / 2.
inline CMat e(int k) { return -I * pauli(k) / 2.0; }

inline double inner(const CMat &a, const CMat &b) { return -(a * b).trace().real(); }

} // namespace oracle
