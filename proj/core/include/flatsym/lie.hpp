#pragma once

// SU(n) and su(n) as dense complex matrices.
//
// Tangent vectors to the group are left-trivialized throughout: a vector at g
// is represented by xi in su(n) with curve t -> g exp(t xi).

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace flatsym {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Traceless anti-Hermitian n x n matrix.
class AlgebraVector {
public:
  AlgebraVector() = default;
  /// Projects onto su(n): (M - M*)/2 minus the trace part.
  explicit AlgebraVector(const CMatrix &m);

  static AlgebraVector zero(int n);

  int n() const { return static_cast<int>(m_.rows()); }
  const CMatrix &matrix() const { return m_; }
  double norm() const { return m_.norm(); }

  AlgebraVector &operator+=(const AlgebraVector &o);
  AlgebraVector &operator-=(const AlgebraVector &o);
  AlgebraVector &operator*=(double s);
  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector &b) { return a += b; }
  friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector &b) { return a -= b; }
  friend AlgebraVector operator*(double s, AlgebraVector a) { return a *= s; }
  friend AlgebraVector operator*(AlgebraVector a, double s) { return a *= s; }
  AlgebraVector operator-() const { return -1.0 * *this; }

private:
  struct Unchecked {};
  AlgebraVector(CMatrix m, Unchecked) : m_(std::move(m)) {}
  friend AlgebraVector bracket(const AlgebraVector &, const AlgebraVector &);
  friend class GroupPoint;

  CMatrix m_;
};

/// Special unitary n x n matrix.
class GroupPoint {
public:
  GroupPoint() = default;
  /// Re-orthonormalizes (polar factor) and corrects the determinant phase.
  explicit GroupPoint(const CMatrix &m);

  static GroupPoint identity(int n);

  int n() const { return static_cast<int>(m_.rows()); }
  const CMatrix &matrix() const { return m_; }

  GroupPoint inverse() const { return GroupPoint(m_.adjoint(), Unchecked{}); }
  friend GroupPoint operator*(const GroupPoint &a, const GroupPoint &b) {
    return GroupPoint(a.m_ * b.m_, Unchecked{});
  }
  GroupPoint &operator*=(const GroupPoint &o) {
    m_ = m_ * o.m_;
    return *this;
  }

  /// ||g g* - I|| and |det g - 1|.
  double unitarity_defect() const;
  double determinant_defect() const;

private:
  struct Unchecked {};
  GroupPoint(CMatrix m, Unchecked) : m_(std::move(m)) {}
  friend GroupPoint exp_map(const AlgebraVector &);
  friend std::vector<GroupPoint> center_elements(int);

  CMatrix m_;
};

class BranchCutError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// <a, b> = -Re tr(ab).
double inner(const AlgebraVector &a, const AlgebraVector &b);
AlgebraVector bracket(const AlgebraVector &a, const AlgebraVector &b);
AlgebraVector adjoint(const GroupPoint &g, const AlgebraVector &a);

GroupPoint exp_map(const AlgebraVector &a);

/// Principal logarithm; throws BranchCutError when an eigenvalue lies within
/// `cut_tolerance` of -1.
AlgebraVector log_map(const GroupPoint &g, double cut_tolerance = 1e-8);

/// exp(L)^{-1} d/dt exp(L + t z) at t = 0, i.e. sum_k (-ad_L)^k z / (k+1)!.
AlgebraVector dexp_left(const AlgebraVector &lambda, const AlgebraVector &zeta);

/// Matrix of z -> dexp_left(L, z) in the orthonormal su(n) coordinates.
RMatrix dexp_left_matrix(const AlgebraVector &lambda);

/// Haar-distributed sample (QR of a complex Ginibre matrix, phase corrected).
GroupPoint random_group_point(int n, Rng &rng);
GroupPoint random_group_point(int n, std::uint64_t seed);

/// Standard-normal coordinates in the orthonormal basis, scaled.
AlgebraVector random_algebra_vector(int n, Rng &rng, double scale = 1.0);

/// e^{2 pi i k / n} I for k = 0..n-1.
std::vector<GroupPoint> center_elements(int n);

inline int algebra_dim(int n) { return n * n - 1; }

/// Basis of su(n) orthonormal for inner(): off-diagonal (E_jk - E_kj)/sqrt2,
/// i(E_jk + E_kj)/sqrt2, then diagonal generalized Gell-Mann elements.
const std::vector<AlgebraVector> &algebra_basis(int n);

RVector to_coords(const AlgebraVector &a);
AlgebraVector from_coords(int n, const Eigen::Ref<const RVector> &c);

/// Matrix of Ad_g in orthonormal coordinates.
RMatrix adjoint_matrix(const GroupPoint &g);

/// Deterministic per-index seed derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace flatsym
