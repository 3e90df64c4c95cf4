#pragma once

// Rank and subspace helpers on real matrices. A singular value counts toward
// the rank when it exceeds rel_tol * max(sigma_max, 1).

#include <Eigen/Dense>

namespace flatsym {

inline constexpr double kRankTolerance = 1e-8;

/// Number of singular values above rel_tol * max(sigma_max, 1).
int numerical_rank(const Eigen::MatrixXd &m, double rel_tol = kRankTolerance);

/// Orthonormal basis (columns) of the null space.
Eigen::MatrixXd null_space(const Eigen::MatrixXd &m, double rel_tol = kRankTolerance);

/// Orthonormal basis (columns) of the column space.
Eigen::MatrixXd column_space(const Eigen::MatrixXd &m, double rel_tol = kRankTolerance);

/// Orthonormal basis of the orthogonal complement of span(sub) inside
/// span(space); `space` must have orthonormal columns.
Eigen::MatrixXd complement_within(const Eigen::MatrixXd &space, const Eigen::MatrixXd &sub,
                                  double rel_tol = kRankTolerance);

Eigen::VectorXd singular_values(const Eigen::MatrixXd &m);

/// Smallest singular value; +inf for an empty matrix.
double smallest_singular_value(const Eigen::MatrixXd &m);

} // namespace flatsym
