#include "flatsym/linalg.hpp"

#include <algorithm>
#include <limits>

namespace flatsym {

namespace {

int rank_from(const Eigen::VectorXd &sv, double rel_tol) {
  if (sv.size() == 0)
    return 0;
  // Relative to sigma_max, floored at unit scale so roundoff-sized matrices
  // have rank 0.
  const double cut = rel_tol * std::max(sv(0), 1.0);
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cut)
      ++r;
  return r;
}

} // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXd &m) {
  if (m.size() == 0)
    return {};
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

int numerical_rank(const Eigen::MatrixXd &m, double rel_tol) {
  return rank_from(singular_values(m), rel_tol);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd &m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0)
    return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - r);
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd &m, double rel_tol) {
  if (m.cols() == 0)
    return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd complement_within(const Eigen::MatrixXd &space, const Eigen::MatrixXd &sub,
                                  double rel_tol) {
  if (sub.cols() == 0)
    return space;
  // Coordinates of sub in the basis of space; the complement is the null space
  // of their transpose, mapped back.
  const Eigen::MatrixXd coords = space.transpose() * sub;
  return space * null_space(coords.transpose(), rel_tol);
}

double smallest_singular_value(const Eigen::MatrixXd &m) {
  if (m.size() == 0)
    return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd sv = singular_values(m);
  return sv(sv.size() - 1);
}

} // namespace flatsym
