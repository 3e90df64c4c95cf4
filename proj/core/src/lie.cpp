#include "flatsym/lie.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace flatsym {

namespace {

void require_same_n(const AlgebraVector &a, const AlgebraVector &b) {
  if (a.n() != b.n())
    throw std::invalid_argument("su(n) dimension mismatch");
}

CMatrix project_su(const CMatrix &m) {
  CMatrix a = 0.5 * (m - m.adjoint());
  const Complex tr = a.trace() / static_cast<double>(m.rows());
  a.diagonal().array() -= tr;
  return a;
}

} // namespace

// --- AlgebraVector ----------------------------------------------------------

AlgebraVector::AlgebraVector(const CMatrix &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("AlgebraVector: matrix must be square");
  m_ = project_su(m);
}

AlgebraVector AlgebraVector::zero(int n) { return AlgebraVector(CMatrix::Zero(n, n), Unchecked{}); }

AlgebraVector &AlgebraVector::operator+=(const AlgebraVector &o) {
  require_same_n(*this, o);
  m_ += o.m_;
  return *this;
}

AlgebraVector &AlgebraVector::operator-=(const AlgebraVector &o) {
  require_same_n(*this, o);
  m_ -= o.m_;
  return *this;
}

AlgebraVector &AlgebraVector::operator*=(double s) {
  m_ *= s;
  return *this;
}

// --- GroupPoint -------------------------------------------------------------

GroupPoint::GroupPoint(const CMatrix &m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("GroupPoint: matrix must be square and non-empty");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  const Complex det = u.determinant();
  const double n = static_cast<double>(m.rows());
  u *= std::exp(Complex(0.0, -std::arg(det) / n));
  m_ = std::move(u);
}

GroupPoint GroupPoint::identity(int n) { return GroupPoint(CMatrix::Identity(n, n), Unchecked{}); }

double GroupPoint::unitarity_defect() const {
  return (m_ * m_.adjoint() - CMatrix::Identity(n(), n())).norm();
}

double GroupPoint::determinant_defect() const { return std::abs(m_.determinant() - 1.0); }

// --- algebra operations ---------------------------------------------------

double inner(const AlgebraVector &a, const AlgebraVector &b) {
  require_same_n(a, b);
  // -Re tr(ab) without forming the product.
  return -(a.matrix().transpose().cwiseProduct(b.matrix())).sum().real();
}

AlgebraVector bracket(const AlgebraVector &a, const AlgebraVector &b) {
  require_same_n(a, b);
  return AlgebraVector(a.m_ * b.m_ - b.m_ * a.m_, AlgebraVector::Unchecked{});
}

AlgebraVector adjoint(const GroupPoint &g, const AlgebraVector &a) {
  if (g.n() != a.n())
    throw std::invalid_argument("adjoint: dimension mismatch");
  return AlgebraVector(g.matrix() * a.matrix() * g.matrix().adjoint());
}

GroupPoint exp_map(const AlgebraVector &a) {
  // a = iH with H Hermitian; exp(a) = V diag(e^{i d}) V*.
  const CMatrix h = Complex(0.0, -1.0) * a.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const auto &v = es.eigenvectors();
  Eigen::VectorXcd phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
  return GroupPoint(v * phases.asDiagonal() * v.adjoint(), GroupPoint::Unchecked{});
}

AlgebraVector log_map(const GroupPoint &g, double cut_tolerance) {
  const int n = g.n();
  Eigen::ComplexSchur<CMatrix> schur(g.matrix());
  const CMatrix &q = schur.matrixU();
  Eigen::VectorXd angles(n);
  for (int k = 0; k < n; ++k) {
    const Complex lambda = schur.matrixT()(k, k);
    if (std::abs(lambda + 1.0) < cut_tolerance)
      throw BranchCutError("log_map: eigenvalue within " + std::to_string(cut_tolerance) +
                           " of -1 (branch cut)");
    angles(k) = std::arg(lambda);
  }
  // Angles of an SU(n) element sum to 2 pi m; move the ones nearest the cut
  // across it until the sum vanishes.
  const double two_pi = 2.0 * std::numbers::pi;
  long excess = std::lround(angles.sum() / two_pi);
  while (excess != 0) {
    Eigen::Index k;
    if (excess > 0) {
      angles.maxCoeff(&k);
      angles(k) -= two_pi;
      --excess;
    } else {
      angles.minCoeff(&k);
      angles(k) += two_pi;
      ++excess;
    }
  }
  Eigen::VectorXcd diag = Complex(0.0, 1.0) * angles.cast<Complex>();
  return AlgebraVector(q * diag.asDiagonal() * q.adjoint());
}

AlgebraVector dexp_left(const AlgebraVector &lambda, const AlgebraVector &zeta) {
  require_same_n(lambda, zeta);
  const CMatrix &l = lambda.matrix();
  CMatrix term = zeta.matrix();
  CMatrix sum = term;
  const double floor = 1e-17 * (zeta.norm() + 1e-300);
  // term_k = (-ad_L)^k z / (k+1)!; the remainder after a term below `floor`
  // is dominated geometrically once k exceeds ||ad_L||.
  const double ad_bound = 2.0 * l.norm();
  for (int k = 1; k < 400; ++k) {
    term = (term * l - l * term) / static_cast<double>(k + 1);
    sum += term;
    if (term.norm() < floor && k > ad_bound)
      break;
  }
  return AlgebraVector(sum);
}

RMatrix dexp_left_matrix(const AlgebraVector &lambda) {
  const auto &basis = algebra_basis(lambda.n());
  const int d = static_cast<int>(basis.size());
  RMatrix m(d, d);
  for (int k = 0; k < d; ++k)
    m.col(k) = to_coords(dexp_left(lambda, basis[k]));
  return m;
}

// --- sampling -------------------------------------------------------------

GroupPoint random_group_point(int n, Rng &rng) {
  if (n < 1)
    throw std::invalid_argument("random_group_point: n must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = rmat(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
  }
  return GroupPoint(q);
}

GroupPoint random_group_point(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_group_point(n, rng);
}

AlgebraVector random_algebra_vector(int n, Rng &rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector c(algebra_dim(n));
  for (auto &x : c)
    x = scale * normal(rng);
  return from_coords(n, c);
}

std::vector<GroupPoint> center_elements(int n) {
  std::vector<GroupPoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Complex phase = k == 0 ? Complex(1.0) : std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    out.push_back(GroupPoint(phase * CMatrix::Identity(n, n), GroupPoint::Unchecked{}));
  }
  return out;
}

// --- coordinates ----------------------------------------------------------

const std::vector<AlgebraVector> &algebra_basis(int n) {
  constexpr int max_n = 8;
  if (n < 1 || n > max_n)
    throw std::out_of_range("algebra_basis: n outside 1..8");
  static std::array<std::vector<AlgebraVector>, max_n + 1> cache;
  static std::array<std::once_flag, max_n + 1> flags;
  std::call_once(flags[n], [n] {
    auto &basis = cache[n];
    const double s = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        CMatrix a = CMatrix::Zero(n, n);
        a(j, k) = s;
        a(k, j) = -s;
        basis.emplace_back(a);
        CMatrix b = CMatrix::Zero(n, n);
        b(j, k) = Complex(0.0, s);
        b(k, j) = Complex(0.0, s);
        basis.emplace_back(b);
      }
    for (int m = 1; m < n; ++m) {
      CMatrix d = CMatrix::Zero(n, n);
      const double c = 1.0 / std::sqrt(static_cast<double>(m * (m + 1)));
      for (int j = 0; j < m; ++j)
        d(j, j) = Complex(0.0, c);
      d(m, m) = Complex(0.0, -c * m);
      basis.emplace_back(d);
    }
  });
  return cache[n];
}

RVector to_coords(const AlgebraVector &a) {
  const auto &basis = algebra_basis(a.n());
  RVector c(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    c(static_cast<Eigen::Index>(k)) = inner(basis[k], a);
  return c;
}

AlgebraVector from_coords(int n, const Eigen::Ref<const RVector> &c) {
  const auto &basis = algebra_basis(n);
  if (static_cast<std::size_t>(c.size()) != basis.size())
    throw std::invalid_argument("from_coords: coordinate count mismatch");
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    m += c(static_cast<Eigen::Index>(k)) * basis[k].matrix();
  return AlgebraVector(m);
}

RMatrix adjoint_matrix(const GroupPoint &g) {
  const auto &basis = algebra_basis(g.n());
  const int d = static_cast<int>(basis.size());
  RMatrix m(d, d);
  for (int k = 0; k < d; ++k)
    m.col(k) = to_coords(adjoint(g, basis[k]));
  return m;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace flatsym
