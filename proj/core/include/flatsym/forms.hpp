#pragma once

// Differential forms on products of copies of SU(n) and of real vector spaces
// (su(n) viewed as R^{n^2-1} included), represented as evaluators.
//
// A tangent vector at a point is a single real coordinate vector: the
// concatenation, factor by factor, of the left-trivialized su(n) coordinates
// (group factors) or literal coordinates (vector factors). Forms are
// evaluated with the determinant convention
//   (a1 ^ ... ^ ak)(X1, ..., Xk) = det[ai(Xj)].

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "flatsym/lie.hpp"
#include "flatsym/report.hpp"

namespace flatsym {

enum class FactorKind { group, vector };

struct Factor {
  FactorKind kind = FactorKind::vector;
  /// Real dimension of the factor.
  int dim = 0;
  /// n of SU(n) for group factors and for vector factors modelling su(n);
  /// 0 for a plain R^dim.
  int lie_n = 0;

  static Factor group(int n) { return {FactorKind::group, algebra_dim(n), n}; }
  static Factor algebra(int n) { return {FactorKind::vector, algebra_dim(n), n}; }
  static Factor vector_space(int dim) { return {FactorKind::vector, dim, 0}; }

  bool operator==(const Factor &) const = default;
};

class ManifoldModel {
public:
  ManifoldModel() = default;
  explicit ManifoldModel(std::vector<Factor> factors);

  /// G^copies for G = SU(n).
  static ManifoldModel group_power(int n, int copies);

  const std::vector<Factor> &factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  const Factor &factor(std::size_t i) const { return factors_.at(i); }
  int dim() const { return dim_; }
  int offset(std::size_t i) const { return offsets_.at(i); }

  bool operator==(const ManifoldModel &o) const { return factors_ == o.factors_; }

private:
  std::vector<Factor> factors_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

using FactorPoint = std::variant<GroupPoint, RVector>;
using Tangent = RVector;

struct ManifoldPoint {
  std::vector<FactorPoint> factors;

  const GroupPoint &group(std::size_t i) const { return std::get<GroupPoint>(factors.at(i)); }
  const RVector &vec(std::size_t i) const { return std::get<RVector>(factors.at(i)); }
};

/// The block of `x` belonging to factor i.
Eigen::VectorBlock<const Tangent> tangent_block(const ManifoldModel &m, const Tangent &x,
                                                std::size_t i);

/// Factor i of a tangent as an su(n) element (group or algebra factors).
AlgebraVector tangent_component(const ManifoldModel &m, const Tangent &x, std::size_t i);

/// Concatenates su(n) elements into a tangent of an all-Lie model.
Tangent make_tangent(std::span<const AlgebraVector> parts);

/// p.exp(tX) on group factors, p + tX on vector factors.
ManifoldPoint flow(const ManifoldModel &m, const ManifoldPoint &p, const Tangent &x, double t);

/// Bracket of the left-invariant (group) / constant (vector) extensions.
Tangent field_bracket(const ManifoldModel &m, const Tangent &x, const Tangent &y);

ManifoldPoint random_point(const ManifoldModel &m, Rng &rng, double vector_scale = 1.0);
Tangent random_tangent(const ManifoldModel &m, Rng &rng, double scale = 1.0);

using FormEvaluator = std::function<double(const ManifoldPoint &, std::span<const Tangent>)>;

class FormField {
public:
  FormField(int degree, ManifoldModel domain, FormEvaluator eval);

  int degree() const { return degree_; }
  const ManifoldModel &domain() const { return domain_; }

  double operator()(const ManifoldPoint &p, std::span<const Tangent> xs) const;
  double operator()(const ManifoldPoint &p, std::initializer_list<Tangent> xs) const {
    return (*this)(p, std::span<const Tangent>(xs.begin(), xs.size()));
  }

  friend FormField operator+(const FormField &a, const FormField &b);
  friend FormField operator-(const FormField &a, const FormField &b);
  friend FormField operator*(double s, const FormField &a);

private:
  int degree_;
  ManifoldModel domain_;
  FormEvaluator eval_;
};

struct VectorFieldModel {
  ManifoldModel domain;
  std::function<Tangent(const ManifoldPoint &)> at;
};

/// A smooth map with its differential. When `tangent` is empty, pullback
/// falls back to central differences of `point`.
struct SmoothMap {
  ManifoldModel source;
  ManifoldModel target;
  std::function<ManifoldPoint(const ManifoldPoint &)> point;
  std::function<Tangent(const ManifoldPoint &, const Tangent &)> tangent;
};

/// Central difference stencil; order 2, 4 or 6.
struct DifferenceScheme {
  double step = 1e-4;
  int order = 2;
};

/// Directional derivative of f(t) at 0 with the given stencil.
double central_difference(const std::function<double(double)> &f, const DifferenceScheme &scheme);

/// Constant function to a 0-form.
FormField constant_form(const ManifoldModel &domain, double value);

/// f(x) dx_{i1} ^ ... ^ dx_{ik} on a single vector factor.
FormField coordinate_form(const ManifoldModel &domain, std::vector<int> indices,
                          std::function<double(const RVector &)> coefficient);

/// (i_v w)(p; X2..Xk) = w(p; v(p), X2..Xk). Throws for degree 0.
FormField interior_product(const VectorFieldModel &v, const FormField &w);

/// (phi^* w)(p; X..) = w(phi(p); dphi(X)..). Throws on domain mismatch.
FormField pullback(const SmoothMap &phi, const FormField &w, DifferenceScheme fallback = {});

/// Exterior derivative via the invariant-field formula with finite
/// differences along flow().
FormField numerical_d(const FormField &w, DifferenceScheme scheme = {});

/// Poincare-lemma homotopy operator on a single vector factor:
/// (I b)_v(z1..zk) = int_0^1 t^k b_{tv}(v, z1..zk) dt by Gauss-Legendre.
FormField homotopy_operator(const FormField &b, int quadrature_order);

/// Coordinate exterior derivative on a single vector factor (a chart): the
/// coefficient (dw)_I = sum_l (-1)^l d_{I_l} w(e_{I \ I_l}) by central
/// differences along coordinate axes, contracted with the arguments through
/// (k+1)x(k+1) minors.
FormField chart_d(const FormField &w, DifferenceScheme scheme = {});

/// max |w(.., Xi, Xj, ..) + w(.., Xj, Xi, ..)| over all transpositions.
double alternation_defect(const FormField &w, const ManifoldPoint &p, std::span<const Tangent> xs);

/// max over slots of |w(aX + bY) - a w(X) - b w(Y)| with the other slots fixed.
double linearity_defect(const FormField &w, const ManifoldPoint &p, std::span<const Tangent> xs,
                        const Tangent &y, double a, double b);

/// Random k-form on R^dim whose coefficients are polynomials of total degree
/// <= max_degree with standard-normal coefficients.
FormField random_polynomial_form(int dim, int degree, int max_degree, Rng &rng);

/// d(I b) + I(d b) = b on random polynomial forms (dimension 2..6, degree
/// 1..3, coefficient degree <= 4) at points of [-1, 1]^dim.
VerificationReport verify_poincare_lemma(std::size_t samples, std::uint64_t seed,
                                         DifferenceScheme scheme = {0.05, 6},
                                         int quadrature_order = 8, double tolerance = 1e-10);

} // namespace flatsym
