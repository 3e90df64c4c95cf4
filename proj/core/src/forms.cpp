#include "flatsym/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "flatsym/quadrature.hpp"

namespace flatsym {

namespace {

struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;
};

const Stencil &stencil(int order) {
  static const Stencil second{{1, -1}, {0.5, -0.5}};
  static const Stencil fourth{{2, 1, -1, -2}, {-1.0 / 12, 8.0 / 12, -8.0 / 12, 1.0 / 12}};
  static const Stencil sixth{{3, 2, 1, -1, -2, -3},
                             {1.0 / 60, -9.0 / 60, 45.0 / 60, -45.0 / 60, 9.0 / 60, -1.0 / 60}};
  switch (order) {
  case 2:
    return second;
  case 4:
    return fourth;
  case 6:
    return sixth;
  default:
    throw std::invalid_argument("difference order must be 2, 4 or 6");
  }
}

void require_single_vector_factor(const ManifoldModel &m, const char *who) {
  if (m.size() != 1 || m.factor(0).kind != FactorKind::vector)
    throw std::invalid_argument(std::string(who) + ": domain must be a single vector factor");
}

std::vector<Tangent> without(std::span<const Tangent> xs, std::size_t skip) {
  std::vector<Tangent> out;
  out.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (k != skip)
      out.push_back(xs[k]);
  return out;
}

template <class F> void for_each_subset(int m, int size, F &&f) {
  std::vector<int> idx(size);
  for (int k = 0; k < size; ++k)
    idx[k] = k;
  if (size > m)
    return;
  for (;;) {
    f(idx);
    int k = size - 1;
    while (k >= 0 && idx[k] == m - size + k)
      --k;
    if (k < 0)
      return;
    ++idx[k];
    for (int j = k + 1; j < size; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

double minor_det(std::span<const Tangent> xs, const std::vector<int> &idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  if (k == 0)
    return 1.0;
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index l = 0; l < k; ++l)
      m(j, l) = xs[j](idx[l]);
  return m.determinant();
}

} // namespace

// --- models -----------------------------------------------------------------

ManifoldModel::ManifoldModel(std::vector<Factor> factors) : factors_(std::move(factors)) {
  offsets_.reserve(factors_.size());
  for (const auto &f : factors_) {
    if (f.dim < 0 || (f.kind == FactorKind::group && f.lie_n < 1))
      throw std::invalid_argument("ManifoldModel: malformed factor");
    offsets_.push_back(dim_);
    dim_ += f.dim;
  }
}

ManifoldModel ManifoldModel::group_power(int n, int copies) {
  return ManifoldModel(std::vector<Factor>(copies, Factor::group(n)));
}

Eigen::VectorBlock<const Tangent> tangent_block(const ManifoldModel &m, const Tangent &x,
                                                std::size_t i) {
  return x.segment(m.offset(i), m.factor(i).dim);
}

AlgebraVector tangent_component(const ManifoldModel &m, const Tangent &x, std::size_t i) {
  const Factor &f = m.factor(i);
  if (f.lie_n == 0)
    throw std::invalid_argument("tangent_component: factor is not modelled on su(n)");
  return from_coords(f.lie_n, tangent_block(m, x, i));
}

Tangent make_tangent(std::span<const AlgebraVector> parts) {
  Eigen::Index total = 0;
  for (const auto &a : parts)
    total += algebra_dim(a.n());
  Tangent x(total);
  Eigen::Index at = 0;
  for (const auto &a : parts) {
    const RVector c = to_coords(a);
    x.segment(at, c.size()) = c;
    at += c.size();
  }
  return x;
}

ManifoldPoint flow(const ManifoldModel &m, const ManifoldPoint &p, const Tangent &x, double t) {
  ManifoldPoint q;
  q.factors.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Factor &f = m.factor(i);
    if (f.kind == FactorKind::group)
      q.factors.emplace_back(p.group(i) * exp_map(t * tangent_component(m, x, i)));
    else
      q.factors.emplace_back(RVector(p.vec(i) + t * tangent_block(m, x, i)));
  }
  return q;
}

Tangent field_bracket(const ManifoldModel &m, const Tangent &x, const Tangent &y) {
  Tangent out = Tangent::Zero(m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Factor &f = m.factor(i);
    if (f.kind != FactorKind::group)
      continue;
    out.segment(m.offset(i), f.dim) =
        to_coords(bracket(tangent_component(m, x, i), tangent_component(m, y, i)));
  }
  return out;
}

ManifoldPoint random_point(const ManifoldModel &m, Rng &rng, double vector_scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ManifoldPoint p;
  for (const auto &f : m.factors()) {
    if (f.kind == FactorKind::group) {
      p.factors.emplace_back(random_group_point(f.lie_n, rng));
    } else {
      RVector v(f.dim);
      for (auto &c : v)
        c = vector_scale * normal(rng);
      p.factors.emplace_back(std::move(v));
    }
  }
  return p;
}

Tangent random_tangent(const ManifoldModel &m, Rng &rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Tangent x(m.dim());
  for (auto &c : x)
    c = scale * normal(rng);
  return x;
}

// --- FormField ----------------------------------------------------------------

FormField::FormField(int degree, ManifoldModel domain, FormEvaluator eval)
    : degree_(degree), domain_(std::move(domain)), eval_(std::move(eval)) {
  if (degree_ < 0)
    throw std::invalid_argument("FormField: negative degree");
}

double FormField::operator()(const ManifoldPoint &p, std::span<const Tangent> xs) const {
  if (static_cast<int>(xs.size()) != degree_)
    throw std::invalid_argument("FormField: expected " + std::to_string(degree_) +
                                " tangent arguments, got " + std::to_string(xs.size()));
  return eval_(p, xs);
}

FormField operator+(const FormField &a, const FormField &b) {
  if (a.degree_ != b.degree_ || !(a.domain_ == b.domain_))
    throw std::invalid_argument("FormField sum: degree or domain mismatch");
  return FormField(a.degree_, a.domain_, [a, b](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return a(p, xs) + b(p, xs);
  });
}

FormField operator-(const FormField &a, const FormField &b) { return a + (-1.0) * b; }

FormField operator*(double s, const FormField &a) {
  return FormField(a.degree_, a.domain_, [s, a](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return s * a(p, xs);
  });
}

double central_difference(const std::function<double(double)> &f, const DifferenceScheme &scheme) {
  const Stencil &s = stencil(scheme.order);
  double acc = 0.0;
  for (std::size_t k = 0; k < s.offsets.size(); ++k)
    acc += s.weights[k] * f(s.offsets[k] * scheme.step);
  return acc / scheme.step;
}

FormField constant_form(const ManifoldModel &domain, double value) {
  return FormField(0, domain, [value](const ManifoldPoint &, std::span<const Tangent>) { return value; });
}

FormField coordinate_form(const ManifoldModel &domain, std::vector<int> indices,
                          std::function<double(const RVector &)> coefficient) {
  require_single_vector_factor(domain, "coordinate_form");
  for (int i : indices)
    if (i < 0 || i >= domain.dim())
      throw std::out_of_range("coordinate_form: index out of range");
  const int k = static_cast<int>(indices.size());
  return FormField(k, domain,
                   [indices = std::move(indices), coefficient = std::move(coefficient)](
                       const ManifoldPoint &p, std::span<const Tangent> xs) {
                     return coefficient(p.vec(0)) * minor_det(xs, indices);
                   });
}

// --- operations -------------------------------------------------------------

FormField interior_product(const VectorFieldModel &v, const FormField &w) {
  if (w.degree() == 0)
    throw std::invalid_argument("interior_product: form of degree 0");
  if (!(v.domain == w.domain()))
    throw std::invalid_argument("interior_product: domain mismatch");
  return FormField(w.degree() - 1, w.domain(), [v, w](const ManifoldPoint &p, std::span<const Tangent> xs) {
    std::vector<Tangent> args;
    args.reserve(xs.size() + 1);
    args.push_back(v.at(p));
    args.insert(args.end(), xs.begin(), xs.end());
    return w(p, args);
  });
}

namespace {

Tangent fd_tangent(const SmoothMap &phi, const ManifoldPoint &p, const ManifoldPoint &image,
                   const Tangent &x, const DifferenceScheme &scheme) {
  const ManifoldModel &tm = phi.target;
  const Stencil &s = stencil(scheme.order);
  Tangent out = Tangent::Zero(tm.dim());
  for (std::size_t k = 0; k < s.offsets.size(); ++k) {
    const ManifoldPoint q = phi.point(flow(phi.source, p, x, s.offsets[k] * scheme.step));
    for (std::size_t i = 0; i < tm.size(); ++i) {
      const Factor &f = tm.factor(i);
      RVector delta;
      if (f.kind == FactorKind::group)
        delta = to_coords(log_map(image.group(i).inverse() * q.group(i)));
      else
        delta = q.vec(i) - image.vec(i);
      out.segment(tm.offset(i), f.dim) += s.weights[k] * delta;
    }
  }
  return out / scheme.step;
}

} // namespace

FormField pullback(const SmoothMap &phi, const FormField &w, DifferenceScheme fallback) {
  if (!(phi.target == w.domain()))
    throw std::invalid_argument("pullback: map target does not match form domain");
  return FormField(w.degree(), phi.source,
                   [phi, w, fallback](const ManifoldPoint &p, std::span<const Tangent> xs) {
                     const ManifoldPoint image = phi.point(p);
                     std::vector<Tangent> pushed;
                     pushed.reserve(xs.size());
                     for (const auto &x : xs)
                       pushed.push_back(phi.tangent ? phi.tangent(p, x)
                                                    : fd_tangent(phi, p, image, x, fallback));
                     return w(image, pushed);
                   });
}

FormField numerical_d(const FormField &w, DifferenceScheme scheme) {
  const ManifoldModel model = w.domain();
  return FormField(w.degree() + 1, model,
                   [w, model, scheme](const ManifoldPoint &p, std::span<const Tangent> xs) {
                     const std::size_t k = xs.size();
                     double acc = 0.0;
                     for (std::size_t i = 0; i < k; ++i) {
                       const std::vector<Tangent> rest = without(xs, i);
                       const Tangent &dir = xs[i];
                       const double deriv = central_difference(
                           [&](double t) { return w(flow(model, p, dir, t), rest); }, scheme);
                       acc += (i % 2 == 0 ? 1.0 : -1.0) * deriv;
                     }
                     for (std::size_t i = 0; i < k; ++i)
                       for (std::size_t j = i + 1; j < k; ++j) {
                         std::vector<Tangent> args;
                         args.reserve(k - 1);
                         args.push_back(field_bracket(model, xs[i], xs[j]));
                         if (args.back().isZero(0.0))
                           continue;
                         for (std::size_t l = 0; l < k; ++l)
                           if (l != i && l != j)
                             args.push_back(xs[l]);
                         acc += ((i + j) % 2 == 0 ? 1.0 : -1.0) * w(p, args);
                       }
                     return acc;
                   });
}

FormField homotopy_operator(const FormField &b, int quadrature_order) {
  require_single_vector_factor(b.domain(), "homotopy_operator");
  if (b.degree() == 0)
    throw std::invalid_argument("homotopy_operator: form of degree 0");
  const QuadratureRule rule = gauss_legendre_unit(quadrature_order);
  const int k = b.degree() - 1;
  return FormField(k, b.domain(), [b, rule, k](const ManifoldPoint &p, std::span<const Tangent> zs) {
    const RVector &v = p.vec(0);
    std::vector<Tangent> args;
    args.reserve(zs.size() + 1);
    args.push_back(v);
    args.insert(args.end(), zs.begin(), zs.end());
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = rule.points[q];
      ManifoldPoint scaled;
      scaled.factors.emplace_back(RVector(t * v));
      acc += rule.weights[q] * std::pow(t, k) * b(scaled, args);
    }
    return acc;
  });
}

FormField chart_d(const FormField &w, DifferenceScheme scheme) {
  require_single_vector_factor(w.domain(), "chart_d");
  const ManifoldModel model = w.domain();
  const int m = model.dim();
  return FormField(w.degree() + 1, model, [w, m, scheme](const ManifoldPoint &p, std::span<const Tangent> xs) {
    const RVector &u = p.vec(0);
    const int size = static_cast<int>(xs.size());
    double acc = 0.0;
    for_each_subset(m, size, [&](const std::vector<int> &idx) {
      const double det = minor_det(xs, idx);
      if (det == 0.0)
        return;
      double coeff = 0.0;
      for (int l = 0; l < size; ++l) {
        std::vector<Tangent> basis;
        basis.reserve(size - 1);
        for (int j = 0; j < size; ++j)
          if (j != l)
            basis.push_back(RVector::Unit(m, idx[j]));
        const int axis = idx[l];
        const double deriv = central_difference(
            [&](double t) {
              ManifoldPoint q;
              RVector shifted = u;
              shifted(axis) += t;
              q.factors.emplace_back(std::move(shifted));
              return w(q, basis);
            },
            scheme);
        coeff += (l % 2 == 0 ? 1.0 : -1.0) * deriv;
      }
      acc += coeff * det;
    });
    return acc;
  });
}

double alternation_defect(const FormField &w, const ManifoldPoint &p, std::span<const Tangent> xs) {
  std::vector<Tangent> args(xs.begin(), xs.end());
  const double base = w(p, args);
  double worst = 0.0;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j) {
      std::swap(args[i], args[j]);
      worst = std::max(worst, std::abs(w(p, args) + base));
      std::swap(args[i], args[j]);
    }
  return worst;
}

double linearity_defect(const FormField &w, const ManifoldPoint &p, std::span<const Tangent> xs,
                        const Tangent &y, double a, double b) {
  std::vector<Tangent> args(xs.begin(), xs.end());
  double worst = 0.0;
  for (std::size_t slot = 0; slot < args.size(); ++slot) {
    const Tangent x = args[slot];
    const double wx = w(p, args);
    args[slot] = y;
    const double wy = w(p, args);
    args[slot] = a * x + b * y;
    const double combined = w(p, args);
    args[slot] = x;
    worst = std::max(worst, std::abs(combined - a * wx - b * wy));
  }
  return worst;
}

// --- polynomial forms --------------------------------------------------------

namespace {

struct Monomial {
  double coefficient = 0.0;
  std::vector<int> exponents;
};

double eval_polynomial(const std::vector<Monomial> &poly, const RVector &x) {
  double acc = 0.0;
  for (const auto &mono : poly) {
    double term = mono.coefficient;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      term *= std::pow(x(i), mono.exponents[i]);
    acc += term;
  }
  return acc;
}

} // namespace

FormField random_polynomial_form(int dim, int degree, int max_degree, Rng &rng) {
  if (dim < 1 || degree < 0 || degree > dim || max_degree < 0)
    throw std::invalid_argument("random_polynomial_form: bad dimension or degree");
  constexpr int monomials_per_term = 3;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> total(0, max_degree);
  std::uniform_int_distribution<int> axis(0, dim - 1);
  std::vector<std::pair<std::vector<int>, std::vector<Monomial>>> terms;
  for_each_subset(dim, degree, [&](const std::vector<int> &idx) {
    std::vector<Monomial> poly;
    for (int k = 0; k < monomials_per_term; ++k) {
      Monomial mono{normal(rng), std::vector<int>(dim, 0)};
      for (int e = total(rng); e > 0; --e)
        ++mono.exponents[axis(rng)];
      poly.push_back(std::move(mono));
    }
    terms.emplace_back(idx, std::move(poly));
  });
  const ManifoldModel model({Factor::vector_space(dim)});
  return FormField(degree, model, [terms = std::move(terms)](const ManifoldPoint &p, std::span<const Tangent> xs) {
    double acc = 0.0;
    for (const auto &[idx, poly] : terms)
      acc += eval_polynomial(poly, p.vec(0)) * minor_det(xs, idx);
    return acc;
  });
}

VerificationReport verify_poincare_lemma(std::size_t samples, std::uint64_t seed,
                                         DifferenceScheme scheme, int quadrature_order,
                                         double tolerance) {
  ResidualTracker t;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const int dim = std::uniform_int_distribution<int>(2, 6)(rng);
    const int degree = std::uniform_int_distribution<int>(1, std::min(dim, 3))(rng);
    const FormField b = random_polynomial_form(dim, degree, 4, rng);
    const FormField lhs = chart_d(homotopy_operator(b, quadrature_order), scheme) +
                          homotopy_operator(chart_d(b, scheme), quadrature_order);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    RVector x(dim);
    for (auto &c : x)
      c = box(rng);
    std::vector<Tangent> zs;
    for (int k = 0; k < degree; ++k) {
      RVector z(dim);
      for (auto &c : z)
        c = normal(rng);
      zs.push_back(std::move(z));
    }
    ManifoldPoint p;
    p.factors.emplace_back(std::move(x));
    t.add(lhs(p, zs) - b(p, zs));
  }
  VerificationReport report;
  report.add(make_upper_check("forms.poincare", "d I + I d = id on polynomial forms",
                              "dI + Id = id", t, tolerance, seed));
  return report;
}

} // namespace flatsym
