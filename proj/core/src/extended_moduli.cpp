#include "flatsym/extended_moduli.hpp"

#include <cmath>
#include <unordered_map>

#include "flatsym/bar_forms.hpp"
#include "flatsym/linalg.hpp"
#include "flatsym/quadrature.hpp"

namespace flatsym {

namespace {

const QuadratureRule &cached_rule(int order) {
  thread_local std::unordered_map<int, QuadratureRule> cache;
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, gauss_legendre_unit(order)).first;
  return it->second;
}

RVector unit_combination(const RMatrix &basis, Rng &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector c(basis.cols());
  for (auto &x : c)
    x = normal(rng);
  RVector v = basis * c;
  const double norm = v.norm();
  return norm > 0 ? RVector(v / norm) : v;
}

AlgebraVector constraint_log(const ExtendedSpace &space, const RepPoint &h,
                             const AlgebraVector &lambda) {
  return log_map(exp_map(-lambda) * space.beta.inverse() * relator_value(h));
}

/// Matrix of su(n) -> su(n), z -> [L, z].
RMatrix ad_matrix(const AlgebraVector &l) {
  const int n = l.n();
  const auto &basis = algebra_basis(n);
  RMatrix out(algebra_dim(n), algebra_dim(n));
  for (int k = 0; k < algebra_dim(n); ++k)
    out.col(k) = to_coords(bracket(l, basis[k]));
  return out;
}

} // namespace

ExtendedSpace ExtendedSpace::central(int n, int genus, int beta_index) {
  if (n < 2 || genus < 1)
    throw std::invalid_argument("ExtendedSpace: need n >= 2 and genus >= 1");
  if (beta_index < 0 || beta_index >= n)
    throw std::out_of_range("ExtendedSpace: beta index outside 0..n-1");
  return {n, genus, center_elements(n)[beta_index]};
}

RVector to_coords(const ExtendedTangent &x) {
  const RVector h = to_tangent(x.H);
  const RVector z = to_coords(x.zeta);
  RVector out(h.size() + z.size());
  out << h, z;
  return out;
}

ExtendedTangent extended_tangent_from(int n, const RVector &coords) {
  const int d = algebra_dim(n);
  if (coords.size() < d || coords.size() % d != 0)
    throw std::invalid_argument("extended_tangent_from: bad coordinate length");
  const Eigen::Index m = coords.size() - d;
  return {rep_tangent_from(n, coords.head(m)), from_coords(n, coords.tail(d))};
}

double constraint_residual(const ExtendedSpace &space, const ExtendedPoint &p) {
  try {
    return constraint_log(space, p.h, p.Lambda).norm();
  } catch (const BranchCutError &) {
    return (relator_value(p.h).matrix() - (space.beta * exp_map(p.Lambda)).matrix()).norm();
  }
}

RMatrix constraint_jacobian(const ExtendedPoint &p) {
  const RMatrix d_eps = adjoint_matrix(relator_value(p.h).inverse()) * relator_differential_matrix(p.h);
  const RMatrix d_exp = dexp_left_matrix(p.Lambda);
  RMatrix out(d_eps.rows(), d_eps.cols() + d_exp.cols());
  out << d_eps, -d_exp;
  return out;
}

double linear_constraint_residual(const ExtendedPoint &p, const ExtendedTangent &x) {
  return (constraint_jacobian(p) * to_coords(x)).norm();
}

ExtendedPoint random_extended_point(const ExtendedSpace &space, Rng &rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RepPoint h = random_rep_point(space.n, space.genus, rng);
    AlgebraVector lambda;
    try {
      lambda = log_map(space.beta.inverse() * relator_value(h));
    } catch (const BranchCutError &) {
      continue;
    }
    if (smallest_singular_value(dexp_left_matrix(lambda)) < 0.1)
      continue;
    return {std::move(h), lambda};
  }
  throw ConvergenceError("random_extended_point: no well-conditioned sample");
}

double exp_pullback_lambda(const AlgebraVector &m, const AlgebraVector &a, const AlgebraVector &b,
                           const AlgebraVector &c) {
  const GroupPoint g = exp_map(m);
  return lambda_eval(g, dexp_left(m, a), dexp_left(m, b), dexp_left(m, c));
}

double sigma_eval(const AlgebraVector &lambda, const AlgebraVector &z1, const AlgebraVector &z2,
                  int quadrature_order) {
  const QuadratureRule &rule = cached_rule(quadrature_order);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double t = rule.points[q];
    const AlgebraVector m = t * lambda;
    // dexp(t L, L) = L.
    acc += rule.weights[q] * t * t * inner(lambda, bracket(dexp_left(m, z1), dexp_left(m, z2)));
  }
  return acc;
}

FormField sigma_form(int n, int quadrature_order) {
  const ManifoldModel model({Factor::algebra(n)});
  return FormField(2, model, [n, quadrature_order](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return sigma_eval(from_coords(n, p.vec(0)), from_coords(n, xs[0]), from_coords(n, xs[1]),
                      quadrature_order);
  });
}

FormField exp_lambda_form(int n) {
  const ManifoldModel model({Factor::algebra(n)});
  return FormField(3, model, [n](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return exp_pullback_lambda(from_coords(n, p.vec(0)), from_coords(n, xs[0]),
                               from_coords(n, xs[1]), from_coords(n, xs[2]));
  });
}

double omega_tilde_eval(const ExtendedPoint &p, const ExtendedTangent &u, const ExtendedTangent &v,
                        int quadrature_order) {
  return omega_eval(p.h, u.H, v.H) + sigma_eval(p.Lambda, u.zeta, v.zeta, quadrature_order);
}

TangentBasis tangent_basis(const ExtendedPoint &p) {
  TangentBasis out;
  const int n = p.h.n();
  out.image_rank = image_dim(p.h);
  out.surjective = out.image_rank == algebra_dim(n);
  out.coords = null_space(constraint_jacobian(p));
  for (Eigen::Index k = 0; k < out.coords.cols(); ++k)
    out.vectors.push_back(extended_tangent_from(n, out.coords.col(k)));
  return out;
}

// --- charts -------------------------------------------------------------------

namespace {

/// Left-trivialized exponents U_i = sum_k u_k H_{k,i}.
std::vector<AlgebraVector> chart_exponents(const ConstraintChart &c, const RVector &u) {
  const int n = c.space.n;
  const int d = algebra_dim(n);
  const int m = 2 * c.space.genus;
  const RVector h_coords = c.basis.coords.topRows(m * d) * u;
  std::vector<AlgebraVector> out;
  for (int i = 0; i < m; ++i)
    out.push_back(from_coords(n, h_coords.segment(i * d, d)));
  return out;
}

} // namespace

ExtendedPoint ConstraintChart::retract(const RVector &u) const {
  if (u.size() != dim())
    throw std::invalid_argument("ConstraintChart::retract: coordinate length mismatch");
  if (u.isZero(0.0))
    return base;
  const int n = space.n;
  const int d = algebra_dim(n);
  ExtendedPoint p = base;
  const auto exponents = chart_exponents(*this, u);
  for (std::size_t i = 0; i < exponents.size(); ++i)
    p.h.components[i] *= exp_map(exponents[i]);
  p.Lambda += from_coords(n, RVector(basis.coords.bottomRows(d) * u));

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    AlgebraVector r;
    try {
      r = constraint_log(space, p.h, p.Lambda);
    } catch (const BranchCutError &) {
      break;
    }
    if (r.norm() <= options.tolerance)
      return p;
    if (iter == options.max_iterations)
      break;
    const RVector step = dexp_left_matrix(p.Lambda).fullPivLu().solve(to_coords(r));
    p.Lambda += from_coords(n, step);
  }
  throw ConvergenceError("ConstraintChart::retract: Newton did not converge");
}

ExtendedTangent ConstraintChart::differential(const RVector &u, const ExtendedPoint &at,
                                              const RVector &v) const {
  const int n = space.n;
  const auto exponents = chart_exponents(*this, u);
  const auto directions = chart_exponents(*this, v);
  ExtendedTangent out;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    out.H.components.push_back(dexp_left(exponents[i], directions[i]));
  // Ad_{eps^{-1}} d eps_R(H) = dexp_left(Lambda, zeta).
  const RVector rhs = adjoint_matrix(relator_value(at.h).inverse()) *
                      relator_differential_matrix(at.h) * to_tangent(out.H);
  out.zeta = from_coords(n, dexp_left_matrix(at.Lambda).fullPivLu().solve(rhs));
  return out;
}

ConstraintChart make_chart(const ExtendedSpace &space, const ExtendedPoint &p, ChartOptions options) {
  return {space, p, tangent_basis(p), options};
}

FormField chart_omega_tilde(const ConstraintChart &chart, int quadrature_order) {
  const ManifoldModel model({Factor::vector_space(chart.dim())});
  return FormField(2, model, [chart, quadrature_order](const ManifoldPoint &q, std::span<const Tangent> xs) {
    const RVector &u = q.vec(0);
    const ExtendedPoint p = chart.retract(u);
    return omega_tilde_eval(p, chart.differential(u, p, xs[0]), chart.differential(u, p, xs[1]),
                            quadrature_order);
  });
}

// --- moment map ---------------------------------------------------------------

ExtendedTangent extended_conj_field(const AlgebraVector &eta, const ExtendedPoint &p) {
  return {conj_vector_field(eta, p.h), bracket(eta, p.Lambda)};
}

ExtendedPoint conj_action(const GroupPoint &s, const ExtendedPoint &p) {
  return {conj_action(s, p.h), adjoint(s, p.Lambda)};
}

AlgebraVector moment_map(const ExtendedPoint &p) { return 2.0 * p.Lambda; }

RMatrix gram_matrix(const ExtendedPoint &p, int quadrature_order) {
  const TangentBasis basis = tangent_basis(p);
  const auto m = static_cast<Eigen::Index>(basis.vectors.size());
  RMatrix out = RMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      out(i, j) = omega_tilde_eval(p, basis.vectors[i], basis.vectors[j], quadrature_order);
      out(j, i) = omega_tilde_eval(p, basis.vectors[j], basis.vectors[i], quadrature_order);
    }
  return out;
}

ReducedForm reduced_form(const ExtendedPoint &p) {
  const int n = p.h.n();
  const RMatrix kernel = relator_kernel(p.h);
  const RMatrix stab = null_space(ad_matrix(p.Lambda));
  RMatrix orbit(kernel.rows(), stab.cols());
  for (Eigen::Index k = 0; k < stab.cols(); ++k)
    orbit.col(k) = to_tangent(conj_vector_field(from_coords(n, stab.col(k)), p.h));

  ReducedForm out;
  out.kernel_dim = static_cast<int>(kernel.cols());
  out.orbit_dim = orbit.cols() == 0 ? 0 : numerical_rank(orbit);
  const RMatrix q = orbit.cols() == 0 ? kernel : complement_within(kernel, orbit);
  out.dimension = static_cast<int>(q.cols());
  out.matrix = RMatrix::Zero(q.cols(), q.cols());
  std::vector<RepTangent> vs;
  for (Eigen::Index k = 0; k < q.cols(); ++k)
    vs.push_back(rep_tangent_from(n, q.col(k)));
  for (Eigen::Index i = 0; i < q.cols(); ++i)
    for (Eigen::Index j = i + 1; j < q.cols(); ++j) {
      out.matrix(i, j) = omega_eval(p.h, vs[i], vs[j]);
      out.matrix(j, i) = -out.matrix(i, j);
    }
  out.rank = out.dimension == 0 ? 0 : numerical_rank(out.matrix);
  out.smallest_singular_value = smallest_singular_value(out.matrix);
  return out;
}

std::vector<ExtendedPoint> zero_level_neighbors(const ExtendedSpace &space,
                                                const ExtendedPoint &center, std::size_t count,
                                                std::uint64_t seed, double radius) {
  const int n = space.n;
  const RMatrix kernel = relator_kernel(center.h);
  std::vector<ExtendedPoint> out;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, k));
    const RepTangent step = rep_tangent_from(n, radius * unit_combination(kernel, rng));
    RepPoint h = center.h;
    for (std::size_t i = 0; i < h.components.size(); ++i)
      h.components[i] *= exp_map(step.components[i]);
    out.push_back({refine_fiber_point(h, space.beta), AlgebraVector::zero(n)});
  }
  return out;
}

ExtendedPoint extended_witness(const ExtendedSpace &space, int beta_index) {
  return {witness_point(space.n, space.genus, beta_index), AlgebraVector::zero(space.n)};
}

// --- verification -------------------------------------------------------------

VerificationReport verify_sigma_closed(int n, std::size_t samples, std::uint64_t seed,
                                       DifferenceScheme scheme, int quadrature_order,
                                       double tolerance) {
  const FormField d_sigma = chart_d(sigma_form(n, quadrature_order), scheme);
  const FormField e_lambda = exp_lambda_form(n);
  const int d = algebra_dim(n);
  ResidualTracker t;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    ManifoldPoint p;
    p.factors.emplace_back(to_coords(random_algebra_vector(n, rng)));
    std::vector<Tangent> zs;
    for (int k = 0; k < 3; ++k)
      zs.push_back(unit_combination(RMatrix::Identity(d, d), rng));
    t.add(d_sigma(p, zs) - e_lambda(p, zs));
  }
  VerificationReport report;
  report.add(make_upper_check("ext.d_sigma", "d sigma = exp^* lambda on su(n)",
                              "e^* lambda = d sigma, sigma = I(e^* lambda)", t, tolerance, seed));
  return report;
}

VerificationReport verify_sigma_contraction(const ExtendedSpace &space, std::size_t samples,
                                            std::uint64_t seed, int quadrature_order,
                                            double tolerance) {
  const int n = space.n;
  ResidualTracker t;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const AlgebraVector lambda = random_algebra_vector(n, rng);
    const AlgebraVector eta = random_algebra_vector(n, rng);
    const AlgebraVector z = random_algebra_vector(n, rng);
    const double lhs = sigma_eval(lambda, bracket(eta, lambda), z, quadrature_order);
    const double rhs = -theta_eta_eval(eta, space.beta * exp_map(lambda), dexp_left(lambda, z)) +
                       2.0 * inner(eta, z);
    t.add(lhs - rhs);
  }
  VerificationReport report;
  report.add(make_upper_check("ext.sigma_contraction",
                              "i_eta sigma = -e_beta^* theta_eta + d(2 <eta, Lambda>)",
                              "i_eta sigma = -e_beta^* theta_eta + d(I e_beta^* theta_eta)", t,
                              tolerance, seed));
  return report;
}

VerificationReport verify_homotopy_theta(const ExtendedSpace &space, std::size_t samples,
                                         std::uint64_t seed, int quadrature_order,
                                         double tolerance) {
  const int n = space.n;
  const ManifoldModel model({Factor::algebra(n)});
  ResidualTracker t;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const AlgebraVector eta = random_algebra_vector(n, rng);
    const AlgebraVector lambda = random_algebra_vector(n, rng);
    const GroupPoint beta = space.beta;
    const FormField pulled_theta(1, model, [n, eta, beta](const ManifoldPoint &p, std::span<const Tangent> xs) {
      const AlgebraVector m = from_coords(n, p.vec(0));
      return theta_eta_eval(eta, beta * exp_map(m), dexp_left(m, from_coords(n, xs[0])));
    });
    const FormField integrated = homotopy_operator(pulled_theta, quadrature_order);
    ManifoldPoint p;
    p.factors.emplace_back(to_coords(lambda));
    t.add(integrated(p, std::span<const Tangent>{}) - 2.0 * inner(eta, lambda));
  }
  VerificationReport report;
  report.add(make_upper_check("ext.homotopy_theta", "(I e_beta^* theta_eta)_Lambda = 2 <eta, Lambda>",
                              "I e_beta^* theta_eta = 2 eta . Lambda", t, tolerance, seed));
  return report;
}

VerificationReport verify_closed_in_charts(const ExtendedSpace &space, std::size_t charts,
                                           std::uint64_t seed, DifferenceScheme scheme,
                                           int quadrature_order, double tolerance) {
  constexpr int triples_per_chart = 3;
  ResidualTracker t;
  std::string note;
  for (std::size_t c = 0; c < charts; ++c) {
    Rng rng(derive_seed(seed, c));
    const ConstraintChart chart = make_chart(space, random_extended_point(space, rng));
    if (!chart.basis.surjective)
      note = "chart base with non-surjective d eps_R";
    const FormField d_form = chart_d(chart_omega_tilde(chart, quadrature_order), scheme);
    const int m = chart.dim();
    ManifoldPoint origin;
    origin.factors.emplace_back(RVector::Zero(m));
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int k = 0; k < triples_per_chart; ++k) {
      int i = pick(rng), j = pick(rng), l = pick(rng);
      while (j == i)
        j = pick(rng);
      while (l == i || l == j)
        l = pick(rng);
      t.add(d_form(origin, {RVector::Unit(m, i), RVector::Unit(m, j), RVector::Unit(m, l)}));
    }
  }
  VerificationReport report;
  CheckResult check = make_upper_check("ext.closed_in_charts", "d omega~ = 0 in Newton-retraction charts of X_beta",
                                       "d(proj_1^* omega + proj_2^* sigma) = 0 in charts of X_beta",
                                       t, tolerance, seed);
  check.note = note;
  report.add(std::move(check));
  return report;
}

VerificationReport verify_moment(const ExtendedSpace &space, std::size_t samples,
                                 std::uint64_t seed, int quadrature_order, double tolerance,
                                 double equivariance_tolerance) {
  const int n = space.n;
  ResidualTracker moment, equivariance, invariance;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const ExtendedPoint p = random_extended_point(space, rng);
    const TangentBasis basis = tangent_basis(p);
    const AlgebraVector eta = random_algebra_vector(n, rng);
    const ExtendedTangent x = extended_tangent_from(n, unit_combination(basis.coords, rng));
    const ExtendedTangent y = extended_tangent_from(n, unit_combination(basis.coords, rng));
    moment.add(omega_tilde_eval(p, extended_conj_field(eta, p), x, quadrature_order) -
               2.0 * inner(eta, x.zeta));

    const GroupPoint g = random_group_point(n, rng);
    const ExtendedPoint q = conj_action(g, p);
    equivariance.add((moment_map(q) - adjoint(g, moment_map(p))).norm());
    const ExtendedTangent gx{conj_tangent(g, x.H), adjoint(g, x.zeta)};
    const ExtendedTangent gy{conj_tangent(g, y.H), adjoint(g, y.zeta)};
    invariance.add(omega_tilde_eval(q, gx, gy, quadrature_order) -
                   omega_tilde_eval(p, x, y, quadrature_order));
  }
  VerificationReport report;
  report.add(make_upper_check("ext.moment", "i_eta~ omega~ = <eta, d mu> with mu = 2 Lambda",
                              "i_eta~ omega~ = eta . d mu, mu = 2 proj_2", moment, tolerance, seed));
  report.add(make_upper_check("ext.equivariance", "mu(s . p) = Ad_s mu(p)",
                              "mu(s h s^-1, Ad_s Lambda) = Ad_s mu(h, Lambda)", equivariance,
                              equivariance_tolerance, seed));
  report.add(make_upper_check("ext.invariance", "omega~ is invariant under conjugation",
                              "omega~(s . p; s . X, s . Y) = omega~(p; X, Y)", invariance, tolerance,
                              seed));
  return report;
}

VerificationReport verify_nondegeneracy(const ExtendedSpace &space, int beta_index,
                                        std::size_t neighbors, std::uint64_t seed,
                                        int quadrature_order, double tolerance) {
  const int d = algebra_dim(space.n);
  const ExtendedPoint witness = extended_witness(space, beta_index);
  std::vector<ExtendedPoint> points{witness};
  for (auto &p : zero_level_neighbors(space, witness, neighbors, seed))
    points.push_back(std::move(p));

  MinimumTracker gram;
  ResidualTracker reduced, surjective, dimension;
  const int expected_tangent = 2 * space.genus * d;
  for (const auto &p : points) {
    const RMatrix m = gram_matrix(p, quadrature_order);
    gram.add(smallest_singular_value(m));
    dimension.add(static_cast<double>(m.rows() - expected_tangent));
    const ReducedForm r = reduced_form(p);
    reduced.add(static_cast<double>(r.dimension - r.rank) + (r.rank % 2 == 0 ? 0.0 : 1.0));
    surjective.add(static_cast<double>(d - image_dim(p.h)));
  }
  const ReducedForm at_witness = reduced_form(witness);

  VerificationReport report;
  CheckResult g = make_lower_check("ext.gram", "omega~ nondegenerate on T X_beta near mu^{-1}(0)",
                                   "sigma_min(omega~ on T X_beta) > 0", gram,
                                   tolerance, seed);
  g.note = "tangent dimension " + std::to_string(expected_tangent);
  report.add(std::move(g));
  report.add(make_upper_check("ext.tangent_dim", "dim T X_beta = 2g dim g at mu^{-1}(0) samples",
                              "dim ker(d eps_R - d e_beta) = 2g dim g", dimension, 0.0, seed));
  CheckResult red = make_upper_check(
      "ext.reduced_rank", "reduced form on ker d proj_2 / stab(Lambda) orbit has full even rank",
      "rank(omega~ on ker d proj_2 / orbit) = dim", reduced, 0.0, seed);
  red.note = "witness: kernel " + std::to_string(at_witness.kernel_dim) + ", orbit " +
             std::to_string(at_witness.orbit_dim) + ", reduced " +
             std::to_string(at_witness.dimension) + ", rank " + std::to_string(at_witness.rank);
  report.add(std::move(red));
  report.add(make_upper_check("ext.surjective", "d eps_R has rank dim g on mu^{-1}(0) samples",
                              "rank d eps_R = dim g on mu^-1(0)", surjective, 0.0, seed));
  return report;
}

} // namespace flatsym
