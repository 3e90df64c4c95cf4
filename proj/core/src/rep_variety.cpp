#include "flatsym/rep_variety.hpp"

#include <cmath>
#include <numbers>

#include "flatsym/bar_forms.hpp"
#include "flatsym/linalg.hpp"

namespace flatsym {

namespace {

void require_matching(const RepPoint &h, const RepTangent &x) {
  if (h.components.size() != x.components.size())
    throw std::invalid_argument("RepTangent length does not match RepPoint");
}

const GroupPoint &generator_value(const RepPoint &h, const Letter &l) {
  if (l.generator < 1 || l.generator > static_cast<int>(h.components.size()))
    throw std::out_of_range("word letter x" + std::to_string(l.generator) +
                            " exceeds the number of components");
  return h.components[l.generator - 1];
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

} // namespace

RepPoint RepPoint::identity(int n, int genus) {
  return {std::vector<GroupPoint>(2 * genus, GroupPoint::identity(n))};
}

RepTangent RepTangent::zero(int n, int genus) {
  return {std::vector<AlgebraVector>(2 * genus, AlgebraVector::zero(n))};
}

RepPoint random_rep_point(int n, int genus, Rng &rng) {
  RepPoint h;
  for (int i = 0; i < 2 * genus; ++i)
    h.components.push_back(random_group_point(n, rng));
  return h;
}

RepTangent random_rep_tangent(int n, int genus, Rng &rng) {
  const ManifoldModel model = ManifoldModel::group_power(n, 2 * genus);
  Tangent x = random_tangent(model, rng);
  x.normalize();
  return rep_tangent_from(n, x);
}

Tangent to_tangent(const RepTangent &x) { return make_tangent(x.components); }

RepTangent rep_tangent_from(int n, const Tangent &x) {
  const int d = algebra_dim(n);
  if (x.size() % d != 0)
    throw std::invalid_argument("rep_tangent_from: size is not a multiple of dim su(n)");
  RepTangent out;
  for (Eigen::Index k = 0; k < x.size() / d; ++k)
    out.components.push_back(from_coords(n, x.segment(k * d, d)));
  return out;
}

ManifoldPoint to_manifold_point(const RepPoint &h) {
  ManifoldPoint p;
  for (const auto &g : h.components)
    p.factors.emplace_back(g);
  return p;
}

RepPoint rep_point_from(const ManifoldPoint &p) {
  RepPoint h;
  for (std::size_t i = 0; i < p.factors.size(); ++i)
    h.components.push_back(p.group(i));
  return h;
}

GroupPoint eval_word(const Word &w, const RepPoint &h) {
  if (h.components.empty())
    throw std::invalid_argument("eval_word: empty RepPoint");
  GroupPoint g = GroupPoint::identity(h.n());
  for (const auto &l : w.letters()) {
    const GroupPoint &x = generator_value(h, l);
    g *= l.sign > 0 ? x : x.inverse();
  }
  return g;
}

GroupPoint relator_value(const RepPoint &h) { return eval_word(surface_relator(h.genus()), h); }

AlgebraVector word_differential(const Word &w, const RepPoint &h, const RepTangent &x) {
  require_matching(h, x);
  const int n = h.n();
  GroupPoint prefix = GroupPoint::identity(n);
  AlgebraVector acc = AlgebraVector::zero(n);
  for (const auto &l : w.letters()) {
    const GroupPoint &g = generator_value(h, l);
    const AlgebraVector &xi = x.components[l.generator - 1];
    // d(x) x^{-1} = Ad_x xi;  d(x^{-1}) x = -xi.
    const AlgebraVector local = l.sign > 0 ? adjoint(g, xi) : -xi;
    acc += adjoint(prefix, local);
    prefix *= l.sign > 0 ? g : g.inverse();
  }
  return acc;
}

AlgebraVector word_differential_fox(const Word &w, const RepPoint &h, const RepTangent &x) {
  require_matching(h, x);
  const int genus = h.genus();
  AlgebraVector acc = AlgebraVector::zero(h.n());
  for (int i = 1; i <= 2 * genus; ++i) {
    const AlgebraVector base = adjoint(h.components[i - 1], x.components[i - 1]);
    const GroupRingElement d = fox_derivative(w, i, genus);
    for (const auto &[v, c] : d.terms())
      acc += static_cast<double>(c) * adjoint(eval_word(v, h), base);
  }
  return acc;
}

AlgebraVector word_differential_left(const Word &w, const RepPoint &h, const RepTangent &x) {
  return adjoint(eval_word(w, h).inverse(), word_differential(w, h, x));
}

RMatrix relator_differential_matrix(const RepPoint &h) {
  const int n = h.n();
  const int d = algebra_dim(n);
  const int m = static_cast<int>(h.components.size());
  const Word relator = surface_relator(h.genus());
  const auto &basis = algebra_basis(n);
  RMatrix out(d, m * d);
  RepTangent x = RepTangent::zero(n, h.genus());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < d; ++k) {
      x.components[i] = basis[k];
      out.col(i * d + k) = to_coords(word_differential(relator, h, x));
      x.components[i] = AlgebraVector::zero(n);
    }
  return out;
}

double omega_eval(const RepPoint &h, const RepTangent &x, const RepTangent &y) {
  require_matching(h, x);
  require_matching(h, y);
  double acc = 0.0;
  for (const auto &term : relator_chain_terms(h.genus())) {
    const GroupPoint a = eval_word(term.first, h);
    const GroupPoint b = eval_word(term.second, h);
    const GroupPoint a_inv = a.inverse();
    const GroupPoint b_inv = b.inverse();
    const AlgebraVector ax = adjoint(a_inv, word_differential(term.first, h, x));
    const AlgebraVector bx = adjoint(b_inv, word_differential(term.second, h, x));
    const AlgebraVector ay = adjoint(a_inv, word_differential(term.first, h, y));
    const AlgebraVector by = adjoint(b_inv, word_differential(term.second, h, y));
    acc += term.coefficient * omega_pair_eval(a, b, ax, bx, ay, by);
  }
  return acc;
}

FormField omega_form(int n, int genus) {
  const ManifoldModel model = ManifoldModel::group_power(n, 2 * genus);
  return FormField(2, model, [n](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return omega_eval(rep_point_from(p), rep_tangent_from(n, xs[0]), rep_tangent_from(n, xs[1]));
  });
}

SmoothMap relator_smooth_map(int n, int genus) {
  const ManifoldModel source = ManifoldModel::group_power(n, 2 * genus);
  const ManifoldModel target = ManifoldModel::group_power(n, 1);
  const Word relator = surface_relator(genus);
  return {source, target,
          [](const ManifoldPoint &p) {
            ManifoldPoint q;
            q.factors.emplace_back(relator_value(rep_point_from(p)));
            return q;
          },
          [n, relator](const ManifoldPoint &p, const Tangent &x) {
            return to_coords(word_differential_left(relator, rep_point_from(p), rep_tangent_from(n, x)));
          }};
}

RepPoint conj_action(const GroupPoint &s, const RepPoint &h) {
  RepPoint out;
  const GroupPoint s_inv = s.inverse();
  for (const auto &g : h.components)
    out.components.push_back(s * g * s_inv);
  return out;
}

RepTangent conj_tangent(const GroupPoint &s, const RepTangent &x) {
  RepTangent out;
  for (const auto &xi : x.components)
    out.components.push_back(adjoint(s, xi));
  return out;
}

RepTangent conj_vector_field(const AlgebraVector &eta, const RepPoint &h) {
  RepTangent out;
  for (const auto &g : h.components)
    out.components.push_back(conjugation_generator(eta, g));
  return out;
}

RMatrix stabilizer_lie(const RepPoint &h) {
  const int n = h.n();
  const int d = algebra_dim(n);
  const int m = static_cast<int>(h.components.size());
  RMatrix stacked(m * d, d);
  for (int i = 0; i < m; ++i)
    stacked.block(i * d, 0, d, d) = adjoint_matrix(h.components[i]) - RMatrix::Identity(d, d);
  return null_space(stacked);
}

int image_dim(const RepPoint &h) { return numerical_rank(relator_differential_matrix(h)); }

RMatrix relator_kernel(const RepPoint &h) { return null_space(relator_differential_matrix(h)); }

RMatrix centralizer_lie(const GroupPoint &t) {
  const int d = algebra_dim(t.n());
  return null_space(adjoint_matrix(t) - RMatrix::Identity(d, d));
}

// --- level sets ---------------------------------------------------------------

namespace {

RVector fiber_residual(const GroupPoint &t, const GroupPoint &eps) {
  const GroupPoint mismatch = t.inverse() * eps;
  try {
    return to_coords(log_map(mismatch));
  } catch (const BranchCutError &) {
    // Frobenius fallback: anti-Hermitian traceless part of t^{-1} eps.
    return to_coords(AlgebraVector(mismatch.matrix()));
  }
}

double fiber_error(const GroupPoint &t, const GroupPoint &eps) {
  return (eps.matrix() - t.matrix()).norm();
}

RepPoint step(const RepPoint &h, const RVector &delta, double scale) {
  const int n = h.n();
  const int d = algebra_dim(n);
  RepPoint out = h;
  for (std::size_t i = 0; i < h.components.size(); ++i)
    out.components[i] *=
        exp_map(from_coords(n, scale * delta.segment(static_cast<Eigen::Index>(i) * d, d)));
  return out;
}

} // namespace

RepPoint refine_fiber_point(const RepPoint &start, const GroupPoint &t,
                            const FiberSearchOptions &options) {
  RepPoint h = start;
  GroupPoint eps = relator_value(h);
  double err = fiber_error(t, eps);
  for (int iter = 0; iter < options.max_iterations && err > 1e-14; ++iter) {
    const RVector r = fiber_residual(t, eps);
    const RMatrix jac = adjoint_matrix(eps.inverse()) * relator_differential_matrix(h);
    Eigen::JacobiSVD<RMatrix> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTolerance);
    RVector delta = -svd.solve(r);
    const double norm = delta.norm();
    if (norm == 0.0)
      break;
    if (norm > options.max_step)
      delta *= options.max_step / norm;

    bool improved = false;
    for (double scale = 1.0; scale > 1e-4; scale *= 0.5) {
      RepPoint trial = step(h, delta, scale);
      GroupPoint trial_eps = relator_value(trial);
      const double trial_err = fiber_error(t, trial_eps);
      if (trial_err < err) {
        h = std::move(trial);
        eps = trial_eps;
        err = trial_err;
        improved = true;
        break;
      }
    }
    if (!improved)
      break;
  }
  if (!(err <= options.tolerance))
    throw ConvergenceError("refine_fiber_point: residual " + std::to_string(err) +
                           " above tolerance");
  return h;
}

RepPoint find_fiber_point(const GroupPoint &t, int genus, std::uint64_t seed,
                          const FiberSearchOptions &options) {
  const int n = t.n();
  const RepPoint trivial = RepPoint::identity(n, genus);
  if (fiber_error(t, GroupPoint::identity(n)) <= options.tolerance)
    return trivial;
  for (int attempt = 0; attempt < options.restarts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    try {
      return refine_fiber_point(random_rep_point(n, genus, rng), t, options);
    } catch (const ConvergenceError &) {
    }
  }
  throw ConvergenceError("find_fiber_point: no convergence after " +
                         std::to_string(options.restarts) + " restarts");
}

RepPoint witness_point(int n, int genus, int beta_index) {
  if (n < 2 || genus < 1 || beta_index < 1 || beta_index >= n)
    throw std::invalid_argument("witness_point: need n >= 2, genus >= 1, 1 <= k < n");
  CMatrix a, b;
  if (n == 2) {
    a = CMatrix::Zero(2, 2);
    a(0, 0) = Complex(0, 1);
    a(1, 1) = Complex(0, -1);
    b = CMatrix::Zero(2, 2);
    b(0, 1) = 1.0;
    b(1, 0) = -1.0;
  } else {
    // Clock^k and shift: C^k S C^{-k} S^{-1} = e^{2 pi i k / n} I.
    a = CMatrix::Zero(n, n);
    b = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      a(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * beta_index * j / n);
      b((j + 1) % n, j) = 1.0;
    }
  }
  RepPoint h = RepPoint::identity(n, genus);
  h.components[0] = GroupPoint(a);
  h.components[1] = GroupPoint(b);
  return h;
}

// --- verification -----------------------------------------------------------

VerificationReport verify_d_omega(int n, int genus, std::size_t samples, std::uint64_t seed,
                                  DifferenceScheme scheme, double tolerance) {
  const FormField omega = omega_form(n, genus);
  const FormField d_omega = numerical_d(omega, scheme);
  const FormField pulled_lambda = pullback(relator_smooth_map(n, genus), lambda_form(n));
  const ManifoldModel model = omega.domain();

  ResidualTracker full, level;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const RepPoint h = random_rep_point(n, genus, rng);
    const ManifoldPoint p = to_manifold_point(h);
    std::vector<Tangent> xs;
    for (int k = 0; k < 3; ++k)
      xs.push_back(to_tangent(random_rep_tangent(n, genus, rng)));
    full.add(d_omega(p, xs) + pulled_lambda(p, xs));

    const RMatrix kernel = relator_kernel(h);
    std::vector<Tangent> ks;
    for (int k = 0; k < 3; ++k)
      ks.push_back(unit_combination(kernel, rng));
    level.add(d_omega(p, ks));
  }
  VerificationReport report;
  report.add(make_upper_check("rep.d_omega", "d omega + eps_R^* lambda = 0 on G^{2g}",
                              "d omega = -eps_R^* lambda", full, tolerance, seed));
  report.add(make_upper_check("rep.d_omega_level_set",
                              "d omega = 0 on triples tangent to the level set of eps_R",
                              "d omega = 0 on ker d eps_R", level, tolerance, seed));
  return report;
}

VerificationReport verify_conjugation_invariance(int n, int genus, std::size_t samples,
                                                 std::uint64_t seed, double tolerance) {
  ResidualTracker t;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const RepPoint h = random_rep_point(n, genus, rng);
    const GroupPoint g = random_group_point(n, rng);
    const RepTangent x = random_rep_tangent(n, genus, rng);
    const RepTangent y = random_rep_tangent(n, genus, rng);
    t.add(omega_eval(conj_action(g, h), conj_tangent(g, x), conj_tangent(g, y)) - omega_eval(h, x, y));
  }
  VerificationReport report;
  report.add(make_upper_check("rep.invariance", "omega is invariant under simultaneous conjugation",
                              "omega(s h s^-1; Ad_s X, Ad_s Y) = omega(h; X, Y)", t, tolerance, seed));
  return report;
}

VerificationReport verify_contraction(int n, int genus, std::size_t samples, std::uint64_t seed,
                                      double tolerance) {
  const Word relator = surface_relator(genus);
  ResidualTracker contraction, horizontal;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const RepPoint h = random_rep_point(n, genus, rng);
    const AlgebraVector eta = random_algebra_vector(n, rng);
    const RepTangent x = random_rep_tangent(n, genus, rng);
    const GroupPoint eps = relator_value(h);
    const double lhs = omega_eval(h, conj_vector_field(eta, h), x);
    const double rhs = theta_eta_eval(eta, eps, word_differential_left(relator, h, x));
    contraction.add(lhs - rhs);

    // h lies on the level set of t = eps_R(h); eta ranges over Lie(Z_t).
    const RMatrix fixed = centralizer_lie(eps);
    const RMatrix kernel = relator_kernel(h);
    if (fixed.cols() == 0 || kernel.cols() == 0)
      continue;
    const AlgebraVector eta_t = from_coords(n, unit_combination(fixed, rng));
    const RepTangent along = rep_tangent_from(n, unit_combination(kernel, rng));
    horizontal.add(omega_eval(h, conj_vector_field(eta_t, h), along));
  }
  VerificationReport report;
  report.add(make_upper_check("rep.contraction", "i_eta omega = eps_R^* theta_eta",
                              "i_eta omega = eps_R^* theta_eta", contraction, tolerance, seed));
  report.add(make_upper_check("rep.horizontal",
                              "i_eta omega vanishes on ker d eps_R for eta in Lie(Z_t)",
                              "i_eta omega = 0 on ker d eps_R when Ad_t eta = eta", horizontal, tolerance,
                              seed));
  return report;
}

} // namespace flatsym
