#include "flatsym/bar_forms.hpp"

#include <cmath>

namespace flatsym {

double lambda_eval(const GroupPoint &, const AlgebraVector &x1, const AlgebraVector &x2,
                   const AlgebraVector &x3) {
  // (1/6) sum_sigma sign(sigma) <x_s1, [x_s2, x_s3]> collapses to a single
  // term by ad-invariance of the inner product.
  return inner(x1, bracket(x2, x3));
}

double omega_pair_eval(const GroupPoint &, const GroupPoint &g2, const AlgebraVector &z1,
                       const AlgebraVector &z2, const AlgebraVector &w1, const AlgebraVector &w2) {
  return inner(z1, adjoint(g2, w2)) - inner(w1, adjoint(g2, z2));
}

double theta_eta_eval(const AlgebraVector &eta, const GroupPoint &g, const AlgebraVector &z) {
  return inner(eta, z + adjoint(g, z));
}

AlgebraVector conjugation_generator(const AlgebraVector &eta, const GroupPoint &g) {
  return adjoint(g.inverse(), eta) - eta;
}

FormField lambda_form(int n) {
  const ManifoldModel model = ManifoldModel::group_power(n, 1);
  return FormField(3, model, [model](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return lambda_eval(p.group(0), tangent_component(model, xs[0], 0),
                       tangent_component(model, xs[1], 0), tangent_component(model, xs[2], 0));
  });
}

FormField big_omega_form(int n) {
  const ManifoldModel model = ManifoldModel::group_power(n, 2);
  return FormField(2, model, [model](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return omega_pair_eval(p.group(0), p.group(1), tangent_component(model, xs[0], 0),
                           tangent_component(model, xs[0], 1), tangent_component(model, xs[1], 0),
                           tangent_component(model, xs[1], 1));
  });
}

FormField theta_form(const AlgebraVector &eta) {
  const ManifoldModel model = ManifoldModel::group_power(eta.n(), 1);
  return FormField(1, model, [model, eta](const ManifoldPoint &p, std::span<const Tangent> xs) {
    return theta_eta_eval(eta, p.group(0), tangent_component(model, xs[0], 0));
  });
}

VectorFieldModel conjugation_field(const AlgebraVector &eta, int copies) {
  const ManifoldModel model = ManifoldModel::group_power(eta.n(), copies);
  return {model, [model, eta](const ManifoldPoint &p) {
            std::vector<AlgebraVector> parts;
            parts.reserve(model.size());
            for (std::size_t i = 0; i < model.size(); ++i)
              parts.push_back(conjugation_generator(eta, p.group(i)));
            return make_tangent(parts);
          }};
}

SmoothMap multiplication_map(int n) {
  const ManifoldModel source = ManifoldModel::group_power(n, 2);
  const ManifoldModel target = ManifoldModel::group_power(n, 1);
  return {source, target,
          [](const ManifoldPoint &p) {
            ManifoldPoint q;
            q.factors.emplace_back(p.group(0) * p.group(1));
            return q;
          },
          [source](const ManifoldPoint &p, const Tangent &x) {
            const AlgebraVector z = adjoint(p.group(1).inverse(), tangent_component(source, x, 0)) +
                                    tangent_component(source, x, 1);
            return to_coords(z);
          }};
}

namespace {

/// Face map G^{p+1} -> G^p of the bar construction, with exact tangent map.
SmoothMap face_map(int n, int p, int i) {
  const ManifoldModel source = ManifoldModel::group_power(n, p + 1);
  const ManifoldModel target = ManifoldModel::group_power(n, p);
  auto point = [p, i](const ManifoldPoint &x) {
    ManifoldPoint y;
    for (int k = 0; k <= p; ++k) {
      if (i == 0 && k == 0)
        continue;
      if (i == p + 1 && k == p)
        continue;
      if (i >= 1 && i <= p && k == i - 1) {
        y.factors.emplace_back(x.group(k) * x.group(k + 1));
        ++k;
        continue;
      }
      y.factors.emplace_back(x.group(k));
    }
    return y;
  };
  auto tangent = [source, p, i](const ManifoldPoint &x, const Tangent &v) {
    std::vector<AlgebraVector> parts;
    for (int k = 0; k <= p; ++k) {
      if (i == 0 && k == 0)
        continue;
      if (i == p + 1 && k == p)
        continue;
      if (i >= 1 && i <= p && k == i - 1) {
        parts.push_back(adjoint(x.group(k + 1).inverse(), tangent_component(source, v, k)) +
                        tangent_component(source, v, k + 1));
        ++k;
        continue;
      }
      parts.push_back(tangent_component(source, v, k));
    }
    return make_tangent(parts);
  };
  return {source, target, point, tangent};
}

} // namespace

FormField bar_delta(const FormField &b) {
  const ManifoldModel &domain = b.domain();
  const int p = static_cast<int>(domain.size());
  if (p < 1 || p > 2)
    throw std::invalid_argument("bar_delta: implemented for forms on G and G^2 only");
  for (const auto &f : domain.factors())
    if (f.kind != FactorKind::group || f.lie_n != domain.factor(0).lie_n)
      throw std::invalid_argument("bar_delta: domain must be a power of one group");
  const int n = domain.factor(0).lie_n;
  FormField acc = pullback(face_map(n, p, 0), b);
  for (int i = 1; i <= p + 1; ++i) {
    const FormField face = pullback(face_map(n, p, i), b);
    acc = i % 2 == 0 ? acc + face : acc - face;
  }
  return acc;
}

FormField bar_delta_lambda(int n) { return bar_delta(lambda_form(n)); }

VerificationReport verify_bar_identities(int n, std::size_t samples, std::uint64_t seed,
                                 DifferenceScheme scheme, double tolerance) {
  const ManifoldModel g1 = ManifoldModel::group_power(n, 1);
  const ManifoldModel g2 = ManifoldModel::group_power(n, 2);
  const FormField lambda = lambda_form(n);
  const FormField omega = big_omega_form(n);
  const FormField d_lambda = numerical_d(lambda, scheme);
  const FormField d_omega = numerical_d(omega, scheme);
  const FormField delta_lambda = bar_delta_lambda(n);

  ResidualTracker a, b, c, d;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const AlgebraVector eta = random_algebra_vector(n, rng);
    const FormField theta = theta_form(eta);
    const FormField d_theta = numerical_d(theta, scheme);
    const FormField delta_theta = bar_delta(theta);
    const FormField i_lambda = interior_product(conjugation_field(eta, 1), lambda);
    const FormField i_omega = interior_product(conjugation_field(eta, 2), omega);

    const ManifoldPoint p1 = random_point(g1, rng);
    const ManifoldPoint p2 = random_point(g2, rng);
    std::vector<Tangent> x1, x2;
    for (int k = 0; k < 4; ++k) {
      x1.push_back(random_tangent(g1, rng));
      x2.push_back(random_tangent(g2, rng));
    }

    a.add(d_lambda(p1, x1));
    b.add(d_omega(p2, {x2[0], x2[1], x2[2]}) - delta_lambda(p2, {x2[0], x2[1], x2[2]}));
    c.add(i_lambda(p1, {x1[0], x1[1]}) - d_theta(p1, {x1[0], x1[1]}));
    d.add(i_omega(p2, {x2[0]}) + delta_theta(p2, {x2[0]}));
  }

  const std::string group = "SU(" + std::to_string(n) + ")";
  VerificationReport report;
  report.add(make_upper_check("bar.d_lambda", "d lambda = 0 on " + group,
                              "d lambda = 0", a,
                              tolerance, seed));
  report.add(make_upper_check("bar.d_Omega", "d Omega = delta lambda on " + group,
                              "d Omega = delta lambda",
                              b, tolerance, seed));
  report.add(make_upper_check("bar.contract_lambda", "i_eta lambda = d theta_eta on " + group,
                              "i_eta lambda = d theta_eta",
                              c, tolerance, seed));
  report.add(make_upper_check("bar.contract_Omega", "i_eta Omega = -delta theta_eta on " + group,
                              "i_eta Omega = -delta theta_eta",
                              d, tolerance, seed));
  return report;
}

} // namespace flatsym
