#include "doctest.h"

#include <cmath>

#include "flatsym/bar_forms.hpp"
#include "flatsym/forms.hpp"
#include "oracles.hpp"

using namespace flatsym;

namespace {

ManifoldPoint at(const RVector &v) { return {{v}}; }

RVector vec(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs)
    v(i++) = x;
  return v;
}

} // namespace

TEST_SUITE("forms") {
  TEST_CASE("central differences of increasing order") {
    const auto f = [](double t) { return std::sin(1.0 + t); };
    for (int order : {2, 4, 6}) {
      const double d = central_difference(f, {1e-3, order});
      CHECK(d == doctest::Approx(std::cos(1.0)).epsilon(1e-5));
    }
    CHECK(std::abs(central_difference(f, {0.1, 6}) - std::cos(1.0)) <
          std::abs(central_difference(f, {0.1, 2}) - std::cos(1.0)));
  }

  TEST_CASE("wedge convention on coordinate forms") {
    const ManifoldModel r3({Factor::vector_space(3)});
    const FormField dxdy = coordinate_form(r3, {0, 1}, [](const RVector &) { return 1.0; });
    const RVector p = RVector::Zero(3);
    CHECK(dxdy(at(p), {vec({1, 0, 0}), vec({0, 1, 0})}) == doctest::Approx(1.0));
    CHECK(dxdy(at(p), {vec({0, 1, 0}), vec({1, 0, 0})}) == doctest::Approx(-1.0));
    CHECK(dxdy(at(p), {vec({1, 2, 3}), vec({4, 5, 6})}) == doctest::Approx(1 * 5 - 2 * 4));
  }

  TEST_CASE("homotopy operator of dx ^ dy") {
    // (I b)_v(z) = int_0^1 t (v1 z2 - v2 z1) dt = (v1 z2 - v2 z1) / 2.
    const ManifoldModel r2({Factor::vector_space(2)});
    const FormField b = coordinate_form(r2, {0, 1}, [](const RVector &) { return 1.0; });
    const FormField ib = homotopy_operator(b, 4);
    CHECK(ib.degree() == 1);
    const RVector v = vec({0.3, -1.2});
    const RVector z = vec({2.0, 0.5});
    CHECK(ib(at(v), {z}) == doctest::Approx((v(0) * z(1) - v(1) * z(0)) / 2).epsilon(1e-14));
  }

  TEST_CASE("exterior derivative of a function is its gradient") {
    const ManifoldModel r2({Factor::vector_space(2)});
    const FormField f(0, r2, [](const ManifoldPoint &p, std::span<const Tangent>) {
      const RVector &x = p.vec(0);
      return x(0) * x(0) * x(1) + std::sin(x(1));
    });
    const RVector x = vec({0.7, -0.4});
    const RVector z = vec({1.5, 2.0});
    const double grad = 2 * x(0) * x(1) * z(0) + (x(0) * x(0) + std::cos(x(1))) * z(1);
    CHECK(numerical_d(f, {1e-4, 4})(at(x), {z}) == doctest::Approx(grad).epsilon(1e-9));
    CHECK(chart_d(f, {1e-4, 4})(at(x), {z}) == doctest::Approx(grad).epsilon(1e-9));
  }

  TEST_CASE("d of a closed form vanishes") {
    // d(x dy - y dx) = 2 dx ^ dy, and d(2 dx ^ dy) = 0.
    const ManifoldModel r3({Factor::vector_space(3)});
    const FormField a = coordinate_form(r3, {1}, [](const RVector &x) { return x(0); }) -
                        coordinate_form(r3, {0}, [](const RVector &x) { return x(1); });
    const RVector p = vec({0.2, 0.1, -0.3});
    const RVector u = vec({1, 0.5, 0.2});
    const RVector v = vec({-0.3, 1, 0.7});
    const double expected = 2 * (u(0) * v(1) - u(1) * v(0));
    CHECK(numerical_d(a, {1e-3, 4})(at(p), {u, v}) == doctest::Approx(expected).epsilon(1e-9));
    const FormField dda = chart_d(chart_d(a, {1e-3, 4}), {1e-3, 4});
    CHECK(std::abs(dda(at(p), {u, v, vec({0, 0, 1})})) < 1e-8);
  }

  TEST_CASE("random polynomial forms are alternating and multilinear") {
    Rng rng(12);
    const FormField w = random_polynomial_form(4, 3, 4, rng);
    const ManifoldPoint p = at(RVector::Random(4));
    std::vector<Tangent> xs = {RVector::Random(4), RVector::Random(4), RVector::Random(4)};
    CHECK(alternation_defect(w, p, xs) < 1e-12);
    CHECK(linearity_defect(w, p, xs, RVector::Random(4), 0.7, -1.3) < 1e-12);
  }

  TEST_CASE("Poincare lemma on random polynomial forms") {
    const VerificationReport r = verify_poincare_lemma(10, 99);
    REQUIRE(r.find("forms.poincare"));
    CHECK(r.find("forms.poincare")->pass);
    CHECK(r.find("forms.poincare")->max_residual < 1e-10);
  }

  TEST_CASE("interior product and pullback on a linear map") {
    const ManifoldModel r2({Factor::vector_space(2)});
    const FormField dxdy = coordinate_form(r2, {0, 1}, [](const RVector &) { return 1.0; });
    const VectorFieldModel field{r2, [](const ManifoldPoint &) { return vec({1, 0}); }};
    const FormField dy = interior_product(field, dxdy);
    CHECK(dy(at(vec({0, 0})), {vec({3, 4})}) == doctest::Approx(4.0));

    // phi(x, y) = (2x, 3y) scales dx ^ dy by 6.
    const SmoothMap phi{r2, r2,
                        [](const ManifoldPoint &p) {
                          return at(vec({2 * p.vec(0)(0), 3 * p.vec(0)(1)}));
                        },
                        {}};
    const FormField pulled = pullback(phi, dxdy);
    CHECK(pulled(at(vec({0.1, 0.2})), {vec({1, 0}), vec({0, 1})}) ==
          doctest::Approx(6.0).epsilon(1e-8));
  }
}

TEST_SUITE("bar_forms") {
  TEST_CASE("lambda on the Pauli basis") {
    const GroupPoint id = GroupPoint::identity(2);
    const AlgebraVector e1(oracle::e(1)), e2(oracle::e(2)), e3(oracle::e(3));
    CHECK(lambda_eval(id, e1, e2, e3) == doctest::Approx(0.5));
    CHECK(lambda_eval(id, e2, e1, e3) == doctest::Approx(-0.5));
  }

  TEST_CASE("Omega and theta closed forms") {
    Rng rng(21);
    const GroupPoint g1 = random_group_point(2, rng);
    const GroupPoint g2 = random_group_point(2, rng);
    const AlgebraVector z1 = random_algebra_vector(2, rng), z2 = random_algebra_vector(2, rng);
    const AlgebraVector w1 = random_algebra_vector(2, rng), w2 = random_algebra_vector(2, rng);
    const oracle::CMat g = g2.matrix();
    const double expected = oracle::inner(z1.matrix(), g * w2.matrix() * g.adjoint()) -
                            oracle::inner(w1.matrix(), g * z2.matrix() * g.adjoint());
    CHECK(omega_pair_eval(g1, g2, z1, z2, w1, w2) == doctest::Approx(expected));

    const AlgebraVector eta = random_algebra_vector(2, rng);
    const double theta = oracle::inner(eta.matrix(), z1.matrix() + g * z1.matrix() * g.adjoint());
    CHECK(theta_eta_eval(eta, g2, z1) == doctest::Approx(theta));
    const oracle::CMat gen = g.adjoint() * eta.matrix() * g - eta.matrix();
    CHECK((conjugation_generator(eta, g2).matrix() - gen).norm() < 1e-14);
  }

  TEST_CASE("bar identities at small sample counts") {
    for (int n : {2, 3}) {
      const VerificationReport r = verify_bar_identities(n, 5, 17, {1e-4, 4});
      REQUIRE(r.checks.size() == 4);
      for (const auto &c : r.checks)
        CHECK_MESSAGE(c.pass, c.id << " " << c.max_residual);
    }
  }
}
