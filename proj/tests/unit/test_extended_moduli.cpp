#include "doctest.h"

#include "flatsym/extended_moduli.hpp"
#include "flatsym/linalg.hpp"
#include "oracles.hpp"

using namespace flatsym;

namespace {

/// sigma by the trapezoid rule on a fine grid with dexp from the oracle
/// exponential.
double sigma_trapezoid(const AlgebraVector &lam, const AlgebraVector &z1, const AlgebraVector &z2) {
  const auto dexp = [](const oracle::CMat &l, const oracle::CMat &z) {
    const double t = 1e-5;
    return oracle::CMat(oracle::expm(-l) * (oracle::expm(l + t * z) - oracle::expm(l - t * z)) /
                        (2 * t));
  };
  const int steps = 2000;
  double sum = 0;
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const oracle::CMat tl = t * lam.matrix();
    const oracle::CMat a = dexp(tl, z1.matrix());
    const oracle::CMat b = dexp(tl, z2.matrix());
    const double f = t * t * oracle::inner(lam.matrix(), a * b - b * a);
    sum += (k == 0 || k == steps ? 0.5 : 1.0) * f;
  }
  return sum / steps;
}

} // namespace

TEST_SUITE("extended_moduli") {
  TEST_CASE("sigma against an independent quadrature") {
    Rng rng(31);
    for (int n : {2, 3}) {
      const AlgebraVector lam = random_algebra_vector(n, rng, 0.8);
      const AlgebraVector z1 = random_algebra_vector(n, rng);
      const AlgebraVector z2 = random_algebra_vector(n, rng);
      CHECK(sigma_eval(lam, z1, z2) == doctest::Approx(sigma_trapezoid(lam, z1, z2)).epsilon(1e-6));
      CHECK(sigma_eval(lam, z1, z2) == doctest::Approx(-sigma_eval(lam, z2, z1)));
    }
    CHECK(sigma_eval(AlgebraVector::zero(2), AlgebraVector(oracle::e(1)),
                     AlgebraVector(oracle::e(2))) == 0.0);
  }

  TEST_CASE("central beta") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    CHECK((s.beta.matrix() + oracle::CMat::Identity(2, 2)).norm() < 1e-14);
    CHECK(s.ambient_dim() == 15);
  }

  TEST_CASE("witness lies on the zero level") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    const ExtendedPoint p = extended_witness(s, 1);
    CHECK(constraint_residual(s, p) < 1e-14);
    CHECK(moment_map(p).norm() == 0.0);
  }

  TEST_CASE("tangent basis at the witness") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    const ExtendedPoint p = extended_witness(s, 1);
    const TangentBasis b = tangent_basis(p);
    CHECK(b.vectors.size() == 12);
    CHECK(b.surjective);
    CHECK(b.image_rank == 3);
    CHECK((b.coords.transpose() * b.coords - RMatrix::Identity(12, 12)).norm() < 1e-12);
    for (const auto &v : b.vectors)
      CHECK(linear_constraint_residual(p, v) < 1e-12);
    CHECK((constraint_jacobian(p) * b.coords).norm() < 1e-12);
  }

  TEST_CASE("chart retraction stays on the constraint and differentiates exactly") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    Rng rng(32);
    const ExtendedPoint p = random_extended_point(s, rng);
    REQUIRE(constraint_residual(s, p) < 1e-10);
    const ConstraintChart chart = make_chart(s, p);
    REQUIRE(chart.dim() == 12);

    const RVector u = 0.05 * RVector::Random(12);
    const ExtendedPoint q = chart.retract(u);
    CHECK(constraint_residual(s, q) < 1e-11);

    const RVector v = RVector::Random(12);
    const ExtendedTangent dq = chart.differential(u, q, v);
    CHECK(linear_constraint_residual(q, dq) < 1e-9);

    // Compare with central differences of the retraction, read off in the
    // left trivialization at q.
    const double t = 1e-5;
    const ExtendedPoint qp = chart.retract(u + t * v);
    const ExtendedPoint qm = chart.retract(u - t * v);
    for (std::size_t i = 0; i < q.h.components.size(); ++i) {
      const oracle::CMat diff =
          q.h.components[i].matrix().adjoint() *
          (qp.h.components[i].matrix() - qm.h.components[i].matrix()) / (2 * t);
      CHECK((dq.H.components[i].matrix() - diff).norm() < 1e-7);
    }
    const oracle::CMat dl = (qp.Lambda.matrix() - qm.Lambda.matrix()) / (2 * t);
    CHECK((dq.zeta.matrix() - dl).norm() < 1e-7);
  }

  TEST_CASE("chart origin is the base point") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    const ExtendedPoint p = extended_witness(s, 1);
    const ConstraintChart chart = make_chart(s, p);
    const ExtendedPoint q = chart.retract(RVector::Zero(chart.dim()));
    for (std::size_t i = 0; i < p.h.components.size(); ++i)
      CHECK((q.h.components[i].matrix() - p.h.components[i].matrix()).norm() < 1e-13);
    CHECK(q.Lambda.norm() < 1e-13);
  }

  TEST_CASE("moment map and conjugation") {
    const ExtendedSpace s = ExtendedSpace::central(3, 2, 1);
    Rng rng(33);
    const ExtendedPoint p = random_extended_point(s, rng);
    CHECK((moment_map(p) - 2.0 * p.Lambda).norm() == 0.0);
    const GroupPoint g = random_group_point(3, rng);
    const ExtendedPoint q = conj_action(g, p);
    CHECK((moment_map(q) - adjoint(g, moment_map(p))).norm() < 1e-13);
    CHECK(constraint_residual(s, q) < 1e-10);
    const AlgebraVector eta = random_algebra_vector(3, rng);
    CHECK(linear_constraint_residual(p, extended_conj_field(eta, p)) < 1e-10);
  }

  TEST_CASE("gram matrix and reduced form at the witness") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    const ExtendedPoint p = extended_witness(s, 1);
    const RMatrix g = gram_matrix(p);
    CHECK(g.rows() == 12);
    CHECK(g.cols() == 12);
    CHECK((g + g.transpose()).norm() < 1e-12);
    CHECK(smallest_singular_value(g) > 1e-6);
    const ReducedForm r = reduced_form(p);
    CHECK(r.kernel_dim == 9);
    CHECK(r.orbit_dim == 3);
    CHECK(r.dimension == 6);
    CHECK(r.rank == 6);
  }

  TEST_CASE("neighbours on the zero level") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    const auto pts = zero_level_neighbors(s, extended_witness(s, 1), 4, 5);
    CHECK(pts.size() == 4);
    for (const auto &p : pts) {
      CHECK(constraint_residual(s, p) < 1e-10);
      CHECK(p.Lambda.norm() == 0.0);
    }
  }

  TEST_CASE("verifiers at small sample counts") {
    const ExtendedSpace s = ExtendedSpace::central(2, 2, 1);
    VerificationReport r = verify_sigma_closed(2, 3, 1, {1e-4, 4});
    r.append(verify_sigma_contraction(s, 3, 2));
    r.append(verify_homotopy_theta(s, 3, 3));
    r.append(verify_closed_in_charts(s, 1, 4, {1e-4, 4}));
    r.append(verify_moment(s, 3, 5));
    r.append(verify_nondegeneracy(s, 1, 2, 6));
    for (const auto &c : r.checks)
      CHECK_MESSAGE(c.pass, c.id << " " << c.max_residual);
  }
}
