#include "doctest.h"

#include <cmath>
#include <numbers>

#include "flatsym/lie.hpp"
#include "flatsym/linalg.hpp"
#include "flatsym/quadrature.hpp"
#include "oracles.hpp"

using namespace flatsym;

namespace {

AlgebraVector e(int k) { return AlgebraVector(oracle::e(k)); }

} // namespace

TEST_SUITE("lie") {
  TEST_CASE("inner product and bracket on the Pauli basis") {
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        CHECK(inner(e(a), e(b)) == doctest::Approx(a == b ? 0.5 : 0.0));
    CHECK((bracket(e(1), e(2)) - e(3)).norm() < 1e-15);
    CHECK((bracket(e(2), e(3)) - e(1)).norm() < 1e-15);
    CHECK((bracket(e(3), e(1)) - e(2)).norm() < 1e-15);
  }

  TEST_CASE("projection onto su(n)") {
    oracle::CMat m(2, 2);
    m << 1.0, 2.0, oracle::I, 3.0;
    const AlgebraVector a(m);
    CHECK((a.matrix() + a.matrix().adjoint()).norm() < 1e-15);
    CHECK(std::abs(a.matrix().trace()) < 1e-15);
  }

  TEST_CASE("exp of i pi sigma3 is -I") {
    const GroupPoint g = exp_map(AlgebraVector(oracle::I * std::numbers::pi * oracle::pauli(3)));
    CHECK((g.matrix() + oracle::CMat::Identity(2, 2)).norm() < 1e-14);
  }

  TEST_CASE("exp agrees with a Taylor-series oracle") {
    Rng rng(3);
    for (int n : {2, 3, 4}) {
      for (int k = 0; k < 10; ++k) {
        const AlgebraVector a = random_algebra_vector(n, rng, 1.5);
        CHECK((exp_map(a).matrix() - oracle::expm(a.matrix())).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("log inverts exp away from the cut") {
    Rng rng(4);
    for (int n : {2, 3}) {
      for (int k = 0; k < 20; ++k) {
        const AlgebraVector a = random_algebra_vector(n, rng, 0.5);
        CHECK((log_map(exp_map(a)) - a).norm() < 1e-12);
        const GroupPoint g = random_group_point(n, rng);
        CHECK((exp_map(log_map(g)).matrix() - g.matrix()).norm() < 1e-10);
      }
    }
  }

  TEST_CASE("log throws on the branch cut") {
    CHECK_THROWS_AS(log_map(GroupPoint(-oracle::CMat::Identity(2, 2))), BranchCutError);
  }

  TEST_CASE("dexp matches a finite difference of the oracle exponential") {
    Rng rng(5);
    const double t = 1e-5;
    for (int n : {2, 3}) {
      for (int k = 0; k < 10; ++k) {
        const AlgebraVector lam = random_algebra_vector(n, rng, 1.0);
        const AlgebraVector z = random_algebra_vector(n, rng, 1.0);
        const oracle::CMat fd = (oracle::expm(lam.matrix() + t * z.matrix()) -
                                 oracle::expm(lam.matrix() - t * z.matrix())) /
                                (2 * t);
        const oracle::CMat expected = oracle::expm(-lam.matrix()) * fd;
        CHECK((dexp_left(lam, z).matrix() - expected).norm() < 1e-8);
        CHECK((dexp_left_matrix(lam) * to_coords(z) - to_coords(dexp_left(lam, z))).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("adjoint action") {
    Rng rng(6);
    const GroupPoint g = random_group_point(3, rng);
    const AlgebraVector a = random_algebra_vector(3, rng);
    const AlgebraVector b = random_algebra_vector(3, rng);
    const oracle::CMat expected = g.matrix() * a.matrix() * g.matrix().adjoint();
    CHECK((adjoint(g, a).matrix() - expected).norm() < 1e-13);
    CHECK(inner(adjoint(g, a), adjoint(g, b)) == doctest::Approx(inner(a, b)));
    const RMatrix ad = adjoint_matrix(g);
    CHECK((ad.transpose() * ad - RMatrix::Identity(8, 8)).norm() < 1e-12);
  }

  TEST_CASE("orthonormal basis and coordinates") {
    for (int n : {2, 3, 4}) {
      const auto &basis = algebra_basis(n);
      REQUIRE(static_cast<int>(basis.size()) == algebra_dim(n));
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
          CHECK(inner(basis[a], basis[b]) == doctest::Approx(a == b ? 1.0 : 0.0));
      Rng rng(n);
      const AlgebraVector x = random_algebra_vector(n, rng);
      CHECK((from_coords(n, to_coords(x)) - x).norm() < 1e-14);
    }
  }

  TEST_CASE("Haar samples are special unitary") {
    Rng rng(8);
    for (int n : {2, 3, 5}) {
      const GroupPoint g = random_group_point(n, rng);
      CHECK(g.unitarity_defect() < 1e-13);
      CHECK(g.determinant_defect() < 1e-13);
    }
    CHECK(random_group_point(3, 11).matrix() == random_group_point(3, 11).matrix());
  }

  TEST_CASE("center elements") {
    const auto c = center_elements(3);
    REQUIRE(c.size() == 3);
    const std::complex<double> w = std::polar(1.0, 2 * std::numbers::pi / 3);
    CHECK((c[1].matrix() - w * oracle::CMat::Identity(3, 3)).norm() < 1e-14);
  }

  TEST_CASE("derive_seed spreads indices") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 9) == derive_seed(5, 9));
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("rank, null space and complement") {
    RMatrix m(3, 4);
    m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1;
    CHECK(numerical_rank(m) == 2);
    const RMatrix k = null_space(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).norm() < 1e-12);
    CHECK(column_space(m).cols() == 2);
    const RMatrix space = RMatrix::Identity(4, 4);
    const RMatrix comp = complement_within(space, k);
    CHECK(comp.cols() == 2);
    CHECK((k.transpose() * comp).norm() < 1e-12);
  }

  TEST_CASE("roundoff-sized matrices have rank zero") {
    CHECK(numerical_rank(1e-15 * RMatrix::Identity(3, 3)) == 0);
    CHECK(numerical_rank(RMatrix(0, 3)) == 0);
    CHECK(std::isinf(smallest_singular_value(RMatrix(0, 0))));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    for (int order : {1, 4, 8, 24}) {
      const QuadratureRule q = gauss_legendre_unit(order);
      for (int k = 0; k <= 2 * order - 1; ++k) {
        double sum = 0;
        for (std::size_t i = 0; i < q.points.size(); ++i)
          sum += q.weights[i] * std::pow(q.points[i], k);
        CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
      }
    }
  }
}
