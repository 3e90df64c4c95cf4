#include "doctest.h"

#include "flatsym/cohomology.hpp"
#include "flatsym/linalg.hpp"

using namespace flatsym;

TEST_SUITE("cohomology") {
  TEST_CASE("relator map equals the differential of the relator") {
    Rng rng(41);
    for (int n : {2, 3}) {
      const RepPoint h = random_rep_point(n, 2, rng);
      const RepTangent x = random_rep_tangent(n, 2, rng);
      const CochainC1 u = cochain_of_tangent(x, h);
      CHECK((relator_map(u, h) - word_differential(surface_relator(2), h, x)).norm() < 1e-12);
      CHECK((cochain_value(u, surface_relator(2), h) - relator_map(u, h)).norm() < 1e-12);
      const RepTangent back = tangent_of_cochain(u, h);
      for (std::size_t i = 0; i < x.components.size(); ++i)
        CHECK((back.components[i] - x.components[i]).norm() < 1e-13);
    }
  }

  TEST_CASE("cochain value is a crossed homomorphism") {
    Rng rng(42);
    std::mt19937_64 wrng(43);
    const RepPoint h = random_rep_point(2, 2, rng);
    const CochainC1 u = cochain_from(2, RVector::Random(12));
    const Word a = random_word(wrng, 2, 7);
    const Word b = random_word(wrng, 2, 5);
    const AlgebraVector lhs = cochain_value(u, a * b, h);
    const AlgebraVector rhs = cochain_value(u, a, h) + adjoint(eval_word(a, h), cochain_value(u, b, h));
    CHECK((lhs - rhs).norm() < 1e-12);
  }

  TEST_CASE("conjugation field maps to a coboundary") {
    Rng rng(44);
    const RepPoint h = random_rep_point(2, 2, rng);
    const AlgebraVector eta = random_algebra_vector(2, rng);
    const CochainC1 u = cochain_of_tangent(conj_vector_field(eta, h), h);
    const CochainC1 v = coboundary0(eta, h);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      CHECK((u.values[i] - v.values[i]).norm() < 1e-13);
    // Restricted to R, a coboundary is the cyclic coboundary eta - Ad_eps eta.
    const GroupPoint eps = relator_value(h);
    CHECK((relator_map(v, h) - (eta - adjoint(eps, eta))).norm() < 1e-12);
    const RMatrix cyclic = RMatrix::Identity(3, 3) - adjoint_matrix(eps);
    CHECK((relator_map_matrix(h) * coboundary_matrix(h) - cyclic).norm() < 1e-12);
  }

  TEST_CASE("summary at the trivial point") {
    const ComplexSummary s = summary(RepPoint::identity(2, 2));
    CHECK(s.h0_free == 3);
    CHECK(s.h1_free == 12);
    CHECK(s.h0_cyclic == 3);
    CHECK(s.h1_cyclic == 3);
    CHECK(s.h1_relative == 12);
    CHECK(s.h2_relative == 3);
    CHECK(s.euler == 0);
    CHECK(s.exactness_defect == 0);
    CHECK(s.duality_defect == 0);
    CHECK(s.b1_dim == 0);
  }

  TEST_CASE("summary at the witness and at a random point") {
    const ComplexSummary w = summary(witness_point(2, 2, 1));
    CHECK(w.h0_free == 0);
    CHECK(w.h1_free == 9);
    CHECK(w.h2_relative == 0);
    CHECK(w.b1_dim == 3);
    Rng rng(45);
    for (int n : {2, 3}) {
      const ComplexSummary r = summary(random_rep_point(n, 2, rng));
      CHECK(r.h0_free == 0);
      CHECK(r.h1_free == 3 * algebra_dim(n));
      CHECK(r.h1_cyclic == n - 1);
      CHECK(r.euler == 0);
      CHECK(r.exactness_defect == 0);
      CHECK(r.duality_defect == 0);
    }
  }

  TEST_CASE("cup product is half of omega on the kernel") {
    Rng rng(46);
    const RepPoint h = random_rep_point(2, 2, rng);
    const RMatrix kernel = null_space(relator_map_matrix(h));
    REQUIRE(kernel.cols() == 9);
    const RepTangent x = random_rep_tangent(2, 2, rng);
    const CochainC1 v = cochain_from(2, kernel * RVector::Random(kernel.cols()));
    const CochainC1 u = cochain_of_tangent(x, h);
    const RepTangent y = tangent_of_cochain(v, h);
    CHECK(2 * cup_pairing(u, v, h) == doctest::Approx(omega_eval(h, x, y)));
  }

  TEST_CASE("pairing at the witness") {
    const PairingAnalysis a = pairing_analysis(witness_point(2, 2, 1));
    CHECK(a.surjective);
    CHECK(a.dimension == 6);
    CHECK(a.rank == 6);
    CHECK(a.smallest_singular_value > 1e-8);
    const PairingAnalysis id = pairing_analysis(RepPoint::identity(2, 2));
    CHECK_FALSE(id.surjective);
  }

  TEST_CASE("verifiers at small sample counts") {
    VerificationReport r = verify_cup_equals_omega(3, 2, 3, 1);
    r.append(verify_long_exact_sequence(2, 3, 3, 2));
    for (const auto &c : r.checks)
      CHECK_MESSAGE(c.pass, c.id << " " << c.max_residual);
  }
}
