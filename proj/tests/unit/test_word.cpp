#include "doctest.h"

#include <random>

#include "flatsym/word.hpp"

using namespace flatsym;

namespace {

Word w(std::string_view s, int genus = 2) { return parse_word(s, genus); }

GroupRingElement ring(std::initializer_list<std::pair<const char *, int>> terms, int genus = 2) {
  GroupRingElement out;
  for (const auto &[word, c] : terms)
    out.add_term(w(word, genus), c);
  return out;
}

} // namespace

TEST_SUITE("word") {
  TEST_CASE("parser reduces and expands commutators") {
    CHECK(w("x1*x1^-1").is_identity());
    CHECK(w("").is_identity());
    CHECK(w("1").is_identity());
    CHECK(w("[x1,x2]").str() == "x1*x2*x1^-1*x2^-1");
    CHECK(w("x1^2*x2^-1").str() == "x1*x1*x2^-1");
    CHECK(w(" x3 * x4 ^ -2 ").length() == 3);
    CHECK(w("x1*x2*x2^-1*x1^-1*x3").str() == "x3");
  }

  TEST_CASE("parser rejects bad input") {
    CHECK_THROWS_AS(w("x1**x2"), ParseError);
    CHECK_THROWS_AS(w("y1"), ParseError);
    CHECK_THROWS_AS(w("[x1,x2"), ParseError);
    CHECK_THROWS_AS(w("x1^0"), ParseError);
    CHECK_THROWS_AS(w("x5", 2), std::out_of_range);
    CHECK_THROWS_AS(w("x0", 2), std::out_of_range);
  }

  TEST_CASE("word group operations") {
    const Word a = w("x1*x2^-1*x3");
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
    CHECK(Word::generator(2, -1).str() == "x2^-1");
    CHECK(Word{}.str() == "1");
  }

  TEST_CASE("surface relator") {
    for (int g = 1; g <= 5; ++g)
      CHECK(surface_relator(g).length() == static_cast<std::size_t>(4 * g));
    CHECK(surface_relator(2).str() == "x1*x2*x1^-1*x2^-1*x3*x4*x3^-1*x4^-1");
  }

  TEST_CASE("group ring arithmetic") {
    const GroupRingElement a = ring({{"x1", 2}, {"1", -1}});
    const GroupRingElement b = ring({{"x1^-1", 1}, {"x2", 3}});
    const GroupRingElement prod = a * b;
    CHECK(prod == ring({{"1", 2}, {"x1*x2", 6}, {"x1^-1", -1}, {"x2", -3}}));
    CHECK((a - a).is_zero());
    CHECK((a + (-a)).is_zero());
    CHECK(prod.coefficient(w("x1*x2")) == 6);
    CHECK(prod.coefficient(w("x3")) == 0);
  }

  TEST_CASE("Fox derivatives of a commutator") {
    const Word r = w("[x1,x2]");
    CHECK(fox_derivative(r, 1, 2) == ring({{"1", 1}, {"x1*x2*x1^-1", -1}}));
    CHECK(fox_derivative(r, 2, 2) == ring({{"x1", 1}, {"x1*x2*x1^-1*x2^-1", -1}}));
    CHECK(fox_derivative(r, 3, 2).is_zero());
    CHECK_THROWS_AS(fox_derivative(r, 5, 2), std::out_of_range);
  }

  TEST_CASE("Fox derivative of powers and inverses") {
    CHECK(fox_derivative(w("x1^3"), 1, 1) == ring({{"1", 1}, {"x1", 1}, {"x1*x1", 1}}, 1));
    CHECK(fox_derivative(w("x1^-1"), 1, 1) == ring({{"x1^-1", -1}}, 1));
    CHECK(fox_derivative(Word{}, 1, 1).is_zero());
  }

  TEST_CASE("relator chain") {
    CHECK(relator_chain(1).size() == 4);
    CHECK(relator_chain(2).size() == 8);
    for (int g = 1; g <= 4; ++g) {
      const GroupRingElement expected = GroupRingElement::one() - GroupRingElement(surface_relator(g));
      CHECK(chain_boundary(relator_chain(g)) == expected);
      CHECK(verify_goldman(g));
      CHECK(relator_chain_terms(g).size() == relator_chain(g).size());
    }
  }

  TEST_CASE("boundary detects a corrupted chain") {
    Chain2 c = relator_chain(2);
    c.add_term(w("x1"), w("x2"), 1);
    const GroupRingElement expected = GroupRingElement::one() - GroupRingElement(surface_relator(2));
    CHECK_FALSE(chain_boundary(c) == expected);
  }

  TEST_CASE("boundary of a single pair") {
    Chain2 c;
    c.add_term(w("x1"), w("x2"), 1);
    CHECK(chain_boundary(c) == ring({{"x2", 1}, {"x1*x2", -1}, {"x1", 1}}));
  }

  TEST_CASE("Fox fundamental identity on random words") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
      const Word word = random_word(rng, 3, k % 41);
      CHECK(fox_fundamental_defect(word, 3).is_zero());
    }
  }
}
