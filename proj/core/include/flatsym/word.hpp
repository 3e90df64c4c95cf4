#pragma once

// Symbolic layer: reduced words in the free group on x1..x_{2g}, the integral
// group ring, Fox free derivatives, the surface relator and its fundamental
// 2-chain.

#include <compare>
#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flatsym {

using Integer = boost::multiprecision::cpp_int;

/// One letter x_i^{±1}; generators are 1-based.
struct Letter {
  int generator = 1;
  int sign = 1;

  Letter inverse() const { return {generator, -sign}; }
  auto operator<=>(const Letter &) const = default;
};

/// Freely reduced word. The empty word is the identity.
class Word {
public:
  Word() = default;

  /// Reduces on construction.
  explicit Word(std::vector<Letter> letters);

  static Word generator(int i, int sign = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  Word inverse() const;

  /// Canonical form, e.g. "x1*x2*x1^-1"; the identity prints as "1".
  std::string str() const;

  friend Word operator*(const Word &a, const Word &b);
  auto operator<=>(const Word &) const = default;
  bool operator==(const Word &) const = default;

private:
  std::vector<Letter> letters_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses `word := term ('*' term)*`,
/// `term := 'x' INT ('^' NONZERO_INT)? | '[' word ',' word ']' | '1'`.
/// Whitespace between tokens is ignored; empty input is the identity.
/// Throws ParseError (syntax) or std::out_of_range (generator index).
Word parse_word(std::string_view text, int genus);

/// prod_{i=1..g} [x_{2i-1}, x_{2i}].
Word surface_relator(int genus);

/// Uniformly random reduced-or-not letters of the given length, then reduced.
Word random_word(std::mt19937_64 &rng, int genus, std::size_t length);

/// Finite Z-combination of words with no zero coefficients stored.
class GroupRingElement {
public:
  using Terms = std::map<Word, Integer>;

  GroupRingElement() = default;
  explicit GroupRingElement(const Word &w, Integer coefficient = 1);

  static GroupRingElement one() { return GroupRingElement(Word{}); }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Word &w) const;

  void add_term(const Word &w, const Integer &coefficient);

  GroupRingElement &operator+=(const GroupRingElement &o);
  GroupRingElement &operator-=(const GroupRingElement &o);
  GroupRingElement operator-() const;

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement &b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement &b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement &a, const GroupRingElement &b);
  friend GroupRingElement operator*(const Word &w, const GroupRingElement &a);
  friend GroupRingElement operator*(const GroupRingElement &a, const Word &w);
  bool operator==(const GroupRingElement &) const = default;

  std::string str() const;

private:
  Terms terms_;
};

/// Fox derivative d w / d x_i. Throws std::out_of_range unless 1 <= i <= 2g.
GroupRingElement fox_derivative(const Word &w, int generator, int genus);

/// Eilenberg-MacLane 2-chain: Z-combination of pairs of words.
class Chain2 {
public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, Integer>;

  const Terms &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  void add_term(const Word &a, const Word &b, const Integer &coefficient);

  std::string str() const;

private:
  Terms terms_;
};

/// c = sum_i (dR/dx_i, x_i), distributed over the first slot.
Chain2 relator_chain(int genus);

/// Linear extension of d(a,b) = b - ab + a.
GroupRingElement chain_boundary(const Chain2 &c);

/// True iff chain_boundary(relator_chain(g)) == 1 - R exactly.
bool verify_goldman(int genus);

/// sum_i (dw/dx_i)(x_i - 1) - (w - 1); zero for every word.
GroupRingElement fox_fundamental_defect(const Word &w, int genus);

/// A term n*(a,b) of the relator chain with a machine-size coefficient; the
/// numerical layers iterate over these.
struct ChainTerm {
  Word first;
  Word second;
  int coefficient = 0;
};

/// relator_chain(genus) flattened, cached per genus (genus <= 32).
const std::vector<ChainTerm> &relator_chain_terms(int genus);

} // namespace flatsym
