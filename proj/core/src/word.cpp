#include "flatsym/word.hpp"

#include <array>
#include <cctype>
#include <mutex>
#include <sstream>

namespace flatsym {

namespace {

void push_reduced(std::vector<Letter> &out, const Letter &l) {
  if (!out.empty() && out.back().generator == l.generator && out.back().sign == -l.sign)
    out.pop_back();
  else
    out.push_back(l);
}

void check_generator(int i, int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive");
  if (i < 1 || i > 2 * genus)
    throw std::out_of_range("generator index x" + std::to_string(i) + " outside 1.." +
                            std::to_string(2 * genus));
}

class Parser {
public:
  Parser(std::string_view text, int genus) : text_(text), genus_(genus) {}

  Word parse() {
    skip_ws();
    if (pos_ == text_.size())
      return {};
    Word w = word();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

private:
  Word word() {
    Word w = term();
    for (;;) {
      skip_ws();
      if (!accept('*'))
        return w;
      w = w * term();
    }
  }

  Word term() {
    skip_ws();
    if (accept('[')) {
      Word u = word();
      skip_ws();
      expect(',');
      Word v = word();
      skip_ws();
      expect(']');
      return u * v * u.inverse() * v.inverse();
    }
    if (accept('1'))
      return {};
    if (!accept('x'))
      fail("expected 'x', '[' or '1'");
    std::size_t at = pos_;
    long index = integer(false);
    if (index < 1 || index > 2 * genus_)
      throw std::out_of_range("generator index x" + std::to_string(index) + " at position " +
                              std::to_string(at) + " outside 1.." + std::to_string(2 * genus_));
    long exponent = 1;
    skip_ws();
    if (accept('^')) {
      skip_ws();
      std::size_t epos = pos_;
      exponent = integer(true);
      if (exponent == 0)
        throw ParseError("exponent must be nonzero", epos);
    }
    std::vector<Letter> letters;
    Letter l{static_cast<int>(index), exponent > 0 ? 1 : -1};
    for (long k = 0; k < std::labs(exponent); ++k)
      letters.push_back(l);
    return Word(std::move(letters));
  }

  long integer(bool allow_sign) {
    std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && (accept('-') || accept('+')))
      negative = text_[pos_ - 1] == '-';
    std::size_t digits = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000)
        throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == digits)
      throw ParseError("expected integer", pos_);
    return negative ? -value : value;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  int genus_;
  std::size_t pos_ = 0;
};

} // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const auto &l : letters) {
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("letter sign must be +1 or -1");
    push_reduced(letters_, l);
  }
}

Word Word::generator(int i, int sign) { return Word({Letter{i, sign}}); }

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;
}

std::string Word::str() const {
  if (letters_.empty())
    return "1";
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k)
      s += '*';
    s += 'x';
    s += std::to_string(letters_[k].generator);
    if (letters_[k].sign < 0)
      s += "^-1";
  }
  return s;
}

Word operator*(const Word &a, const Word &b) {
  Word w;
  w.letters_ = a.letters_;
  for (const auto &l : b.letters_)
    push_reduced(w.letters_, l);
  return w;
}

ParseError::ParseError(std::string message, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

Word parse_word(std::string_view text, int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive");
  return Parser(text, genus).parse();
}

Word surface_relator(int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive");
  std::vector<Letter> letters;
  letters.reserve(4 * genus);
  for (int i = 1; i <= genus; ++i) {
    letters.push_back({2 * i - 1, 1});
    letters.push_back({2 * i, 1});
    letters.push_back({2 * i - 1, -1});
    letters.push_back({2 * i, -1});
  }
  return Word(std::move(letters));
}

Word random_word(std::mt19937_64 &rng, int genus, std::size_t length) {
  std::uniform_int_distribution<int> gen(1, 2 * genus);
  std::bernoulli_distribution positive(0.5);
  std::vector<Letter> letters(length);
  for (auto &l : letters)
    l = {gen(rng), positive(rng) ? 1 : -1};
  return Word(std::move(letters));
}

// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(const Word &w, Integer coefficient) {
  add_term(w, coefficient);
}

Integer GroupRingElement::coefficient(const Word &w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

void GroupRingElement::add_term(const Word &w, const Integer &coefficient) {
  if (coefficient == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(w, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0)
      terms_.erase(it);
  }
}

GroupRingElement &GroupRingElement::operator+=(const GroupRingElement &o) {
  for (const auto &[w, c] : o.terms_)
    add_term(w, c);
  return *this;
}

GroupRingElement &GroupRingElement::operator-=(const GroupRingElement &o) {
  for (const auto &[w, c] : o.terms_)
    add_term(w, -c);
  return *this;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r;
  for (const auto &[w, c] : terms_)
    r.terms_.emplace(w, -c);
  return r;
}

GroupRingElement operator*(const GroupRingElement &a, const GroupRingElement &b) {
  GroupRingElement r;
  for (const auto &[u, cu] : a.terms_)
    for (const auto &[v, cv] : b.terms_)
      r.add_term(u * v, cu * cv);
  return r;
}

GroupRingElement operator*(const Word &w, const GroupRingElement &a) {
  GroupRingElement r;
  for (const auto &[v, c] : a.terms_)
    r.add_term(w * v, c);
  return r;
}

GroupRingElement operator*(const GroupRingElement &a, const Word &w) {
  GroupRingElement r;
  for (const auto &[v, c] : a.terms_)
    r.add_term(v * w, c);
  return r;
}

std::string GroupRingElement::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[w, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (mag != 1)
      os << mag << '*';
    os << w.str();
    first = false;
  }
  return os.str();
}

GroupRingElement fox_derivative(const Word &w, int generator, int genus) {
  check_generator(generator, genus);
  // d(uv) = du + u dv, applied letter by letter; prefix holds u.
  GroupRingElement r;
  Word prefix;
  for (const auto &l : w.letters()) {
    if (l.generator == generator) {
      if (l.sign > 0)
        r.add_term(prefix, 1);
      else
        r.add_term(prefix * Word::generator(generator, -1), -1);
    }
    prefix = prefix * Word({l});
  }
  return r;
}

void Chain2::add_term(const Word &a, const Word &b, const Integer &coefficient) {
  if (coefficient == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0)
      terms_.erase(it);
  }
}

std::string Chain2::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[key, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (mag != 1)
      os << mag << '*';
    os << '(' << key.first.str() << ", " << key.second.str() << ')';
    first = false;
  }
  return os.str();
}

Chain2 relator_chain(int genus) {
  const Word relator = surface_relator(genus);
  Chain2 c;
  for (int i = 1; i <= 2 * genus; ++i) {
    const Word xi = Word::generator(i);
    const GroupRingElement d = fox_derivative(relator, i, genus);
    for (const auto &[w, coefficient] : d.terms())
      c.add_term(w, xi, coefficient);
  }
  return c;
}

GroupRingElement chain_boundary(const Chain2 &c) {
  GroupRingElement r;
  for (const auto &[key, n] : c.terms()) {
    const auto &[a, b] = key;
    r.add_term(b, n);
    r.add_term(a * b, -n);
    r.add_term(a, n);
  }
  return r;
}

bool verify_goldman(int genus) {
  GroupRingElement expected = GroupRingElement::one() - GroupRingElement(surface_relator(genus));
  return chain_boundary(relator_chain(genus)) == expected;
}

GroupRingElement fox_fundamental_defect(const Word &w, int genus) {
  GroupRingElement sum;
  for (int i = 1; i <= 2 * genus; ++i) {
    GroupRingElement xi_minus_one = GroupRingElement(Word::generator(i)) - GroupRingElement::one();
    sum += fox_derivative(w, i, genus) * xi_minus_one;
  }
  return sum - (GroupRingElement(w) - GroupRingElement::one());
}

const std::vector<ChainTerm> &relator_chain_terms(int genus) {
  constexpr int max_genus = 32;
  if (genus < 1 || genus > max_genus)
    throw std::out_of_range("relator_chain_terms: genus outside 1..32");
  static std::array<std::vector<ChainTerm>, max_genus + 1> cache;
  static std::array<std::once_flag, max_genus + 1> flags;
  std::call_once(flags[genus], [genus] {
    const Chain2 chain = relator_chain(genus);
    for (const auto &[key, n] : chain.terms())
      cache[genus].push_back({key.first, key.second, static_cast<int>(n)});
  });
  return cache[genus];
}

} // namespace flatsym
