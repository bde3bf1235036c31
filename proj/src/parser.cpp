#include "keypoly/parser.hpp"

#include <cctype>
#include <string>

#include "keypoly/errors.hpp"

namespace keypoly {

namespace {

template <class K>
struct TPower;

template <>
struct TPower<PuiseuxSeries> {
  static PuiseuxSeries make(unsigned p, const Rat& e) { return PuiseuxSeries::monomial(p, 1, e); }
  static PuiseuxSeries big_o(unsigned p, const Rat& e) { return PuiseuxSeries::big_o(p, ExtValue(e)); }
  static bool invertible(const PuiseuxSeries& c) { return c.is_monomial(); }
};

template <>
struct TPower<RationalFunction> {
  static RationalFunction make(unsigned p, const Rat& e) {
    if (e.get_den() != 1) throw ExponentError("rational functions take integer t-exponents, got " + to_string(e));
    if (!e.get_num().fits_slong_p()) throw ExponentError("t-exponent out of range");
    return RationalFunction::monomial(p, 1, e.get_num().get_si());
  }
  static RationalFunction big_o(unsigned, const Rat&) {
    throw InputError("O(...) terms are not allowed for exact rational functions");
  }
  static bool invertible(const RationalFunction& c) { return !c.is_zero(); }
};

template <CoefficientField K>
class Parser {
 public:
  Parser(std::string_view text, unsigned p) : s_(text), p_(p) {}

  Polynomial<K> run() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial<K> r = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  long long reduce(const mpz_class& z) const {
    mpz_class r = z % p_;
    return r.get_si();
  }

  Rat rational_exponent() {
    skip_space();
    if (accept('(')) {
      bool neg = accept('-');
      mpz_class num = integer();
      mpz_class den = 1;
      if (accept('/')) {
        std::size_t at = pos_;
        den = integer();
        if (den == 0) fail_at("zero denominator in exponent", at);
      }
      expect(')');
      Rat r(neg ? mpz_class(-num) : num, den);
      r.canonicalize();
      return r;
    }
    bool neg = accept('-');
    mpz_class n = integer();
    return Rat(neg ? mpz_class(-n) : n);
  }

  unsigned natural_exponent() {
    skip_space();
    bool paren = accept('(');
    std::size_t at = pos_;
    mpz_class n = integer();
    if (paren) expect(')');
    if (!n.fits_uint_p() || n > 100000) fail_at("exponent too large", at);
    return static_cast<unsigned>(n.get_ui());
  }

  bool starts_atom() {
    skip_space();
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'x' || c == '(' || c == 'O';
  }

  Polynomial<K> expr() {
    Polynomial<K> acc = accept('-') ? -term() : term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> term() {
    Polynomial<K> acc = power();
    for (;;) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial<K> d = power();
        if (d.is_zero()) fail_at("division by zero", at);
        if (!d.is_constant() || !TPower<K>::invertible(d.coeff(0)))
          fail_at("division is only by exact invertible constants", at);
        acc = d.coeff(0).inverse() * acc;
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> power() {
    skip_space();
    char c = peek();
    if (c == 't') {
      ++pos_;
      Rat e(1);
      if (accept('^')) e = rational_exponent();
      return Polynomial<K>::constant(TPower<K>::make(p_, e));
    }
    Polynomial<K> base = atom();
    if (accept('^')) base = base.pow(natural_exponent());
    return base;
  }

  Polynomial<K> atom() {
    skip_space();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial<K>::constant(K::from_int(p_, reduce(integer())));
    if (c == 'x') {
      ++pos_;
      return Polynomial<K>::x(p_);
    }
    if (c == 'O') {
      ++pos_;
      expect('(');
      skip_space();
      if (peek() != 't') fail("expected 't' inside O(...)");
      ++pos_;
      Rat e(1);
      if (accept('^')) e = rational_exponent();
      expect(')');
      return Polynomial<K>::constant(TPower<K>::big_o(p_, e));
    }
    if (accept('(')) {
      Polynomial<K> inner = expr();
      expect(')');
      return inner;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  unsigned p_;
  std::size_t pos_ = 0;
};

}  // namespace

template <CoefficientField K>
Polynomial<K> parse_polynomial(std::string_view text, unsigned p) {
  return Parser<K>(text, p).run();
}

template <CoefficientField K>
K parse_coefficient(std::string_view text, unsigned p) {
  Polynomial<K> f = parse_polynomial<K>(text, p);
  if (!f.is_constant()) throw InputError("expected a constant, got " + f.str());
  return f.coeff(0);
}

template PolyP parse_polynomial<PuiseuxSeries>(std::string_view, unsigned);
template PolyR parse_polynomial<RationalFunction>(std::string_view, unsigned);
template PuiseuxSeries parse_coefficient<PuiseuxSeries>(std::string_view, unsigned);
template RationalFunction parse_coefficient<RationalFunction>(std::string_view, unsigned);

}  // namespace keypoly
