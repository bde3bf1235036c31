#include <doctest.h>

#include "keypoly/errors.hpp"
#include "keypoly/parser.hpp"

using namespace keypoly;

namespace {

PolyP P(const char* text, unsigned p) { return parse_polynomial<PuiseuxSeries>(text, p); }

}  // namespace

TEST_CASE("hasse derivative") {
  CHECK(hasse_derivative(P("x^3", 3), 3) == P("1", 3));
  CHECK(hasse_derivative(P("x^3", 3), 1).is_zero());
  CHECK(hasse_derivative(P("x^5", 2), 2).is_zero());
  CHECK(hasse_derivative(P("x^5", 2), 1) == P("x^4", 2));
  CHECK(hasse_derivative(P("x^2 + x", 2), 7).is_zero());
}

TEST_CASE("q-expansion") {
  auto e = q_expand(P("x^4", 2), P("x^2 + 1", 2));
  REQUIRE(e.digits.size() == 3);
  CHECK(e.digits[0] == P("1", 2));
  CHECK(e.digits[1].is_zero());
  CHECK(e.digits[2] == P("1", 2));

  auto f = P("x^2 + x + t^(-1)", 2);
  auto q = P("x + t^(-1/2) + t^(-1/4)", 2);
  auto g = q_expand(f, q);
  REQUIRE(g.digits.size() == 3);
  CHECK(g.digits[0] == P("t^(-1/4)", 2));
  CHECK(g.digits[1] == P("1", 2));
  CHECK(g.digits[2] == P("1", 2));
  CHECK(g.reconstruct() == f);

  auto h = P("t*x^3 + 2*x + t^(-1/3)", 3);
  auto byx = q_expand(h, P("x", 3));
  REQUIRE(byx.digits.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(byx.digits[i] == PolyP::constant(h.coeff(i)));

  auto f3 = P("x^3 + 2*x + 2*t^(-1)", 3);
  auto q3 = P("x + 2*t^(-1/3) + 2*t^(-1/9)", 3);
  auto e3 = q_expand(f3, q3);
  REQUIRE(e3.digits.size() == 4);
  CHECK(e3.digits[0] == P("2*t^(-1/9)", 3));
  CHECK(e3.digits[1] == P("2", 3));
  CHECK(e3.digits[2].is_zero());
  CHECK(e3.digits[3] == P("1", 3));
}

TEST_CASE("euclidean division") {
  auto f = P("x^2 + x + t^(-1)", 2);
  auto d = euclid_divide(f, f);
  CHECK(d.quotient == P("1", 2));
  CHECK(d.remainder.is_zero());

  auto e = euclid_divide(P("x^3", 5), P("x - t", 5));
  CHECK(e.quotient == P("x^2 + t*x + t^2", 5));
  CHECK(e.remainder == P("t^3", 5));
  CHECK(e.quotient * P("x - t", 5) + e.remainder == P("x^3", 5));

  auto g = euclid_divide(P("x^2 + 1", 2), P("x", 2));
  CHECK(g.quotient == P("x", 2));
  CHECK(g.remainder == P("1", 2));

  auto h = euclid_divide(P("x^3 + t", 3), P("t^(1/3)*x + 1", 3));
  CHECK(h.quotient * P("t^(1/3)*x + 1", 3) + h.remainder == P("x^3 + t", 3));
  CHECK_THROWS_AS(euclid_divide(f, PolyP(2)), ZeroDivisor);
}

TEST_CASE("bezout inverse") {
  auto q = P("x^2 + x + t^(-1)", 2);
  auto r = bezout_inverse(P("1", 2), q);
  CHECK(r.inverse == P("1", 2));
  CHECK(r.witness.is_zero());

  auto s = bezout_inverse(P("x", 2), q);
  CHECK(s.inverse == P("t*x + t", 2));
  CHECK(s.witness == P("t", 2));
  CHECK(s.inverse * P("x", 2) == P("1", 2) + s.witness * q);

  auto u = bezout_inverse(P("t^(-1)", 2), q);
  CHECK(u.inverse == P("t", 2));
  CHECK(u.witness.is_zero());

  CHECK_THROWS_AS(bezout_inverse(P("x + 1", 2), P("x^2 + 1", 2)), NotCoprime);
}

TEST_CASE("polynomial printing round trips") {
  for (const char* s : {"x^2 + x + t^(-1)", "2*t^(-1/9)*x^2", "(t^(-1/8) + 1)*x", "x^3 + 2*x + 2*t^(-1)", "0"}) {
    auto f = P(s, 3 == 3 && std::string(s).find('2') != std::string::npos && std::string(s).find("1/8") == std::string::npos ? 3 : 2);
    CHECK(P(f.str().c_str(), f.characteristic()) == f);
  }
  CHECK(P("x^2 + x + t^(-1)", 2).str() == "x^2 + x + t^(-1)");
  CHECK(P("(t^(-1/8) + 1)*x", 2).str() == "(t^(-1/8) + 1)*x");
}

TEST_CASE("parser") {
  CHECK(P("3*x", 3).is_zero());
  CHECK_THROWS_AS(P("t^(-1/6)", 2), ExponentError);
  CHECK(P("2t x + 2 t x", 3) == P("t x", 3));
  CHECK(P("x/2", 3) == P("2*x", 3));
  CHECK(P("(x + 1)^2", 2) == P("x^2 + 1", 2));
  CHECK(P("t^-1", 2) == P("t^(-1)", 2));
  try {
    P("x^2 +\n  * x", 2);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(P("x +", 2), SyntaxError);
  CHECK_THROWS_AS(P("x / x", 2), SyntaxError);
  CHECK_THROWS_AS(P("", 2), SyntaxError);
}
