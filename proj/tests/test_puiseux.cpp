#include <doctest.h>

#include "keypoly/errors.hpp"
#include "keypoly/parser.hpp"
#include "keypoly/puiseux.hpp"
#include "keypoly/rational_function.hpp"

using namespace keypoly;

namespace {

PuiseuxSeries S(const char* text, unsigned p) { return parse_coefficient<PuiseuxSeries>(text, p); }

}  // namespace

TEST_CASE("series arithmetic") {
  CHECK((S("t^(-1/2) + t", 2) + S("t^(-1/2)", 2)) == S("t", 2));
  CHECK((S("1 + t", 2) * S("1 + t", 2)) == S("1 + t^2", 2));
  CHECK((S("t^(-1/2) + t^(-1/4)", 2) * S("t^(1/2)", 2)) == S("1 + t^(1/4)", 2));
}

TEST_CASE("precision propagation") {
  auto a = S("t^(-1) + O(t^2)", 3);
  auto b = S("t^(1/3) + t + O(t^4)", 3);
  CHECK((a + b).precision() == ExtValue(2L));
  // min(2 + 1/3, 4 - 1)
  CHECK((a * b).precision().str() == "7/3");
  CHECK((a * b).val().str() == "-2/3");
}

TEST_CASE("series inverse") {
  auto one = PuiseuxSeries::one(2);
  auto a = S("1 + t", 2);
  auto inv = a.inverse(ExtValue(3L));
  CHECK(inv.exact_part() == S("1 + t + t^2", 2));
  CHECK((a * inv.exact_part() - one).val() >= ExtValue(3L));

  CHECK(S("t^(-1)", 2).inverse() == S("t", 2));

  auto b = S("2*t", 3);
  auto binv = b.inverse(ExtValue(5L));
  CHECK(binv == S("2*t^(-1)", 3));
  CHECK((b * binv) == PuiseuxSeries::one(3));

  CHECK_THROWS_AS(PuiseuxSeries::big_o(2, ExtValue(5L)).inverse(ExtValue(1L)), ZeroDivisor);
  CHECK_THROWS_AS(a.inverse(), PrecisionLoss);

  auto c = S("t^(-1/4) + 1 + t^(1/2)", 2);
  auto cinv = c.inverse(ExtValue(6L));
  CHECK((c * cinv - PuiseuxSeries::one(2)).val_lower_bound() >= ExtValue(6L));
}

TEST_CASE("series valuation") {
  CHECK(S("t^(-1/2) + t + t^3", 2).val().str() == "-1/2");
  CHECK(PuiseuxSeries::zero(2).val().is_pos_inf());
  CHECK_THROWS_AS(PuiseuxSeries::big_o(2, ExtValue(5L)).val(), PrecisionLoss);
}

TEST_CASE("level bound") {
  CHECK(S("t^(-1/8) + t^(1/2)", 2).level() == 3);
  CHECK_THROWS_AS(S("t^(-1/6)", 2), ExponentError);
  CHECK_THROWS_AS(PuiseuxSeries::monomial(3, 1, make_rat(1, 2)), ExponentError);
}

TEST_CASE("series printing round trip") {
  for (const char* s : {"t^(-1/2) + t^(-1/4) + 1", "2*t^(-1/9) + t", "t^(1/4) + O(t^(3))", "0", "O(t)"}) {
    auto a = S(s, 3 == 3 && std::string(s).find("1/9") != std::string::npos ? 3 : 2);
    CHECK(S(a.str().c_str(), a.characteristic()) == a);
  }
}

TEST_CASE("rational functions") {
  auto a = parse_coefficient<RationalFunction>("(1 + t)/(1 + t^2)", 2);
  CHECK(a.str() == "(1)/(1 + t)");
  CHECK(a.val() == ExtValue(0L));
  auto b = parse_coefficient<RationalFunction>("t^(-2) + t", 3);
  CHECK(b.val() == ExtValue(-2L));
  CHECK((b * b.inverse()).is_one());
  CHECK(parse_coefficient<RationalFunction>(b.str(), 3) == b);
  CHECK_THROWS_AS(parse_coefficient<RationalFunction>("t^(1/2)", 2), ExponentError);
}
