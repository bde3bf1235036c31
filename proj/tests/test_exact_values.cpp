#include <doctest.h>

#include "keypoly/errors.hpp"
#include "keypoly/ext_value.hpp"
#include "keypoly/modp.hpp"

using namespace keypoly;

TEST_CASE("ext_add") {
  CHECK((ExtValue(make_rat(1, 2)) + ExtValue(make_rat(1, 3))).str() == "5/6");
  CHECK((ExtValue::pos_inf() + ExtValue(make_rat(-7, 4))).is_pos_inf());
  CHECK((ExtValue(make_rat(-1, 8)) + ExtValue(make_rat(-1, 8))).str() == "-1/4");
  CHECK_THROWS_AS(ExtValue::pos_inf() + ExtValue::neg_inf(), UndefinedSum);
  CHECK_THROWS_AS(ExtValue::neg_inf() + ExtValue::pos_inf(), UndefinedSum);
  CHECK((ExtValue::neg_inf() + ExtValue(3L)).is_neg_inf());
}

TEST_CASE("ext_min_max_cmp") {
  auto c = compare(ExtValue::neg_inf(), ExtValue(-1000000000L));
  CHECK(c.ordering == std::strong_ordering::less);
  CHECK(compare(ExtValue::pos_inf(), ExtValue(3L)).min == ExtValue(3L));
  CHECK(compare(ExtValue(make_rat(-1, 16)), ExtValue(make_rat(-1, 8))).max.str() == "-1/16");
  CHECK(compare(ExtValue::pos_inf(), ExtValue::pos_inf()).ordering == std::strong_ordering::equal);
}

TEST_CASE("serialization round trip") {
  for (const char* s : {"inf", "-inf", "0", "-3/7", "12"}) CHECK(ExtValue::parse(s).str() == s);
  CHECK(ExtValue::parse("4/8").str() == "1/2");
  CHECK_THROWS_AS(ExtValue::parse("1/0"), InputError);
  CHECK_THROWS_AS(ExtValue::parse("abc"), InputError);
}

TEST_CASE("division by a positive integer keeps order") {
  ExtValue a(make_rat(-1, 3)), b(make_rat(1, 5));
  for (long n : {1L, 2L, 7L}) CHECK(a.divided(n) < b.divided(n));
  CHECK(ExtValue::pos_inf().divided(3).is_pos_inf());
}

TEST_CASE("ordered group axioms on a grid") {
  std::vector<ExtValue> xs;
  for (long n = -3; n <= 3; ++n)
    for (long d = 1; d <= 4; ++d) xs.emplace_back(make_rat(n, d));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(a + b == b + a);
      CHECK(a + ExtValue(0L) == a);
      for (const auto& c : xs) {
        CHECK((a + b) + c == a + (b + c));
        if (a < b) CHECK(a + c < b + c);
      }
    }
}

TEST_CASE("modular helpers") {
  CHECK(binom_mod(3, 3, 3) == 1);
  CHECK(binom_mod(3, 1, 3) == 0);
  CHECK(binom_mod(5, 2, 2) == 0);
  CHECK(binom_mod(10, 3, 7) == 120 % 7);
  std::uint64_t counts[] = {2};
  // n = 4, parts (1,1): 4!/(2! 2!) = 6
  CHECK(multinomial_mod(4, counts, 2) == 0);
  CHECK(multinomial_mod(4, counts, 5) == 1);
  CHECK(mod_inverse(2, 3) == 2);
  auto s = padic_split(12, 2);
  CHECK(s.e == 2);
  CHECK(s.u == 3);
  CHECK(is_power_of(27, 3));
  CHECK_FALSE(is_power_of(6, 2));
}
