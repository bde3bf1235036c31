#include <doctest.h>

#include <map>

#include "keypoly/errors.hpp"
#include "keypoly/key_engine.hpp"
#include "keypoly/random.hpp"
#include "scenario.hpp"

using namespace keypoly;
using namespace testing_support;

TEST_CASE("tuple enumeration") {
  auto ts = enumerate_tuples(2, 2);
  REQUIRE(ts.size() == 4);
  CHECK(ts[0] == DerivTuple{0, {1, 1}});
  CHECK(ts[1] == DerivTuple{0, {2}});
  CHECK(ts[2] == DerivTuple{1, {1}});
  CHECK(ts[3] == DerivTuple{2, {}});
  CHECK(enumerate_tuples(1, 3).size() == 4);
  CHECK_THROWS_AS(enumerate_tuples(6, 12, 10), CapExceeded);

  // Summing the exact multinomials counts ordered splittings of b into
  // b0 + c_1 + ... + c_n, which is binom(b + n, n).
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t b = 1; b <= 7; ++b) {
      mpz_class total = 0, expect;
      for (const auto& g : enumerate_tuples(n, b)) {
        CHECK(g.total() == b);
        CHECK(g.r() <= n);
        total += multinomial_C_exact(n, g);
      }
      mpz_bin_uiui(expect.get_mpz_t(), b + n, n);
      CHECK(total == expect);
    }
}

TEST_CASE("multinomial coefficients mod p") {
  DerivTuple g{0, {1, 1}};
  CHECK(multinomial_C_exact(4, g) == 6);
  CHECK(multinomial_C(4, g, 2) == 0);
  CHECK(multinomial_C(4, g, 5) == 1);
  CHECK(multinomial_C(3, DerivTuple{0, {1, 2}}, 5) == 1);
  CHECK_THROWS_AS(multinomial_C(1, g, 2), InputError);
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (std::size_t n = 1; n <= 8; ++n)
      for (const auto& t : enumerate_tuples(n, 6)) {
        mpz_class r = multinomial_C_exact(n, t) % p;
        CHECK(multinomial_C(n, t, p) == r.get_ui());
      }
}

TEST_CASE("Leibniz expansion reconstructs the Hasse derivative") {
  {
    auto q = P("x + t^(-1/2) + t^(-1/4)", 2);
    auto h = P("1", 2);
    auto terms = leibniz_expand(h, q, 2, 2);
    CHECK(leibniz_sum(terms, 2) == hasse_derivative(q.pow(2), 2));
  }
  for (unsigned p : {2u, 3u, 5u}) {
    for (unsigned trial = 0; trial < 8; ++trial) {
      auto rng = derive_rng(11, p, trial);
      auto q = random_monic<PuiseuxSeries>(rng, p, 1 + trial % 3);
      auto h = random_polynomial<PuiseuxSeries>(rng, p, q.deg() - 1);
      std::size_t n = 1 + trial % 4, b = 1 + trial % 5;
      CHECK(leibniz_sum(leibniz_expand(h, q, n, b), p) == hasse_derivative(h * q.pow(n), b));

      auto qr = random_monic<RationalFunction>(rng, p, 2);
      auto hr = random_polynomial<RationalFunction>(rng, p, 1);
      CHECK(leibniz_sum(leibniz_expand(hr, qr, n, b), p) == hasse_derivative(hr * qr.pow(n), b));
    }
  }
  CHECK_THROWS_AS(leibniz_expand(P("x", 2), P("x + 1", 2), 1, 1), InputError);
}

TEST_CASE("tuple value bounds on the scenario chain") {
  for (unsigned p : {2u, 3u}) {
    auto v = scenario(p);
    for (unsigned k = 1; k <= 3; ++k) {
      auto q = Qn(p, k);
      auto lq = level(v, q);
      auto h = P("t^(-1) + t", p);
      for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t b = 1; b <= 4; ++b)
          for (const auto& g : enumerate_tuples(n, b)) {
            auto tb = tuple_value_bound(v, g, h, q, n, lq);
            CHECK(tb.pass());
            CHECK(tb.structural == (g.b0 == 0 && std::all_of(g.parts.begin(), g.parts.end(),
                                                              [](std::size_t x) { return x == 1; })));
          }
    }
  }
}

TEST_CASE("degree drop under derivatives of powers") {
  auto v = scenario(2);
  auto q = Qn(2, 2);
  auto h = P("1", 2);
  auto c = degree_drop_check(v, h, q, 3, 1);
  CHECK(c.applicable);
  CHECK(c.delta == 2);
  CHECK(c.limit == 2);
  CHECK(c.binom_nonzero);
  CHECK(c.pass);
  // d_1(Q^2) = 2Q = 0 in characteristic 2.
  CHECK_FALSE(degree_drop_check(v, h, q, 2, 1).applicable);
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t b = 1; b <= n; ++b) CHECK(degree_drop_check(v, P("t", 2), q, n, b).pass);
}

TEST_CASE("derivative drop on F") {
  {
    auto v = scenario(2);
    auto d = derivative_drop(v, F_of(2), Qn(2, 3));
    CHECK(d.delta == 2);
    CHECK(d.b == 2);
    CHECK(d.nu_after == ExtValue(0L));
    CHECK(d.delta_after == 0);
  }
  {
    auto v = scenario(3);
    auto d = derivative_drop(v, F_of(3), Qn(3, 2));
    CHECK(d.delta == 3);
    CHECK(d.b == 3);
    CHECK(d.delta_after == 0);
  }
  auto v = scenario(2);
  CHECK_THROWS_AS(derivative_drop(v, P("x + t", 2), Qn(2, 2)), InputError);
}

TEST_CASE("same-degree comparison along the chain") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto v = scenario(p);
    for (unsigned m = 1; m <= 4; ++m)
      for (unsigned n = m; n <= 4; ++n) {
        auto rep = compare_same_degree(v, Qn(p, m), Qn(p, n));
        CHECK(rep.pass());
        if (m < n) CHECK(rep.level1.epsilon < rep.level2.epsilon);
      }
    CHECK_THROWS_AS(compare_same_degree(v, Qn(p, 3), Qn(p, 1)), InputError);
  }
}

TEST_CASE("expansion comparison on F and G") {
  for (unsigned p : {2u, 3u}) {
    auto v = scenario(p);
    auto F = F_of(p);
    auto G = F + P("t + t^2", p);
    for (unsigned m = 1; m <= 4; ++m)
      for (unsigned n = m + 1; n <= 5; ++n) {
        auto a = compare_expansions(v, F, Qn(p, m), Qn(p, n));
        CHECK(a.pass());
        CHECK(a.e1.delta == p);
        CHECK(a.r == p);
        CHECK(compare_expansions(v, G, Qn(p, m), Qn(p, n)).pass());
      }
  }
  // delta_{Q1} = 0 exercises the gap clause.
  auto v = scenario(2);
  auto rep = compare_expansions(v, P("x + t^(-1)", 2), Qn(2, 1), Qn(2, 3));
  CHECK(rep.e1.delta == 0);
  CHECK(rep.pass());
}
