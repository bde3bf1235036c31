#include <doctest.h>

#include <chrono>

#include "keypoly/errors.hpp"
#include "keypoly/limit_engine.hpp"
#include "keypoly/random.hpp"
#include "scenario.hpp"

using namespace keypoly;
using namespace testing_support;

namespace {

Rat neg_inv_pow(unsigned p, unsigned k) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), p, k);
  return Rat(mpz_class(-1), d);
}

}  // namespace

TEST_CASE("Artin-Schreier family") {
  auto sc = artin_schreier_family(2, 3);
  CHECK(sc.F == P("x^2 + x + t^(-1)", 2));
  CHECK(sc.G == P("x^2 + x + t^(-1) + t + t^2", 2));
  for (unsigned n = 1; n <= 3; ++n) CHECK(sc.family.valuation.nu(sc.family.member(n)) == ExtValue(neg_inv_pow(2, n + 1)));
  CHECK(sc.family.valuation.nu(sc.G) == ExtValue(1L));

  auto s3 = artin_schreier_family(3, 2);
  CHECK(s3.F == P("x^3 + 2x + 2t^(-1)", 3));
  CHECK(s3.family.valuation.nu(s3.family.member(2)) == ExtValue(R(-1, 27)));
  auto x = q_expand(s3.F, s3.family.member(2));
  REQUIRE(x.digits.size() == 4);
  CHECK(x.digits[0] == P("2t^(-1/9)", 3));
  CHECK(x.digits[1] == P("2", 3));
  CHECK(x.digits[2].is_zero());
  CHECK(x.digits[3] == P("1", 3));

  for (unsigned p : {2u, 3u, 5u}) {
    auto s = artin_schreier_family(p, 4);
    for (unsigned n = 1; n <= 4; ++n)
      CHECK(expansion_data(s.family.valuation, s.F, s.family.member(n)).nu_q == ExtValue(neg_inv_pow(p, n)));
  }
  CHECK_THROWS_AS(artin_schreier_family(4, 3), InputError);
  CHECK_THROWS_AS(artin_schreier_family(2, 1), InputError);
}

TEST_CASE("membership in S_alpha") {
  auto sc = artin_schreier_family(2, 8);
  const auto& fam = sc.family;
  auto mf = in_S_alpha(fam, sc.F, 12);
  CHECK(mf.status == Membership::InCertified);
  CHECK(mf.nu_f.is_pos_inf());
  for (unsigned n = 1; n <= 12; ++n) CHECK(mf.nu_trunc[n - 1] == ExtValue(neg_inv_pow(2, n)));

  auto mg = in_S_alpha(fam, sc.G, 12);
  CHECK(mg.status == Membership::InCertified);
  CHECK(mg.nu_f == ExtValue(1L));
  REQUIRE(mg.sup_bound);
  CHECK(*mg.sup_bound == ExtValue(0L));

  auto mx = in_S_alpha(fam, P("x", 2), 12);
  CHECK(mx.status == Membership::Out);
  CHECK(mx.witness == 1u);
  CHECK(mx.nu_f == ExtValue(R(-1, 2)));

  for (unsigned k = 1; k <= 8; ++k) {
    auto m = in_S_alpha(fam, fam.member(k), 12);
    CHECK(m.status == Membership::Out);
    CHECK(m.witness == k);
  }
  CHECK_THROWS_AS(in_S_alpha(fam, PolyP(2), 4), InputError);

  // A family whose valuation cannot isolate nu(f) reports UNDETERMINED.
  Scenario bare = sc;
  bare.family.valuation =
      Valuation<PuiseuxSeries>::evaluation(std::make_shared<ArtinSchreierOracle>(2), std::nullopt, 4);
  CHECK(in_S_alpha(bare.family, sc.F, 4).status == Membership::Undetermined);
}

TEST_CASE("membership: serial and parallel agree") {
  auto sc = artin_schreier_family(3, 4);
  for (unsigned s = 0; s < 8; ++s) {
    auto rng = derive_rng(5, 3, s);
    auto f = random_polynomial<PuiseuxSeries>(rng, 3, 1 + s % 3);
    auto a = in_S_alpha(sc.family, f, 6, Execution::Serial);
    auto b = in_S_alpha(sc.family, f, 6, Execution::Parallel);
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("limit structure") {
  auto sc = artin_schreier_family(2, 3);
  auto rep = limit_structure(sc.family, sc.F, 3);
  CHECK(rep.delta == 2);
  CHECK(rep.r == 1);
  CHECK(rep.leading_one);
  CHECK(rep.nu_trunc == ExtValue(R(-1, 8)));
  CHECK(rep.gamma == 0);
  CHECK(rep.Lambda == std::set<std::size_t>{1, 2});
  CHECK_FALSE(rep.omega);
  CHECK(rep.P_Q == sc.F);

  auto g = limit_structure(sc.family, sc.G, 3);
  CHECK(g.delta == 2);
  CHECK(g.P_Q == sc.G);
  CHECK(g.nu_F == ExtValue(1L));

  auto s3 = artin_schreier_family(3, 2);
  auto r3 = limit_structure(s3.family, s3.F, 2);
  CHECK(r3.delta == 3);
  CHECK(r3.support == std::set<std::size_t>{0, 1, 3});
  CHECK(r3.p_polynomial);

  // x^2 is not a limit key polynomial: its Q-expansion has delta 0.
  CHECK_THROWS_AS(limit_structure(sc.family, P("x^2", 2), 3), StructureViolation);
  try {
    limit_structure(sc.family, P("x^2 + t^(-1)", 2), 3);
    FAIL("expected a violation");
  } catch (const StructureViolation& e) {
    CHECK(e.clause() == "delta=deg");
  }
}

TEST_CASE("removing high monomials") {
  auto sc = artin_schreier_family(2, 4);
  auto q3 = sc.family.member(3);
  CHECK(remove_high_monomials(sc.family, sc.F, 3, 8).result == sc.F);
  CHECK(remove_high_monomials(sc.family, sc.G, 3, 8).result == sc.G);
  auto f = sc.F + P("t^5", 2) * q3.pow(2);
  auto r = remove_high_monomials(sc.family, f, 3, 8);
  CHECK(r.result == sc.F);
  CHECK(r.bound_certified);
  CHECK(r.removed.size() == 1);
  CHECK(r.after.status == Membership::InCertified);
  CHECK_THROWS_AS(remove_high_monomials(sc.family, P("x", 2), 1, 8), InputError);
}

TEST_CASE("bound and structure checks") {
  for (unsigned p : {2u, 3u}) {
    auto sc = artin_schreier_family(p, 6);
    auto b = bound_checks(sc.family, 1, 6);
    CHECK(b.pass());
    auto s = structure_checks(sc.family, sc.F, 1, 6);
    CHECK(s.pass());
  }
}

TEST_CASE("scenario report") {
  ScenarioOptions o;
  o.p = 2;
  o.depth = 3;
  auto j = scenario_report(o);
  REQUIRE(j["per_n"].size() == 3);
  CHECK(j["per_n"][0]["nuQ"] == "-1/4");
  CHECK(j["per_n"][1]["nuQ"] == "-1/8");
  CHECK(j["per_n"][2]["nuQ"] == "-1/16");
  CHECK(j["theorem1"]["r"] == 1);
  CHECK(j["theorem1"]["pass"] == true);
  CHECK(j["theorem2"]["pass"] == true);
  CHECK(j["pass"] == true);

  o.mode = Execution::Serial;
  CHECK(scenario_report(o).dump() == j.dump());
  o.precision_depth = 48;
  auto deep = scenario_report(o);
  deep.erase("precision_depth");
  j.erase("precision_depth");
  CHECK(deep.dump() == j.dump());
}
