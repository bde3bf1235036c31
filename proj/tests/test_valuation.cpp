#include <doctest.h>

#include "keypoly/errors.hpp"
#include "keypoly/parser.hpp"
#include "keypoly/valuation.hpp"

using namespace keypoly;

namespace {

PolyP P(const std::string& text, unsigned p) { return parse_polynomial<PuiseuxSeries>(text, p); }
Rat R(long a, long b) { return make_rat(a, b); }

Valuation<PuiseuxSeries> scenario(unsigned p, unsigned depth = 24) {
  auto F = P("x^" + std::to_string(p) + " - x - t^(-1)", p);
  return Valuation<PuiseuxSeries>::evaluation(std::make_shared<ArtinSchreierOracle>(p), F, depth);
}

// Independent check: plug theta_N + O(t^pi_N) into f with precision-tracked
// series arithmetic and read off the least certified exponent.
ExtValue truncated_evaluation(const PolyP& f, unsigned p, unsigned N) {
  ArtinSchreierOracle o(p);
  auto theta = o.approximant(N) + PuiseuxSeries::big_o(p, o.error_order(N));
  return f.evaluate(theta).val();
}

Rat neg_inv_pow(unsigned p, unsigned k) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), p, k);
  return Rat(mpz_class(-1), d);
}

PolyP Qn(unsigned p, unsigned n) {
  ArtinSchreierOracle o(p);
  return PolyP::x(p) - PolyP::constant(o.approximant(n));
}

}  // namespace

TEST_CASE("monomial valuation") {
  auto v = Valuation<PuiseuxSeries>::monomial(2, ExtValue(R(1, 2)));
  CHECK(v.nu(P("x^2 + t", 2)) == ExtValue(1L));
  auto w = Valuation<PuiseuxSeries>::monomial(2, ExtValue(0L));
  CHECK(w.nu(P("x^2 + t", 2)) == ExtValue(0L));
  CHECK(w.nu(PolyP(2)).is_pos_inf());
  CHECK_THROWS_AS(Valuation<PuiseuxSeries>::monomial(2, ExtValue::pos_inf()), InputError);
}

TEST_CASE("evaluation valuation against truncated evaluation") {
  auto v = scenario(2);
  auto f = P("x + t^(-1/2) + t^(-1/4) + t^(-1/8)", 2);
  CHECK(v.nu(f) == ExtValue(R(-1, 16)));
  CHECK(truncated_evaluation(f, 2, 8) == ExtValue(R(-1, 16)));
  CHECK(v.nu(P("x^2 + x + t^(-1)", 2)).is_pos_inf());
  CHECK(v.nu(P("(x^2 + x + t^(-1)) * (x + t)", 2)).is_pos_inf());

  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 6; ++n) {
      auto q = Qn(p, n);
      auto vp = scenario(p);
      CHECK(vp.nu(q) == truncated_evaluation(q, p, 10));
      CHECK(vp.nu(q) == ExtValue(neg_inv_pow(p, n + 1)));
    }
  // Values that need several approximants before the minimum is isolated.
  for (const char* s : {"x", "x + t^(-1/2)", "x^2 + t^(-1/2) * x", "x + t^(-1/2) + t^(-1/4) + t", "t^3 * x + 1"}) {
    auto g = P(s, 2);
    CHECK_MESSAGE(v.nu(g) == truncated_evaluation(g, 2, 12), s);
  }
}

TEST_CASE("evaluation at an exact point") {
  auto theta = parse_coefficient<PuiseuxSeries>("t^(-1/3) + t", 3);
  auto v = Valuation<PuiseuxSeries>::evaluation(std::make_shared<ExactSeriesOracle>(theta), std::nullopt, 4);
  CHECK(v.nu(P("x - t^(-1/3)", 3)) == ExtValue(1L));
  CHECK(v.nu(P("x - t^(-1/3) - t", 3)).is_pos_inf());
  CHECK(v.nu(P("x^3", 3)) == ExtValue(-1L));
}

TEST_CASE("evaluation without a minimal polynomial is undecided on it") {
  auto v = Valuation<PuiseuxSeries>::evaluation(std::make_shared<ArtinSchreierOracle>(2), std::nullopt, 6);
  CHECK_THROWS_AS(v.nu(P("x^2 + x + t^(-1)", 2)), Undecided);
  CHECK(v.nu(P("x", 2)) == ExtValue(R(-1, 2)));
}

TEST_CASE("memoization is transparent") {
  auto v = scenario(3);
  std::vector<PolyP> fs = {P("x", 3), P("x^2 + t", 3), P("x + 2*t^(-1/3)", 3), P("x^3 + 2*x + 2*t^(-1)", 3)};
  std::vector<ExtValue> first;
  for (auto& f : fs) first.push_back(v.nu(f));
  CHECK(v.cache_size() == fs.size());
  v.set_memoization(false);
  CHECK(v.cache_size() == 0);
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(v.nu(fs[i]) == first[i]);
  CHECK(v.cache_size() == 0);
}

TEST_CASE("level") {
  auto v = scenario(2);
  auto l = level(v, Qn(2, 3));
  CHECK(l.epsilon == ExtValue(R(-1, 16)));
  CHECK(l.I == std::set<std::size_t>{1});
  CHECK(l.b_max == 1u);

  auto c = level(v, P("t^(-1)", 2));
  CHECK(c.epsilon.is_neg_inf());
  CHECK(c.I.empty());
  CHECK(!c.b_max);

  auto m = Valuation<PuiseuxSeries>::monomial(2, ExtValue(0L));
  auto s = level(m, P("x^2", 2));
  CHECK(s.epsilon == ExtValue(0L));
  CHECK(s.I == std::set<std::size_t>{2});

  CHECK(level(v, P("x^2 + x + t^(-1)", 2)).epsilon.is_pos_inf());
}

TEST_CASE("truncation") {
  auto v = scenario(2);
  auto F = P("x^2 + x + t^(-1)", 2);
  auto vq = v.truncate(Qn(2, 2));
  CHECK(vq.nu(F) == ExtValue(R(-1, 4)));
  auto e = expansion_data(v, F, Qn(2, 2));
  CHECK(e.values == std::vector<ExtValue>{ExtValue(R(-1, 4)), ExtValue(R(-1, 8)), ExtValue(R(-1, 4))});
  CHECK(vq.nu(Qn(2, 2)) == v.nu(Qn(2, 2)));

  auto m = Valuation<PuiseuxSeries>::monomial(2, ExtValue(0L));
  auto mx = expansion_data(m, P("x^2 + t", 2), P("x", 2));
  CHECK(mx.nu_q == ExtValue(0L));
  CHECK(mx.S == std::set<std::size_t>{2});
  CHECK(m.truncate(P("x", 2)).nu(P("x^2 + t", 2)) == ExtValue(0L));
}

TEST_CASE("expansion data") {
  auto v = scenario(2);
  auto F = P("x^2 + x + t^(-1)", 2);
  auto e = expansion_data(v, F, Qn(2, 3));
  CHECK(e.values == std::vector<ExtValue>{ExtValue(R(-1, 8)), ExtValue(R(-1, 16)), ExtValue(R(-1, 8))});
  CHECK(e.nu_q == ExtValue(R(-1, 8)));
  CHECK(e.S == std::set<std::size_t>{0, 2});
  CHECK(e.delta == 2);
  CHECK(e.deg_q == 2);

  auto v3 = scenario(3);
  auto e3 = expansion_data(v3, P("x^3 + 2*x + 2*t^(-1)", 3), Qn(3, 2));
  REQUIRE(e3.values.size() == 4);
  CHECK(e3.values[0] == ExtValue(R(-1, 9)));
  CHECK(e3.values[1] == ExtValue(R(-1, 27)));
  CHECK(e3.values[2].is_pos_inf());
  CHECK(e3.values[3] == ExtValue(R(-1, 9)));
  CHECK(e3.S == std::set<std::size_t>{0, 3});
  CHECK(e3.delta == 3);

  auto q = Qn(3, 4);
  auto eq = expansion_data(v3, q, q);
  CHECK(eq.S == std::set<std::size_t>{1});
  CHECK(eq.delta == 1);
}

TEST_CASE("refute_key") {
  auto m = Valuation<PuiseuxSeries>::monomial(2, ExtValue(0L));
  auto r = refute_key(m, P("x^2", 2), {P("x", 2)});
  CHECK(r.refuted);
  CHECK(*r.witness == P("x", 2));

  auto v = scenario(2);
  std::vector<PolyP> consts = {P("1", 2), P("t^(-1)", 2), P("t^(1/2) + t", 2)};
  CHECK_FALSE(refute_key(v, Qn(2, 3), consts).refuted);

  auto F = P("x^2 + x + t^(-1)", 2);
  std::vector<PolyP> fam;
  for (unsigned n = 1; n <= 8; ++n) fam.push_back(Qn(2, n));
  auto rf = refute_key(v, F, fam);
  CHECK_FALSE(rf.refuted);
  CHECK(rf.epsilon_q.is_pos_inf());
  for (const auto& e : rf.witness_levels) CHECK(e < rf.epsilon_q);

  auto dw = default_witnesses(F, fam, 64, 5);
  CHECK(dw.size() == 2 + 8 + 64);
  CHECK_FALSE(refute_key(v, F, dw).refuted);
}
