#include <doctest.h>

#include "keypoly/errors.hpp"
#include "keypoly/suite.hpp"
#include "scenario.hpp"

using namespace keypoly;
using namespace testing_support;

TEST_CASE("property suite passes and is reproducible") {
  SuiteOptions o;
  o.seed = 7;
  o.cases = 12;
  o.chain_length = 4;
  auto a = run_suite(o);
  for (const auto& p : a.properties) {
    CHECK_MESSAGE(p.pass(), p.to_json().dump());
    CHECK_MESSAGE(p.applicable == 12, p.name);
  }
  o.mode = Execution::Serial;
  CHECK(run_suite(o).to_json().dump() == a.to_json().dump());

  o.only = {"hasse-leibniz"};
  auto one = run_suite(o);
  REQUIRE(one.properties.size() == 1);
  CHECK(one.properties[0].to_json() == a.properties[5].to_json());
  o.only = {"no-such-property"};
  CHECK_THROWS_AS(run_suite(o), InputError);
}

TEST_CASE("shrinking drops degree first") {
  // Fails whenever f has a coefficient with two or more terms in degree >= 1.
  Property prop{"demo", "demo",
                [](Rng&) { return SuiteCase{}; },
                [](const SuiteCase& c) {
                  const auto& cs = c.ps[0].coefficients();
                  for (std::size_t i = 1; i < cs.size(); ++i)
                    if (cs[i].terms().size() >= 2) return Outcome{Outcome::Fail, "deg " + std::to_string(i)};
                  return Outcome{Outcome::Pass, ""};
                }};
  SuiteCase c;
  c.p = 3;
  c.ps = {P("x^4 + (t + t^2 + t^3) x^3 + (1 + t) x + 2", 3)};
  std::string detail;
  unsigned steps = 0;
  auto s = shrink_case(prop, c, detail, steps);
  CHECK(s.ps[0] == P("(1 + t) x", 3));
  CHECK(steps > 0);
  CHECK(detail == "deg 1");

  // Exceptions map onto outcomes.
  Property thrower{"t", "t", [](Rng&) { return SuiteCase{}; },
                   [](const SuiteCase&) -> Outcome { throw Undecided(3, "demo"); }};
  CHECK(run_check(thrower, c).kind == Outcome::Fail);
  Property bad{"b", "b", [](Rng&) { return SuiteCase{}; },
               [](const SuiteCase&) -> Outcome { throw InputError("demo"); }};
  CHECK(run_check(bad, c).kind == Outcome::Invalid);
}
