#include "keypoly/suite.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "keypoly/errors.hpp"
#include "keypoly/key_engine.hpp"
#include "keypoly/limit_engine.hpp"
#include "keypoly/valuation.hpp"

namespace keypoly {

Json SuiteCase::to_json() const {
  Json polys = Json::array();
  if (rational)
    for (const auto& f : rs) polys.push_back(f.str());
  else
    for (const auto& f : ps) polys.push_back(f.str());
  return Json{{"p", p}, {"field", rational ? "rational-function" : "puiseux"}, {"polys", polys}, {"ints", ints}};
}

Json PropertyResult::to_json() const {
  Json fs = Json::array();
  for (const auto& f : failures)
    fs.push_back(Json{{"case", f.index},
                      {"input", f.input.to_json()},
                      {"detail", f.detail},
                      {"shrunk", f.shrunk.to_json()},
                      {"shrunk_detail", f.shrunk_detail},
                      {"shrink_steps", f.shrink_steps}});
  return Json{{"name", name},          {"group", group},   {"generated", generated}, {"applicable", applicable},
              {"passed", passed},      {"pass", pass()},   {"failures", fs}};
}

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.pass(); });
}

Json SuiteReport::to_json() const {
  Json ps = Json::array();
  for (const auto& r : properties) ps.push_back(r.to_json());
  return Json{{"seed", seed}, {"cases", cases}, {"properties", ps}, {"pass", pass()}};
}

Outcome run_check(const Property& prop, const SuiteCase& c) {
  try {
    return prop.check(c);
  } catch (const AssertionFailure& e) {
    return {Outcome::Fail, e.what()};
  } catch (const PrecisionError& e) {
    return {Outcome::Fail, std::string("precision: ") + e.what()};
  } catch (const InputError& e) {
    return {Outcome::Invalid, e.what()};
  }
}

namespace {

template <CoefficientField K>
std::vector<Polynomial<K>> smaller(const Polynomial<K>& f) {
  std::vector<Polynomial<K>> out;
  const auto& cs = f.coefficients();
  if (cs.empty()) return out;
  out.emplace_back(f.characteristic(), std::vector<K>(cs.begin(), cs.end() - 1));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if constexpr (std::is_same_v<K, PuiseuxSeries>) {
      const auto& ts = cs[i].terms();
      if (ts.size() < 2 && i + 1 == cs.size()) continue;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        std::vector<PuiseuxSeries::Term> rest;
        for (std::size_t m = 0; m < ts.size(); ++m)
          if (m != k) rest.push_back(ts[m]);
        auto v = cs;
        v[i] = PuiseuxSeries::from_terms(f.characteristic(), std::move(rest), cs[i].precision());
        out.emplace_back(f.characteristic(), std::move(v));
      }
    } else {
      if (i + 1 < cs.size() && !cs[i].is_zero()) {
        auto v = cs;
        v[i] = K::zero(f.characteristic());
        out.emplace_back(f.characteristic(), std::move(v));
      }
      if (cs[i].is_one() || cs[i].is_zero()) continue;
      auto v = cs;
      v[i] = K::one(f.characteristic());
      out.emplace_back(f.characteristic(), std::move(v));
    }
  }
  return out;
}

template <CoefficientField K>
bool shrink_step(const Property& prop, SuiteCase& c, std::vector<Polynomial<K>> SuiteCase::*slot, std::string& detail) {
  auto& polys = c.*slot;
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (auto& cand : smaller(polys[i])) {
      SuiteCase trial = c;
      (trial.*slot)[i] = cand;
      Outcome o = run_check(prop, trial);
      if (o.kind == Outcome::Fail) {
        c = std::move(trial);
        detail = o.detail;
        return true;
      }
    }
  return false;
}

}  // namespace

SuiteCase shrink_case(const Property& prop, SuiteCase c, std::string& detail, unsigned& steps, unsigned max_steps) {
  steps = 0;
  while (steps < max_steps) {
    bool moved = c.rational ? shrink_step(prop, c, &SuiteCase::rs, detail) : shrink_step(prop, c, &SuiteCase::ps, detail);
    if (!moved) break;
    ++steps;
  }
  return c;
}

PropertyResult run_property(const Property& prop, const SuiteOptions& o, std::size_t stream) {
  PropertyResult res;
  res.name = prop.name;
  res.group = prop.group;
  const std::size_t limit = static_cast<std::size_t>(o.cases) * o.max_attempts;
  std::size_t next = 0;
  constexpr std::size_t kMaxFailures = 3;
  while (res.applicable < o.cases && next < limit) {
    const std::size_t batch = std::min<std::size_t>(o.cases, limit - next);
    auto results = index_map(
        batch,
        [&](std::size_t i) {
          auto rng = derive_rng(o.seed, stream, next + i);
          SuiteCase c = prop.generate(rng);
          Outcome out = run_check(prop, c);
          return std::make_pair(std::move(c), std::move(out));
        },
        o.mode);
    for (std::size_t i = 0; i < batch && res.applicable < o.cases; ++i) {
      auto& [c, out] = results[i];
      ++res.generated;
      if (out.kind == Outcome::Skip) continue;
      ++res.applicable;
      if (out.kind == Outcome::Pass) {
        ++res.passed;
      } else if (res.failures.size() < kMaxFailures) {
        CaseFailure f{next + i, c, out.detail, c, out.detail, 0};
        if (out.kind == Outcome::Fail) f.shrunk = shrink_case(prop, c, f.shrunk_detail, f.shrink_steps);
        res.failures.push_back(std::move(f));
      }
    }
    next += batch;
  }
  return res;
}

namespace {

using P = PuiseuxSeries;
using R = RationalFunction;
using VP = Valuation<P>;
using VR = Valuation<R>;

constexpr unsigned kPrimes[] = {2, 3, 5};

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

unsigned pick_prime(Rng& rng) { return kPrimes[pick(rng, 0, 2)]; }

Rat random_gamma(Rng& rng, unsigned p) {
  long den = pick(rng, 0, 1) ? static_cast<long>(p) : 1;
  return make_rat(pick(rng, -2 * den, 2 * den), den);
}

Outcome pass() { return {Outcome::Pass, ""}; }
Outcome skip() { return {Outcome::Skip, ""}; }
Outcome fail(std::string why) { return {Outcome::Fail, std::move(why)}; }

// Scenario valuations and chains, shared across cases.
struct Scenarios {
  std::map<unsigned, Scenario> by_p;
  explicit Scenarios(unsigned precision_depth) {
    for (unsigned p : kPrimes) by_p.emplace(p, artin_schreier_family(p, 8, precision_depth));
  }
  const Scenario& at(unsigned p) const { return by_p.at(p); }
};

template <CoefficientField K>
std::string axioms(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& g) {
  const unsigned p = f.characteristic();
  const ExtValue nf = v.nu(f), ng = v.nu(g);
  if (v.nu(f * g) != nf + ng) return "nu(fg) = " + v.nu(f * g).str() + " != " + nf.str() + " + " + ng.str();
  const ExtValue ns = v.nu(f + g);
  if (ns < std::min(nf, ng)) return "nu(f + g) = " + ns.str() + " below min";
  if (v.nu(-f) != nf) return "nu(-f) != nu(f)";
  if (v.nu(Polynomial<K>::constant(K::one(p))) != ExtValue(0L)) return "nu(1) != 0";
  if (!v.nu(Polynomial<K>(p)).is_pos_inf()) return "nu(0) != +inf";
  return "";
}

// x - c for a random c: a key polynomial for any monomial valuation.
template <CoefficientField K>
Polynomial<K> random_linear(Rng& rng, unsigned p) {
  return Polynomial<K>::x(p) - Polynomial<K>::constant(random_coefficient<K>(rng, p));
}

template <CoefficientField K>
Outcome hasse_leibniz(const Polynomial<K>& f, const Polynomial<K>& g, std::size_t b) {
  const unsigned p = f.characteristic();
  Polynomial<K> sum(p);
  for (std::size_t i = 0; i <= b; ++i) sum = sum + hasse_derivative(f, i) * hasse_derivative(g, b - i);
  if (sum != hasse_derivative(f * g, b)) return fail("d_b(fg) != sum d_i f d_(b-i) g at b = " + std::to_string(b));
  for (std::size_t i = 0; i <= b; ++i) {
    auto lhs = hasse_derivative(hasse_derivative(f, i), b - i);
    auto rhs = K::from_int(p, binom_mod(b, i, p)) * hasse_derivative(f, b);
    if (lhs != rhs) return fail("d_i d_j f != binom(i+j, i) d_(i+j) f at i = " + std::to_string(i));
  }
  return pass();
}

}  // namespace

std::vector<Property> suite_properties(const SuiteOptions& o) {
  auto sc = std::make_shared<Scenarios>(o.precision_depth);
  const unsigned chain = std::max(2u, std::min(o.chain_length, 8u));
  std::vector<Property> props;

  auto member = [sc](unsigned p, long k) { return sc->at(p).family.member(static_cast<unsigned>(k)); };
  auto scen_v = [sc](unsigned p) -> const VP& { return sc->at(p).family.valuation; };

  props.push_back(
      {"monomial-axioms", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.rational = pick(rng, 0, 1);
         Rat g = random_gamma(rng, c.p);
         c.ints = {g.get_num().get_si(), g.get_den().get_si()};
         if (c.rational)
           c.rs = {random_polynomial<R>(rng, c.p, 3), random_polynomial<R>(rng, c.p, 3)};
         else
           c.ps = {random_polynomial<P>(rng, c.p, 3), random_polynomial<P>(rng, c.p, 3)};
         return c;
       },
       [](const SuiteCase& c) {
         ExtValue gamma(make_rat(c.ints[0], c.ints[1]));
         std::string why = c.rational ? axioms(VR::monomial(c.p, gamma), c.rs[0], c.rs[1])
                                      : axioms(VP::monomial(c.p, gamma), c.ps[0], c.ps[1]);
         return why.empty() ? pass() : fail(why);
       }});

  props.push_back(
      {"truncation-axioms", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.rational = pick(rng, 0, 1);
         c.ints = {pick(rng, 1, 5)};
         if (c.rational) {
           Rat g = random_gamma(rng, c.p);
           c.ints = {g.get_num().get_si(), g.get_den().get_si()};
           c.rs = {random_polynomial<R>(rng, c.p, 3), random_polynomial<R>(rng, c.p, 3), random_linear<R>(rng, c.p)};
         } else {
           c.ps = {random_polynomial<P>(rng, c.p, 3), random_polynomial<P>(rng, c.p, 3)};
         }
         return c;
       },
       [=](const SuiteCase& c) {
         if (c.rational) {
           if (c.rs[2].is_zero() || c.rs[2].deg() != 1 || !c.rs[2].is_monic()) return Outcome{Outcome::Invalid, "Q"};
           auto v = VR::monomial(c.p, ExtValue(make_rat(c.ints[0], c.ints[1])));
           auto w = v.truncate(c.rs[2]);
           std::string why = axioms(w, c.rs[0], c.rs[1]);
           return why.empty() ? pass() : fail(why);
         }
         const auto& v = scen_v(c.p);
         auto q = member(c.p, c.ints[0]);
         auto w = v.truncate(q);
         std::string why = axioms(w, c.ps[0], c.ps[1]);
         if (!why.empty()) return fail(why);
         for (const auto& f : c.ps) {
           if (f.is_zero()) continue;
           auto e = expansion_data(v, f, q);
           ExtValue nf = v.nu(f);
           if (nf < e.nu_q) return fail("nu_Q(f) = " + e.nu_q.str() + " > nu(f) = " + nf.str());
           if (e.S.size() == 1 && e.nu_q != nf) return fail("singleton S but nu_Q(f) != nu(f)");
         }
         return pass();
       }});

  props.push_back(
      {"level-product", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         long mode = pick(rng, 0, 2);  // 0 scenario, 1 monomial over series, 2 monomial over F_p(t)
         c.rational = mode == 2;
         Rat g = random_gamma(rng, c.p);
         c.ints = {mode, g.get_num().get_si(), g.get_den().get_si()};
         if (c.rational)
           c.rs = {random_polynomial<R>(rng, c.p, 3), random_polynomial<R>(rng, c.p, 3)};
         else
           c.ps = {random_polynomial<P>(rng, c.p, 3), random_polynomial<P>(rng, c.p, 3)};
         return c;
       },
       [=](const SuiteCase& c) {
         auto check = [](const auto& v, const auto& f, const auto& g) {
           if (f.is_zero() || g.is_zero()) return Outcome{Outcome::Invalid, "zero factor"};
           ExtValue ef = level(v, f).epsilon, eg = level(v, g).epsilon, efg = level(v, f * g).epsilon;
           if (efg != std::max(ef, eg))
             return fail("eps(fg) = " + efg.str() + ", eps(f) = " + ef.str() + ", eps(g) = " + eg.str());
           return pass();
         };
         ExtValue gamma(make_rat(c.ints[1], c.ints[2]));
         if (c.ints[0] == 0) return check(scen_v(c.p), c.ps[0], c.ps[1]);
         if (c.ints[0] == 1) return check(VP::monomial(c.p, gamma), c.ps[0], c.ps[1]);
         return check(VR::monomial(c.p, gamma), c.rs[0], c.rs[1]);
       }});

  props.push_back(
      {"truncation-additivity", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.ints = {pick(rng, 1, 5)};
         c.ps = {random_polynomial<P>(rng, c.p, 2 * c.p), random_polynomial<P>(rng, c.p, 2 * c.p)};
         return c;
       },
       [=](const SuiteCase& c) {
         const auto& v = scen_v(c.p);
         auto q = member(c.p, c.ints[0]);
         if (c.ps[0].is_zero() || c.ps[1].is_zero()) return Outcome{Outcome::Invalid, "zero factor"};
         auto ef = expansion_data(v, c.ps[0], q), eg = expansion_data(v, c.ps[1], q);
         auto efg = expansion_data(v, c.ps[0] * c.ps[1], q);
         if (efg.delta != ef.delta + eg.delta)
           return fail("delta(fg) = " + std::to_string(efg.delta) + " != " + std::to_string(ef.delta) + " + " +
                       std::to_string(eg.delta));
         if (efg.nu_q != ef.nu_q + eg.nu_q) return fail("nu_Q(fg) = " + efg.nu_q.str() + " not additive");
         return pass();
       }});

  props.push_back(
      {"remainder-dominates", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.ints = {pick(rng, 2, 6)};
         c.ps = {random_polynomial<P>(rng, c.p, 3)};
         return c;
       },
       [=](const SuiteCase& c) {
         const auto& v = scen_v(c.p);
         auto q = member(c.p, c.ints[0]);
         const auto& f = c.ps[0];
         if (f.is_zero()) return Outcome{Outcome::Invalid, "f = 0"};
         if (!(level(v, f).epsilon < level(v, q).epsilon)) return skip();
         auto [quo, rem] = euclid_divide(f, q);
         ExtValue nf = v.nu(f), nr = v.nu(rem), nqq = v.nu(quo * q);
         if (nf != nr || !(nr < nqq))
           return fail("nu(f) = " + nf.str() + ", nu(r) = " + nr.str() + ", nu(qQ) = " + nqq.str());
         if (expansion_data(v, f, q).delta != 0) return fail("delta_Q(f) != 0");
         return pass();
       }});

  props.push_back(
      {"hasse-leibniz", "valuation",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.rational = pick(rng, 0, 1);
         c.ints = {pick(rng, 0, 6)};
         if (c.rational)
           c.rs = {random_polynomial<R>(rng, c.p, 5), random_polynomial<R>(rng, c.p, 5)};
         else
           c.ps = {random_polynomial<P>(rng, c.p, 5), random_polynomial<P>(rng, c.p, 5)};
         return c;
       },
       [](const SuiteCase& c) {
         auto b = static_cast<std::size_t>(c.ints[0]);
         return c.rational ? hasse_leibniz(c.rs[0], c.rs[1], b) : hasse_leibniz(c.ps[0], c.ps[1], b);
       }});

  props.push_back(
      {"leibniz-reconstruction", "derivatives",
       [](Rng& rng) {
         SuiteCase c;
         c.p = pick_prime(rng);
         c.rational = pick(rng, 0, 1);
         std::size_t dq = static_cast<std::size_t>(pick(rng, 1, 3));
         c.ints = {pick(rng, 1, 4), pick(rng, 1, 5)};
         if (c.rational)
           c.rs = {random_polynomial<R>(rng, c.p, dq - 1), random_monic<R>(rng, c.p, dq)};
         else
           c.ps = {random_polynomial<P>(rng, c.p, dq - 1), random_monic<P>(rng, c.p, dq)};
         return c;
       },
       [](const SuiteCase& c) {
         auto n = static_cast<std::size_t>(c.ints[0]), b = static_cast<std::size_t>(c.ints[1]);
         auto run = [&](const auto& h, const auto& q) {
           auto terms = leibniz_expand(h, q, n, b);
           if (leibniz_sum(terms, c.p) != hasse_derivative(h * q.pow(static_cast<unsigned>(n)), b))
             return fail("sum C T != d_b(h Q^n)");
           for (const auto& t : terms)
             if (mpz_class(multinomial_C_exact(n, t.gamma) % c.p).get_ui() != t.C)
               return fail("C" + t.gamma.str() + " disagrees with the exact multinomial");
           return pass();
         };
         return c.rational ? run(c.rs[0], c.rs[1]) : run(c.ps[0], c.ps[1]);
       }});

  props.push_back({"tuple-bound", "derivatives",
                   [](Rng& rng) {
                     SuiteCase c;
                     c.p = pick_prime(rng);
                     c.ints = {pick(rng, 1, 6), pick(rng, 1, 4), pick(rng, 1, 4)};
                     c.ps = {random_polynomial<P>(rng, c.p, 0)};
                     return c;
                   },
                   [=](const SuiteCase& c) {
                     const auto& v = scen_v(c.p);
                     auto q = member(c.p, c.ints[0]);
                     auto n = static_cast<std::size_t>(c.ints[1]), b = static_cast<std::size_t>(c.ints[2]);
                     auto lq = level(v, q);
                     for (const auto& g : enumerate_tuples(n, b)) tuple_value_bound(v, g, c.ps[0], q, n, lq);
                     return pass();
                   }});

  props.push_back({"degree-drop", "derivatives",
                   [](Rng& rng) {
                     SuiteCase c;
                     c.p = pick_prime(rng);
                     long n = pick(rng, 1, 6);
                     c.ints = {pick(rng, 1, 6), n, pick(rng, 1, n)};
                     c.ps = {random_polynomial<P>(rng, c.p, 0)};
                     return c;
                   },
                   [=](const SuiteCase& c) {
                     const auto& v = scen_v(c.p);
                     auto q = member(c.p, c.ints[0]);
                     auto d = degree_drop_check(v, c.ps[0], q, static_cast<std::size_t>(c.ints[1]),
                                                static_cast<std::size_t>(c.ints[2]));
                     if (!d.applicable) return skip();
                     return d.pass ? pass()
                                   : fail("delta = " + std::to_string(d.delta) + ", limit " + std::to_string(d.limit) +
                                          ", binom nonzero " + std::to_string(d.binom_nonzero));
                   }});

  props.push_back({"derivative-drop", "derivatives",
                   [=](Rng& rng) {
                     // Built from Q-digits, with a raised constant digit, so that delta_Q(f) > 0 is common.
                     SuiteCase c;
                     c.p = pick_prime(rng);
                     c.ints = {pick(rng, 1, 6)};
                     auto q = member(c.p, c.ints[0]);
                     auto d = static_cast<std::size_t>(pick(rng, 1, 2 * c.p));
                     PolyP f = PolyP::constant(random_coefficient<P>(rng, c.p) *
                                               P::monomial(c.p, 1, Rat(pick(rng, 0, 3))));
                     PolyP qpow = q;
                     for (std::size_t i = 1; i <= d; ++i, qpow = qpow * q)
                       if (i == d || pick(rng, 0, 1)) f = f + PolyP::constant(random_coefficient<P>(rng, c.p)) * qpow;
                     c.ps = {f};
                     return c;
                   },
                   [=](const SuiteCase& c) {
                     const auto& v = scen_v(c.p);
                     auto q = member(c.p, c.ints[0]);
                     if (c.ps[0].is_zero()) return Outcome{Outcome::Invalid, "f = 0"};
                     if (expansion_data(v, c.ps[0], q).delta == 0) return skip();
                     derivative_drop(v, c.ps[0], q);
                     return pass();
                   }});

  props.push_back({"truncated-derivative-floor", "derivatives",
                   [](Rng& rng) {
                     SuiteCase c;
                     c.p = pick_prime(rng);
                     c.ints = {pick(rng, 1, 6), pick(rng, 1, 6)};
                     c.ps = {random_polynomial<P>(rng, c.p, 2 * c.p)};
                     return c;
                   },
                   [=](const SuiteCase& c) {
                     const auto& v = scen_v(c.p);
                     auto q = member(c.p, c.ints[0]);
                     auto b = static_cast<std::size_t>(c.ints[1]);
                     if (c.ps[0].is_zero()) return Outcome{Outcome::Invalid, "f = 0"};
                     auto d = hasse_derivative(c.ps[0], b);
                     if (d.is_zero()) return pass();
                     ExtValue lhs = expansion_data(v, d, q).nu_q;
                     ExtValue rhs =
                         expansion_data(v, c.ps[0], q).nu_q - level(v, q).epsilon.scaled(static_cast<long>(b));
                     return lhs >= rhs ? pass() : fail(lhs.str() + " < " + rhs.str());
                   }});

  props.push_back({"chain-comparison", "chain",
                   [](Rng& rng) {
                     SuiteCase c;
                     c.p = pick_prime(rng);
                     c.ps = {random_polynomial<P>(rng, c.p, 2 * c.p)};
                     return c;
                   },
                   [=](const SuiteCase& c) {
                     const auto& v = scen_v(c.p);
                     if (c.ps[0].is_zero()) return Outcome{Outcome::Invalid, "f = 0"};
                     for (unsigned m = 1; m <= chain; ++m)
                       for (unsigned n = m + 1; n <= chain; ++n) {
                         compare_same_degree(v, member(c.p, m), member(c.p, n));
                         compare_expansions(v, c.ps[0], member(c.p, m), member(c.p, n));
                       }
                     return pass();
                   }});

  if (!o.only.empty())
    std::erase_if(props, [&](const Property& pr) {
      return std::find(o.only.begin(), o.only.end(), pr.name) == o.only.end() &&
             std::find(o.only.begin(), o.only.end(), pr.group) == o.only.end();
    });
  return props;
}

namespace {

// FNV-1a, stable across platforms.
std::uint64_t stream_id(const std::string& name) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ull;
  return h;
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& o) {
  if (o.cases == 0) throw InputError("suite needs at least one case");
  auto props = suite_properties(o);
  if (props.empty()) throw InputError("no property matches the selection");
  SuiteReport rep{o.seed, o.cases, {}};
  // Streams are keyed by name so a selection does not change any case.
  for (const auto& prop : props) rep.properties.push_back(run_property(prop, o, stream_id(prop.name)));
  return rep;
}

}  // namespace keypoly
