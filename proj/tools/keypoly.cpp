#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/errors.hpp"
#include "keypoly/key_engine.hpp"
#include "keypoly/limit_engine.hpp"
#include "keypoly/parser.hpp"
#include "keypoly/suite.hpp"

using namespace keypoly;

namespace {

struct Options {
  unsigned p = 2;
  std::string field = "puiseux";
  std::string valuation = "monomial:0";
  std::vector<std::string> exprs;
  std::vector<std::string> qs;
  unsigned depth = 8;
  unsigned n_max = 12;
  std::uint64_t seed = 7;
  unsigned cases = 64;
  std::size_t cap = kDefaultTupleCap;
  bool json = false;
  std::string scenario = "artin-schreier";
  std::string lemma;
  unsigned n = 0;
  unsigned b = 1;
  unsigned member = 0;
  unsigned chain = 6;
  std::vector<std::string> only;
  bool serial = false;
};

Execution mode(const Options& o) { return o.serial ? Execution::Serial : Execution::Parallel; }

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

template <CoefficientField K>
Valuation<K> valuation_from_json(const Json& spec, unsigned p) {
  const std::string kind = spec.value("kind", "");
  if (kind == "monomial") return Valuation<K>::monomial(p, ExtValue::parse(spec.value("gamma", "0")));
  if (kind == "truncation") {
    if (!spec.contains("inner") || !spec.contains("Q")) throw InputError("truncation spec needs inner and Q");
    return valuation_from_json<K>(spec["inner"], p).truncate(parse_polynomial<K>(spec["Q"].get<std::string>(), p));
  }
  if (kind == "evaluation") {
    if constexpr (std::is_same_v<K, PuiseuxSeries>) {
      if (spec.value("scenario", "artin-schreier") != "artin-schreier")
        throw InputError("unknown scenario " + spec.value("scenario", ""));
      unsigned sp = spec.value("p", p);
      if (sp != p) throw InputError("valuation spec p differs from --p");
      return artin_schreier_family(p, 2, spec.value("precision_depth", 0u)).family.valuation;
    } else {
      throw InputError("evaluation valuations need --field puiseux");
    }
  }
  throw InputError("unknown valuation kind '" + kind + "'");
}

template <CoefficientField K>
Valuation<K> make_valuation(const std::string& text, unsigned p) {
  if (!text.empty() && text.front() == '{') {
    Json spec;
    try {
      spec = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("valuation spec: ") + e.what());
    }
    if (spec.contains("valuation")) spec = spec["valuation"];
    return valuation_from_json<K>(spec, p);
  }
  if (text.rfind("monomial:", 0) == 0) return Valuation<K>::monomial(p, ExtValue::parse(text.substr(9)));
  if (text == "evaluation" || text == "evaluation:artin-schreier") return valuation_from_json<K>(Json{{"kind", "evaluation"}}, p);
  if (text.rfind("truncation:", 0) == 0)
    return valuation_from_json<K>(Json{{"kind", "evaluation"}}, p).truncate(parse_polynomial<K>(text.substr(11), p));
  throw InputError("unknown valuation '" + text + "'");
}

template <CoefficientField K>
std::vector<Polynomial<K>> parse_all(const std::vector<std::string>& texts, unsigned p) {
  std::vector<Polynomial<K>> out;
  for (const auto& t : texts) out.push_back(parse_polynomial<K>(t, p));
  return out;
}

std::string set_str(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto i : s) out += (out.size() > 1 ? ", " : "") + std::to_string(i);
  return out + "}";
}

std::string values_str(const std::vector<ExtValue>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i].str();
  return out + "]";
}

template <CoefficientField K>
int run_eval(const Options& o) {
  if (o.exprs.empty()) throw InputError("eval needs at least one --expr");
  auto v = make_valuation<K>(o.valuation, o.p);
  Json results = Json::array();
  std::string text = "valuation: " + v.describe() + "\n";
  for (const auto& f : parse_all<K>(o.exprs, o.p)) {
    if (f.is_zero()) {
      results.push_back(Json{{"expr", "0"}, {"nu", ExtValue::pos_inf().str()}, {"epsilon", nullptr}, {"I", Json::array()}});
      text += "0\n  nu = " + ExtValue::pos_inf().str() + "\n";
      continue;
    }
    LevelData l = level(v, f);
    results.push_back(Json{{"expr", f.str()}, {"nu", l.nu.str()}, {"epsilon", l.epsilon.str()}, {"I", to_json(l.I)}});
    text += f.str() + "\n  nu = " + l.nu.str() + "\n  eps = " + l.epsilon.str() + "\n  I = " + set_str(l.I) + "\n";
  }
  emit(o, Json{{"valuation", v.describe()}, {"results", results}}, text);
  return 0;
}

template <CoefficientField K>
int run_expand(const Options& o) {
  if (o.exprs.empty() || o.qs.size() != 1) throw InputError("expand needs --expr and exactly one --q");
  auto v = make_valuation<K>(o.valuation, o.p);
  auto q = parse_polynomial<K>(o.qs[0], o.p);
  Json results = Json::array();
  std::string text = "valuation: " + v.describe() + "\nQ = " + q.str() + "\n";
  for (const auto& f : parse_all<K>(o.exprs, o.p)) {
    auto x = q_expand(f, q);
    ExpansionData e = expansion_data(v, x);
    Json digits = Json::array();
    text += f.str() + "\n";
    for (std::size_t i = 0; i < x.digits.size(); ++i) {
      digits.push_back(x.digits[i].str());
      text += "  f_" + std::to_string(i) + " = " + x.digits[i].str() + "\n";
    }
    Json j = to_json(e);
    j["expr"] = f.str();
    j["digits"] = digits;
    results.push_back(j);
    text += "  values = " + values_str(e.values) + "\n  nu_Q = " + e.nu_q.str() + "\n  S = " + set_str(e.S) +
            "\n  delta = " + std::to_string(e.delta) + "\n";
  }
  emit(o, Json{{"valuation", v.describe()}, {"Q", q.str()}, {"results", results}}, text);
  return 0;
}

int run_scenario(const Options& o) {
  if (o.scenario != "artin-schreier") throw InputError("unknown scenario '" + o.scenario + "'");
  ScenarioOptions so{o.p, o.depth, o.n_max, 0, mode(o)};
  Json j = scenario_report(so);
  std::string text = "scenario artin-schreier p = " + std::to_string(o.p) + ", depth " + std::to_string(o.depth) +
                     " (precision depth " + j["precision_depth"].dump() + ")\n";
  text += "F = " + j["family"]["F"].get<std::string>() + "\n";
  for (const auto& e : j["per_n"])
    text += "  n = " + e["n"].dump() + ": nu(Q) = " + e["nuQ"].get<std::string>() +
            ", eps(Q) = " + e["epsQ"].get<std::string>() + ", nu_Q(F) = " + e["nu_trunc_F"].get<std::string>() +
            ", delta = " + e["delta"].dump() + "\n";
  text += "theorem1: r = " + j["theorem1"]["r"].dump() + ", " + (j["theorem1"]["pass"] ? "pass" : "FAIL") + "\n";
  text += "theorem2: support " + j["theorem2"]["support"].dump() + ", " + (j["theorem2"]["pass"] ? "pass" : "FAIL") +
          "\n";
  text += "membership: F " + j["membership"]["F"]["status"].get<std::string>() + ", G " +
          j["membership"]["G"]["status"].get<std::string>() + "\n";
  text += "bound checks: " + std::string(j["bound_checks"]["pass"] ? "pass" : "FAIL") +
          ", structure checks: " + (j["structure_checks"]["pass"] ? "pass" : "FAIL") + "\n";
  emit(o, j, text);
  return j["pass"] ? 0 : 1;
}

int run_check(const Options& o) {
  using K = PuiseuxSeries;
  const std::string& lemma = o.lemma;
  auto need = [&](std::size_t e, std::size_t q) {
    if (o.exprs.size() < e || o.qs.size() < q)
      throw InputError("check " + lemma + " needs " + std::to_string(e) + " --expr and " + std::to_string(q) +
                       " --q");
  };
  auto family_based = lemma == "membership" || lemma == "limit-structure" || lemma == "remove-high" ||
                      lemma == "bounds";
  if (family_based) {
    Scenario sc = artin_schreier_family(o.p, o.depth);
    Json j;
    if (lemma == "bounds") {
      auto r = bound_checks(sc.family, 1, o.depth, false);
      j = r.to_json();
      emit(o, j, std::string("bounds: ") + (r.pass() ? "pass" : "FAIL") + "\n");
      return r.pass() ? 0 : 1;
    }
    need(1, 0);
    auto f = parse_polynomial<K>(o.exprs[0], o.p);
    if (lemma == "membership") {
      auto m = in_S_alpha(sc.family, f, o.n_max, mode(o));
      j = m.to_json();
      emit(o, j, f.str() + ": " + to_string(m.status) + (m.witness ? " (n = " + std::to_string(*m.witness) + ")" : "") +
                     "\n  " + m.reason + "\n");
      return m.status == Membership::Undetermined ? 2 : 0;
    }
    const unsigned n = o.member ? o.member : o.depth;
    if (lemma == "limit-structure") {
      j = limit_structure(sc.family, f, n).to_json();
      emit(o, j, j.dump(2) + "\n");
      return 0;
    }
    auto r = remove_high_monomials(sc.family, f, n, o.n_max);
    j = r.to_json();
    emit(o, j, r.result.str() + "\n");
    return 0;
  }

  auto v = make_valuation<K>(o.valuation, o.p);
  Json j;
  bool ok = true;
  if (lemma == "same-degree") {
    need(0, 2);
    auto r = compare_same_degree(v, parse_polynomial<K>(o.qs[0], o.p), parse_polynomial<K>(o.qs[1], o.p), false);
    j = r.to_json();
    ok = r.pass();
  } else if (lemma == "expansions") {
    need(1, 2);
    auto r = compare_expansions(v, parse_polynomial<K>(o.exprs[0], o.p), parse_polynomial<K>(o.qs[0], o.p),
                                parse_polynomial<K>(o.qs[1], o.p), false);
    j = r.to_json();
    ok = r.pass();
  } else if (lemma == "leibniz") {
    need(1, 1);
    auto h = parse_polynomial<K>(o.exprs[0], o.p);
    auto q = parse_polynomial<K>(o.qs[0], o.p);
    auto terms = leibniz_expand(h, q, o.n, o.b, o.cap);
    Json ts = Json::array();
    for (const auto& t : terms) ts.push_back(Json{{"tuple", t.gamma.str()}, {"C", t.C}, {"T", t.T.str()}});
    ok = leibniz_sum(terms, o.p) == hasse_derivative(h * q.pow(o.n), o.b);
    j = Json{{"terms", ts}, {"reconstructs", ok}};
  } else if (lemma == "tuple-bound") {
    need(1, 1);
    auto h = parse_polynomial<K>(o.exprs[0], o.p);
    auto q = parse_polynomial<K>(o.qs[0], o.p);
    auto lq = level(v, q);
    Json ts = Json::array();
    for (const auto& g : enumerate_tuples(o.n, o.b, o.cap)) ts.push_back(tuple_value_bound(v, g, h, q, o.n, lq).to_json());
    j = Json{{"tuples", ts}};
  } else if (lemma == "degree-drop") {
    need(1, 1);
    auto r = degree_drop_check(v, parse_polynomial<K>(o.exprs[0], o.p), parse_polynomial<K>(o.qs[0], o.p), o.n, o.b);
    j = r.to_json();
    ok = r.pass;
  } else if (lemma == "derivative-drop") {
    need(1, 1);
    j = derivative_drop(v, parse_polynomial<K>(o.exprs[0], o.p), parse_polynomial<K>(o.qs[0], o.p)).to_json();
  } else {
    throw InputError("unknown check '" + lemma + "'");
  }
  emit(o, j, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int run_suite_cmd(const Options& o) {
  SuiteOptions so;
  so.seed = o.seed;
  so.cases = o.cases;
  so.only = o.only;
  so.chain_length = o.chain;
  so.mode = mode(o);
  SuiteReport r = run_suite(so);
  std::string text;
  for (const auto& pr : r.properties) {
    text += (pr.pass() ? "ok    " : "FAIL  ") + pr.name + "  " + std::to_string(pr.passed) + "/" +
            std::to_string(pr.applicable) + " (" + std::to_string(pr.generated) + " generated)\n";
    for (const auto& f : pr.failures)
      text += "      case " + std::to_string(f.index) + ": " + f.detail + "\n      shrunk: " + f.shrunk.to_json().dump() +
              "\n";
  }
  emit(o, r.to_json(), text);
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key polynomials, truncations and limit key polynomials over F_p"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic")->capture_default_str();
    sub->add_option("--field", o.field, "puiseux or rational")
        ->check(CLI::IsMember({"puiseux", "rational"}))
        ->capture_default_str();
    sub->add_flag("--json", o.json, "JSON output");
    sub->add_flag("--serial", o.serial, "disable the parallel kernels");
  };
  auto valued = [&](CLI::App* sub) {
    sub->add_option("--valuation", o.valuation, "monomial:GAMMA, evaluation, truncation:Q or a JSON spec")
        ->capture_default_str();
    sub->add_option("--expr", o.exprs, "polynomial (repeatable)");
  };

  auto* eval = app.add_subcommand("eval", "nu, eps and I of each expression");
  common(eval);
  valued(eval);
  auto* expand = app.add_subcommand("expand", "Q-expansion data of each expression");
  common(expand);
  valued(expand);
  expand->add_option("--q", o.qs, "expansion polynomial")->required();

  auto* scenario = app.add_subcommand("scenario", "run a scenario family end to end");
  common(scenario);
  scenario->add_option("name", o.scenario, "scenario name")->capture_default_str();
  scenario->add_option("--depth", o.depth, "family depth")->capture_default_str();
  scenario->add_option("--n-max", o.n_max, "members sampled for membership")->capture_default_str();

  auto* check = app.add_subcommand("check", "run one checker on given inputs");
  common(check);
  valued(check);
  check->add_option("lemma", o.lemma,
                    "same-degree, expansions, leibniz, tuple-bound, degree-drop, derivative-drop, membership, "
                    "limit-structure, remove-high, bounds")
      ->required();
  check->add_option("--q", o.qs, "key polynomial (repeatable)");
  check->add_option("--n", o.n, "power of Q")->capture_default_str();
  check->add_option("--b", o.b, "derivative order")->capture_default_str();
  check->add_option("--member", o.member, "family member (default: depth)");
  check->add_option("--depth", o.depth, "family depth")->capture_default_str();
  check->add_option("--n-max", o.n_max, "members sampled for membership")->capture_default_str();
  check->add_option("--cap", o.cap, "tuple enumeration cap")->capture_default_str();

  auto* suite = app.add_subcommand("suite", "seeded randomized property suite");
  common(suite);
  suite->add_option("--seed", o.seed)->capture_default_str();
  suite->add_option("--cases", o.cases, "applicable cases per property")->capture_default_str();
  suite->add_option("--only", o.only, "property or group (repeatable)");
  suite->add_option("--chain", o.chain, "chain length for comparisons")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    const bool rational = o.field == "rational";
    if (*eval) return rational ? run_eval<RationalFunction>(o) : run_eval<PuiseuxSeries>(o);
    if (*expand) return rational ? run_expand<RationalFunction>(o) : run_expand<PuiseuxSeries>(o);
    if (rational) throw InputError("this command needs --field puiseux");
    if (*scenario) return run_scenario(o);
    if (*check) return run_check(o);
    if (*suite) return run_suite_cmd(o);
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
