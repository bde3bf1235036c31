#include "keypoly/limit_engine.hpp"

#include <algorithm>
#include <memory>

#include "keypoly/errors.hpp"
#include "keypoly/random.hpp"

namespace keypoly {

namespace {

using K = PuiseuxSeries;


K coeff0(const PolyP& f) { return f.coeff(0); }

std::string show_set(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto i : s) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

// With alpha = 1 and Q_n = Q_{n0} - c (val c = nu(Q_{n0}) for n > n0), digit
// i of the Q_n-expansion is f_i + sum_{j > i} binom(j, i) f_j c^(j-i). If
// val f_i is below every term that survives mod p, its value is frozen for
// all n >= n0 and nu_{Q_n}(f) <= val f_i + i nu(Q_n) < val f_i + i B.
std::optional<ExtValue> dominance_bound(const KeyFamily& fam, const PolyP& f, unsigned n0) {
  if (fam.alpha != 1 || !fam.B.is_finite()) return std::nullopt;
  const auto& v = fam.valuation;
  const PolyP q = fam.member(n0);
  const ExtValue nu_q = v.nu(q);
  auto x = q_expand(f, q);
  std::vector<ExtValue> c;
  for (const auto& d : x.digits) c.push_back(d.is_zero() ? ExtValue::pos_inf() : coeff0(d).val());
  std::optional<ExtValue> bound;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_pos_inf()) continue;
    bool dominant = true;
    for (std::size_t j = i + 1; j < c.size() && dominant; ++j) {
      if (c[j].is_pos_inf() || binom_mod(j, i, fam.p) == 0) continue;
      dominant = c[i] < c[j] + nu_q.scaled(static_cast<long>(j - i));
    }
    if (!dominant) continue;
    ExtValue u = i == 0 ? c[i] : c[i] + fam.B.scaled(static_cast<long>(i));
    if (!bound || u < *bound) bound = u;
  }
  return bound;
}

Json opt_json(const std::optional<ExtValue>& v) { return v ? Json(v->str()) : Json(nullptr); }

Clause make_clause(std::string id, bool pass, std::string detail = "") {
  return Clause{std::move(id), true, pass, std::move(detail)};
}

}  // namespace

Scenario artin_schreier_family(unsigned p, unsigned depth, unsigned precision_depth) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (depth < 2) throw InputError("scenario depth must be at least 2");
  auto oracle = std::make_shared<ArtinSchreierOracle>(p);
  std::vector<K> coeffs(p + 1, K::zero(p));
  coeffs[0] = K::monomial(p, -1, Rat(-1));
  coeffs[1] = K::from_int(p, -1);
  coeffs[p] = K::one(p);
  PolyP F(p, coeffs);
  PolyP G = F + PolyP::constant(K::monomial(p, 1, Rat(1)) + K::monomial(p, 1, Rat(2)));
  KeyFamily fam{.p = p,
                .alpha = 1,
                .B = ExtValue(0L),
                .eps_B = ExtValue(0L),
                .b_inf = 1,
                .depth = depth,
                .stable_from = 1,
                .generator = [oracle, p](unsigned n) { return PolyP::x(p) - PolyP::constant(oracle->approximant(n)); },
                .valuation = Valuation<K>::evaluation(oracle, F,
                                                      precision_depth ? precision_depth : default_precision_depth()),
                .name = "artin-schreier"};
  Scenario s{std::move(fam), F, G};
  return s;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::InCertified:
      return "IN_CERTIFIED";
    case Membership::InSampled:
      return "IN_SAMPLED";
    case Membership::Out:
      return "OUT";
    case Membership::Undetermined:
      break;
  }
  return "UNDETERMINED";
}

Json MembershipResult::to_json() const {
  Json j{{"status", keypoly::to_string(status)}};
  j["witness"] = witness ? Json(*witness) : Json(nullptr);
  j["nu_f"] = status == Membership::Undetermined ? Json(nullptr) : Json(nu_f.str());
  j["nu_trunc"] = keypoly::to_json(nu_trunc);
  j["sup_bound"] = opt_json(sup_bound);
  j["certified_from"] = certified_from ? Json(*certified_from) : Json(nullptr);
  j["reason"] = reason;
  return j;
}

MembershipResult in_S_alpha(const KeyFamily& family, const PolyP& f, unsigned n_max, Execution mode) {
  if (f.is_zero()) throw InputError("membership test needs f != 0");
  if (n_max < 1) throw InputError("n_max must be positive");
  const auto& v = family.valuation;
  MembershipResult out;
  try {
    out.nu_f = v.nu(f);
    out.nu_trunc = index_map(
        n_max, [&](std::size_t i) { return expansion_data(v, f, family.member(static_cast<unsigned>(i + 1))).nu_q; },
        mode);
  } catch (const Undecided& e) {
    out.status = Membership::Undetermined;
    out.nu_trunc.clear();
    out.reason = e.what();
    return out;
  }
  for (unsigned n = 1; n <= n_max; ++n) {
    const ExtValue& t = out.nu_trunc[n - 1];
    if (out.nu_f < t)
      throw AssertionFailure("nu_Q(f) = " + t.str() + " exceeds nu(f) = " + out.nu_f.str() + " at n = " +
                             std::to_string(n));
    if (t == out.nu_f) {
      out.status = Membership::Out;
      out.witness = n;
      out.reason = "nu_{Q_" + std::to_string(n) + "}(f) = nu(f) = " + t.str();
      return out;
    }
  }
  for (unsigned n0 = 1; n0 <= n_max; ++n0) {
    auto u = dominance_bound(family, f, n0);
    if (u && *u < out.nu_f) {
      out.sup_bound = u;
      out.certified_from = n0;
      break;
    }
  }
  if (out.nu_f.is_pos_inf()) {
    out.status = Membership::InCertified;
    out.reason = "nu(f) = +inf";
  } else if (out.sup_bound) {
    out.status = Membership::InCertified;
    out.reason = "digit values frozen from n = " + std::to_string(*out.certified_from) + "; sup nu_Q(f) <= " +
                 out.sup_bound->str() + " < nu(f)";
  } else {
    out.status = Membership::InSampled;
    out.reason = "strict for n <= " + std::to_string(n_max) + " without a stabilization certificate";
  }
  return out;
}

Json LimitReport::to_json() const {
  Json digits_json = Json::array();
  for (const auto& d : digits) digits_json.push_back(d.str());
  Json j{{"n", n},
         {"nuQ", nu_member.str()},
         {"nu_F", nu_F.str()},
         {"expansion", digits_json},
         {"values", keypoly::to_json(expansion.values)},
         {"coefficient_values", keypoly::to_json(coefficient_values)},
         {"S", keypoly::to_json(expansion.S)},
         {"delta", delta},
         {"deg_Q", expansion.deg_q},
         {"r", r},
         {"leading_one", leading_one},
         {"nu_trunc", nu_trunc.str()},
         {"gamma", gamma},
         {"Lambda", keypoly::to_json(Lambda)}};
  j["omega"] = omega ? Json(*omega) : Json(nullptr);
  j["P_Q"] = P_Q.str();
  j["support"] = keypoly::to_json(support);
  j["p_polynomial"] = p_polynomial;
  return j;
}

LimitReport limit_structure(const KeyFamily& family, const PolyP& F, unsigned n) {
  if (!F.is_monic()) throw InputError("limit_structure needs a monic F");
  const auto& v = family.valuation;
  const unsigned p = family.p;
  LimitReport out;
  out.n = n;
  const PolyP q = family.member(n);
  out.nu_member = v.nu(q);
  out.nu_F = v.nu(F);
  auto x = q_expand(F, q);
  out.digits = x.digits;
  out.expansion = expansion_data(v, x);
  for (const auto& d : x.digits) out.coefficient_values.push_back(v.nu(d));
  out.delta = out.expansion.delta;
  const std::size_t deg_q = out.expansion.deg_q;
  for (std::size_t i = 0; i < x.digits.size(); ++i)
    if (!x.digits[i].is_zero()) out.support.insert(i);
  out.p_polynomial =
      std::all_of(out.support.begin(), out.support.end(), [&](std::size_t i) { return i == 0 || is_power_of(i, p); });

  const std::string at = " at n = " + std::to_string(n);
  if (out.delta != deg_q)
    throw StructureViolation("delta=deg", "delta_Q(F) = " + std::to_string(out.delta) + " but deg_Q(F) = " +
                                              std::to_string(deg_q) + at);
  out.leading_one = x.digits.back() == PolyP::constant(K::one(p));
  if (!out.leading_one)
    throw StructureViolation("leading-one", "leading digit " + x.digits.back().str() + at);
  if (!is_power_of(out.delta, p))
    throw StructureViolation("p-power", "delta = " + std::to_string(out.delta) + " is not a power of p" + at);
  out.r = padic_split(out.delta, p).e;
  out.nu_trunc = out.expansion.nu_q;
  if (out.nu_trunc != out.nu_member.scaled(static_cast<long>(out.delta)))
    throw StructureViolation("nu-trunc", "nu_Q(F) = " + out.nu_trunc.str() + " but p^r nu(Q) = " +
                                             out.nu_member.scaled(static_cast<long>(out.delta)).str() + at);

  const ExtValue dB = family.B.scaled(static_cast<long>(out.delta));
  const auto& val = out.expansion.values;
  for (std::size_t i = 0; i < val.size(); ++i)
    if (!is_power_of(i, p) && val[i] < dB) out.gamma = i;
  for (std::size_t i = out.gamma + 1; i <= out.delta && i < val.size(); ++i)
    if (is_power_of(i, p) && val[i] < dB) out.Lambda.insert(i);
  if (out.gamma != 0) {
    PolyP low(p);
    PolyP qpow = q;
    for (std::size_t i = 1; i <= out.gamma; ++i, qpow = qpow * q) low = low + x.digits[i] * qpow;
    out.omega = low.is_zero() ? 0 : expansion_data(v, low, q).delta;
  }
  PolyP pq = x.digits[0];
  for (auto i : out.Lambda) pq = pq + x.digits[i] * q.pow(static_cast<unsigned>(i));
  out.P_Q = pq;
  return out;
}

Json RemovalResult::to_json() const {
  Json rem = Json::array();
  for (const auto& [i, m] : removed) rem.push_back(Json{{"digit", i}, {"monomial", m}});
  return Json{{"result", result.str()},
              {"bound", bound.str()},
              {"bound_certified", bound_certified},
              {"removed", rem},
              {"after", after.to_json()}};
}

RemovalResult remove_high_monomials(const KeyFamily& family, const PolyP& f, unsigned n, unsigned n_max) {
  if (n < 1 || n > n_max) throw InputError("remove_high_monomials needs 1 <= n <= n_max");
  const auto& v = family.valuation;
  const unsigned p = family.p;
  MembershipResult before = in_S_alpha(family, f, n_max);
  if (before.status == Membership::Out || before.status == Membership::Undetermined)
    throw InputError("f is not known to lie in S_alpha: " + before.reason);
  RemovalResult out;
  std::optional<ExtValue> u = before.sup_bound;
  for (unsigned n0 = 1; !u && n0 <= n_max; ++n0) u = dominance_bound(family, f, n0);
  if (u) {
    out.bound = *u;
    out.bound_certified = true;
  } else {
    out.bound = *std::max_element(before.nu_trunc.begin() + (n - 1), before.nu_trunc.end());
  }
  const PolyP q = family.member(n);
  const ExtValue nu_q = v.nu(q);
  auto x = q_expand(f, q);
  PolyP drop(p);
  for (std::size_t i = 1; i < x.digits.size(); ++i) {
    const auto& cs = x.digits[i].coefficients();
    for (std::size_t j = 0; j < cs.size(); ++j)
      for (const auto& term : cs[j].terms()) {
        PolyP mono = PolyP::monomial(K::from_terms(p, {term}), j);
        if (v.nu(mono) + nu_q.scaled(static_cast<long>(i)) > out.bound) {
          drop = drop + mono * q.pow(static_cast<unsigned>(i));
          out.removed.emplace_back(i, mono.str());
        }
      }
  }
  out.result = f - drop;
  if (out.result.is_zero()) throw AssertionFailure("removing high monomials left the zero polynomial");
  out.after = in_S_alpha(family, out.result, n_max);
  if (out.after.status == Membership::Out)
    throw AssertionFailure("removing high monomials left S_alpha: " + out.after.reason);
  return out;
}

Json BoundReport::to_json() const {
  return Json{{"clauses", keypoly::to_json(clauses)}, {"pass", pass()}};
}

BoundReport bound_checks(const KeyFamily& family, unsigned n_from, unsigned n_to, bool strict) {
  if (n_from < 1 || n_to < n_from) throw InputError("bound_checks needs 1 <= n_from <= n_to");
  const auto& v = family.valuation;
  const unsigned p = family.p;
  auto per_n = index_map(n_to - n_from + 1, [&](std::size_t idx) {
    const unsigned n = n_from + static_cast<unsigned>(idx);
    const std::string tag = ":n=" + std::to_string(n);
    std::vector<Clause> cs;
    const PolyP q = family.member(n);
    LevelData lq = level(v, q);
    for (std::size_t b = 1; b <= family.alpha; ++b) {
      ExtValue lhs = v.nu(hasse_derivative(q, b));
      ExtValue rhs = family.B - family.eps_B.scaled(static_cast<long>(b));
      cs.push_back(make_clause("derivative-floor" + tag + ",b=" + std::to_string(b), lhs >= rhs,
                               lhs.str() + " >= " + rhs.str()));
    }
    if (n >= family.stable_from)
      cs.push_back(make_clause("stable-I" + tag, lq.I == std::set<std::size_t>{family.b_inf}, "I = " + show_set(lq.I)));

    // 0 < m < k, b = m b_inf, nu(a) >= l B, every tuple of S_{b,k}.
    std::size_t checked = 0;
    std::string failure;
    for (std::size_t k = 2; k <= 4; ++k)
      for (std::size_t m = 1; m < k; ++m)
        for (long l = 0; l <= 2; ++l) {
          const std::size_t b = m * family.b_inf;
          Rat e = family.B.is_finite() ? family.B.value() * l : Rat(0);
          K base = K::monomial(p, 1, e);
          for (const K& a : {base, base * (K::one(p) + K::monomial(p, 1, Rat(1)))}) {
            const PolyP h = PolyP::constant(a);
            for (const auto& term : leibniz_expand(h, q, k, b)) {
              const long r = static_cast<long>(term.gamma.r());
              ExtValue lhs = term.T.is_zero() ? ExtValue::pos_inf() : v.nu(term.T);
              ExtValue rhs = family.B.scaled(l + r - static_cast<long>(m)) +
                             lq.nu.scaled(static_cast<long>(m + k) - r) - lq.epsilon.scaled(static_cast<long>(b));
              ++checked;
              if (!(lhs >= rhs) && failure.empty())
                failure = "k=" + std::to_string(k) + ",m=" + std::to_string(m) + ",l=" + std::to_string(l) +
                          ",tuple " + term.gamma.str() + ": " + lhs.str() + " < " + rhs.str();
            }
          }
        }
    cs.push_back(make_clause("tuple-floor" + tag, failure.empty(),
                             failure.empty() ? std::to_string(checked) + " instances" : failure));
    return cs;
  });
  BoundReport out;
  for (auto& cs : per_n) out.clauses.insert(out.clauses.end(), cs.begin(), cs.end());
  if (strict) require_all(out.clauses, "bound checks");
  return out;
}

BoundReport structure_checks(const KeyFamily& family, const PolyP& F, unsigned n_from, unsigned n_to,
                             unsigned samples, std::uint64_t seed, bool strict) {
  if (n_from < 1 || n_to <= n_from) throw InputError("structure_checks needs 1 <= n_from < n_to");
  const auto& v = family.valuation;
  const unsigned p = family.p;
  BoundReport out;
  const std::size_t count = n_to - n_from + 1;
  auto members = index_map(count, [&](std::size_t i) { return family.member(n_from + static_cast<unsigned>(i)); });
  auto levels = index_map(count, [&](std::size_t i) { return level(v, members[i]); });
  auto structures = index_map(count, [&](std::size_t i) {
    return limit_structure(family, F, n_from + static_cast<unsigned>(i));
  });
  auto tag = [&](std::size_t i) { return ":n=" + std::to_string(n_from + i); };

  const ExtValue eps_F = level(v, F).epsilon;
  for (std::size_t i = 0; i < count; ++i)
    out.clauses.push_back(make_clause("level-gap" + tag(i), levels[i].epsilon < eps_F,
                                      levels[i].epsilon.str() + " < " + eps_F.str()));
  const std::size_t deg_F = F.deg();
  for (unsigned s = 0; s < samples && deg_F > family.alpha; ++s) {
    auto rng = derive_rng(seed, 0x4e, s);
    std::size_t d = family.alpha + rng() % (deg_F - family.alpha);
    PolyP g = random_polynomial<K>(rng, p, d);
    const ExtValue eg = level(v, g).epsilon;
    std::optional<unsigned> hit;
    for (std::size_t i = 0; i < count && !hit; ++i)
      if (eg <= levels[i].epsilon) hit = n_from + static_cast<unsigned>(i);
    out.clauses.push_back(make_clause("level-sample:s=" + std::to_string(s), hit.has_value(),
                                      "eps(" + g.str() + ") = " + eg.str() +
                                          (hit ? " <= eps(Q_" + std::to_string(*hit) + ")" : " above every member")));
  }

  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto& s1 = structures[i];
    const ExtValue dB = family.B.scaled(static_cast<long>(s1.delta));
    const Valuation<K> v1 = v.truncate(members[i]);
    for (std::size_t j = i + 1; j < count; ++j) {
      std::string failure;
      for (std::size_t k = p; k <= s1.delta; k *= p) {
        const PolyP& a = s1.digits[k];
        if (a.is_zero()) continue;
        auto x = q_expand(a * members[i].pow(static_cast<unsigned>(k)), members[j]);
        PolyP qpow = members[j];
        for (std::size_t d = 1; d < k && d < x.digits.size(); ++d, qpow = qpow * members[j]) {
          if (x.digits[d].is_zero()) continue;
          const PolyP term = x.digits[d] * qpow;
          ExtValue full = v.nu(term), trunc = v1.nu(term);
          if (!(full >= trunc && trunc > dB) && failure.empty())
            failure = "k=" + std::to_string(k) + ", digit " + std::to_string(d) + ": " + full.str() + ", " + trunc.str();
        }
      }
      out.clauses.push_back(make_clause("reexpansion-interior" + tag(i) + ",m=" + std::to_string(n_from + j), failure.empty(),
                                        failure));
    }
  }

  for (std::size_t i = 1; i < count; ++i) {
    const auto& prev = structures[i - 1];
    const auto& cur = structures[i];
    for (auto k : cur.Lambda) {
      if (k >= prev.coefficient_values.size() || prev.coefficient_values[k] != cur.coefficient_values[k]) continue;
      ExtValue expect = family.B.scaled(static_cast<long>(cur.delta - k));
      out.clauses.push_back(make_clause("stable-lambda-value" + tag(i) + ",i=" + std::to_string(k),
                                        cur.coefficient_values[k] == expect,
                                        cur.coefficient_values[k].str() + " vs " + expect.str()));
    }
  }
  if (strict) require_all(out.clauses, "structure checks");
  return out;
}

Json scenario_report(const ScenarioOptions& o) {
  Scenario sc = artin_schreier_family(o.p, o.depth, o.precision_depth);
  const auto& fam = sc.family;
  const auto& v = fam.valuation;

  struct Member {
    Json entry;
    std::optional<LimitReport> f, g;
    std::string violation;
  };
  auto members = index_map(
      o.depth,
      [&](std::size_t i) {
        const unsigned n = static_cast<unsigned>(i + 1);
        const PolyP q = fam.member(n);
        LevelData lq = level(v, q);
        Member m;
        auto x = q_expand(sc.F, q);
        ExpansionData e = expansion_data(v, x);
        Json digits = Json::array();
        for (const auto& d : x.digits) digits.push_back(d.str());
        m.entry = Json{{"n", n},
                       {"Q", q.str()},
                       {"nuQ", lq.nu.str()},
                       {"epsQ", lq.epsilon.str()},
                       {"I", to_json(lq.I)},
                       {"expansion", digits},
                       {"values", to_json(e.values)},
                       {"nu_trunc_F", e.nu_q.str()},
                       {"S", to_json(e.S)},
                       {"delta", e.delta}};
        try {
          m.f = limit_structure(fam, sc.F, n);
          m.g = limit_structure(fam, sc.G, n);
          m.entry["structure_F"] = m.f->to_json();
          m.entry["structure_G"] = m.g->to_json();
        } catch (const StructureViolation& err) {
          m.violation = err.what();
          m.entry["structure_error"] = m.violation;
        }
        return m;
      },
      o.mode);

  Json per_n = Json::array();
  bool t1 = true, t2 = true;
  std::set<unsigned> rs;
  std::set<std::size_t> support;
  for (auto& m : members) {
    per_n.push_back(m.entry);
    if (!m.violation.empty() || !m.f || !m.g) {
      t1 = t2 = false;
      continue;
    }
    rs.insert(m.f->r);
    t1 = t1 && m.f->leading_one && m.f->delta == m.f->expansion.deg_q && is_power_of(m.f->delta, o.p);
    t2 = t2 && m.f->p_polynomial && m.g->p_polynomial;
    support.insert(m.f->support.begin(), m.f->support.end());
    support.insert(m.g->support.begin(), m.g->support.end());
  }
  t1 = t1 && rs.size() == 1;
  std::set<std::size_t> p_powers;
  for (auto i : support)
    if (is_power_of(i, o.p)) p_powers.insert(i);

  Json report;
  report["p"] = o.p;
  report["depth"] = o.depth;
  report["precision_depth"] = v.depth();
  report["family"] = Json{{"name", fam.name},
                          {"alpha", fam.alpha},
                          {"B", fam.B.str()},
                          {"eps_B", fam.eps_B.str()},
                          {"b_inf", fam.b_inf},
                          {"F", sc.F.str()},
                          {"G", sc.G.str()}};
  report["assumptions"] = Json::array({"family is cofinal in Psi_alpha (asserted, not checked)",
                                       "Psi_alpha has no maximum (asserted, not checked)",
                                       "nu(p) threshold is vacuous in equicharacteristic p"});
  report["per_n"] = per_n;
  report["theorem1"] = Json{{"r", rs.size() == 1 ? Json(*rs.begin()) : Json(nullptr)}, {"pass", t1}};
  report["theorem2"] = Json{{"support", to_json(support)}, {"p_power_indices", to_json(p_powers)}, {"pass", t2}};

  MembershipResult mf = in_S_alpha(fam, sc.F, o.n_max, o.mode);
  MembershipResult mg = in_S_alpha(fam, sc.G, o.n_max, o.mode);
  report["membership"] = Json{{"F", mf.to_json()}, {"G", mg.to_json()}};
  BoundReport bounds = bound_checks(fam, 1, o.depth, false);
  BoundReport structure = structure_checks(fam, sc.F, 1, o.depth, 16, 1, false);
  report["bound_checks"] = bounds.to_json();
  report["structure_checks"] = structure.to_json();
  report["pass"] = t1 && t2 && mf.status == Membership::InCertified && mg.status == Membership::InCertified &&
                   bounds.pass() && structure.pass();
  return report;
}

}  // namespace keypoly
