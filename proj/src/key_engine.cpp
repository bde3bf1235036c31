#include "keypoly/key_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "keypoly/errors.hpp"

namespace keypoly {

std::size_t DerivTuple::total() const { return std::accumulate(parts.begin(), parts.end(), b0); }

std::string DerivTuple::str() const {
  std::string s = "(" + std::to_string(b0) + ";";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

namespace {

std::vector<std::uint64_t> multiplicities(const DerivTuple& g) {
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < g.parts.size(); ++i) {
    if (i > 0 && g.parts[i] == g.parts[i - 1])
      ++counts.back();
    else
      counts.push_back(1);
  }
  return counts;
}

void partitions(std::size_t rest, std::size_t min_part, std::size_t slots, std::vector<std::size_t>& cur,
                std::size_t b0, std::vector<DerivTuple>& out, std::size_t cap) {
  if (rest == 0) {
    if (out.size() >= cap) throw CapExceeded("S_{b,n} has more than " + std::to_string(cap) + " tuples");
    out.push_back({b0, cur});
    return;
  }
  if (slots == 0) return;
  for (std::size_t part = min_part; part <= rest; ++part) {
    // The remaining parts are all >= part, so at most rest / part of them fit.
    if (rest - part != 0 && (rest - part) < part) continue;
    cur.push_back(part);
    partitions(rest - part, part, slots - 1, cur, b0, out, cap);
    cur.pop_back();
  }
}

Clause clause(std::string id, bool applicable, bool pass, std::string detail = "") {
  return Clause{std::move(id), applicable, applicable ? pass : true, std::move(detail)};
}

std::string show(const ExtValue& a) { return a.str(); }

template <CoefficientField K>
void require_same_degree(const Polynomial<K>& q1, const Polynomial<K>& q2) {
  if (q1.is_zero() || q2.is_zero() || q1.deg() != q2.deg() || q1.deg() < 1)
    throw InputError("comparison needs two polynomials of the same positive degree");
}

}  // namespace

unsigned multinomial_C(std::size_t n, const DerivTuple& gamma, unsigned p) {
  if (gamma.r() > n) throw InputError("tuple " + gamma.str() + " has more than n = " + std::to_string(n) + " parts");
  auto counts = multiplicities(gamma);
  return multinomial_mod(n, counts, p);
}

mpz_class multinomial_C_exact(std::size_t n, const DerivTuple& gamma) {
  if (gamma.r() > n) throw InputError("tuple " + gamma.str() + " has more than n = " + std::to_string(n) + " parts");
  mpz_class num, den, f;
  mpz_fac_ui(num.get_mpz_t(), n);
  mpz_fac_ui(den.get_mpz_t(), n - gamma.r());
  for (auto c : multiplicities(gamma)) {
    mpz_fac_ui(f.get_mpz_t(), c);
    den *= f;
  }
  return num / den;
}

std::vector<DerivTuple> enumerate_tuples(std::size_t n, std::size_t b, std::size_t cap) {
  std::vector<DerivTuple> out;
  std::vector<std::size_t> cur;
  for (std::size_t b0 = 0; b0 <= b; ++b0) partitions(b - b0, 1, n, cur, b0, out, cap);
  return out;
}

template <CoefficientField K>
std::vector<DerivTerm<K>> leibniz_expand(const Polynomial<K>& h, const Polynomial<K>& q, std::size_t n, std::size_t b,
                                         std::size_t cap) {
  const unsigned p = q.characteristic();
  if (h.is_zero()) throw InputError("leibniz_expand needs h != 0");
  if (q.is_zero() || h.deg() >= q.deg()) throw InputError("leibniz_expand needs deg h < deg Q");
  if (n < 1 || b < 1) throw InputError("leibniz_expand needs n >= 1 and b >= 1");
  auto tuples = enumerate_tuples(n, b, cap);
  std::vector<Polynomial<K>> dh, dq, qpow;
  for (std::size_t k = 0; k <= b; ++k) {
    dh.push_back(hasse_derivative(h, k));
    dq.push_back(hasse_derivative(q, k));
  }
  qpow.push_back(Polynomial<K>::constant(K::one(p)));
  for (std::size_t k = 1; k <= n; ++k) qpow.push_back(qpow.back() * q);
  std::vector<DerivTerm<K>> out;
  out.reserve(tuples.size());
  for (auto& g : tuples) {
    Polynomial<K> t = dh[g.b0];
    for (auto part : g.parts) {
      if (t.is_zero()) break;
      t = t * dq[part];
    }
    if (!t.is_zero()) t = t * qpow[n - g.r()];
    unsigned c = multinomial_C(n, g, p);
    out.push_back({std::move(g), c, std::move(t)});
  }
  return out;
}

template <CoefficientField K>
Polynomial<K> leibniz_sum(const std::vector<DerivTerm<K>>& terms, unsigned p) {
  Polynomial<K> acc(p);
  for (const auto& t : terms)
    if (t.C != 0 && !t.T.is_zero()) acc = acc + K::from_int(p, t.C) * t.T;
  return acc;
}

Json TupleBound::to_json() const {
  return Json{{"tuple", gamma.str()},     {"value", value.str()},       {"bound", bound.str()},
              {"tight", tight},           {"structural", structural},   {"pass", pass()}};
}

template <CoefficientField K>
TupleBound tuple_value_bound(const Valuation<K>& v, const DerivTuple& gamma, const Polynomial<K>& h,
                             const Polynomial<K>& q, std::size_t n, const LevelData& q_level) {
  if (h.is_zero() || h.deg() >= q.deg()) throw InputError("tuple_value_bound needs 0 != h with deg h < deg Q");
  if (gamma.r() > n) throw InputError("tuple " + gamma.str() + " has more than n parts");
  const std::size_t b = gamma.total();
  Polynomial<K> t = hasse_derivative(h, gamma.b0);
  for (auto part : gamma.parts) t = t * hasse_derivative(q, part);
  t = t * q.pow(static_cast<unsigned>(n - gamma.r()));
  TupleBound out;
  out.gamma = gamma;
  out.value = v.nu(t);
  out.bound = v.nu(h) + q_level.nu.scaled(static_cast<long>(n)) - q_level.epsilon.scaled(static_cast<long>(b));
  out.tight = out.value == out.bound;
  out.structural = gamma.b0 == 0 && std::all_of(gamma.parts.begin(), gamma.parts.end(),
                                                 [&](std::size_t bi) { return q_level.I.count(bi) > 0; });
  if (!out.pass())
    throw AssertionFailure("tuple " + gamma.str() + ": nu(T) = " + out.value.str() + ", bound " + out.bound.str() +
                           ", tight " + std::to_string(out.tight) + ", structural " + std::to_string(out.structural));
  return out;
}

template <CoefficientField K>
TupleBound tuple_value_bound(const Valuation<K>& v, const DerivTuple& gamma, const Polynomial<K>& h,
                             const Polynomial<K>& q, std::size_t n) {
  return tuple_value_bound(v, gamma, h, q, n, level(v, q));
}

Json DegreeDropCheck::to_json() const {
  return Json{{"applicable", applicable}, {"nu_q", nu_q.str()}, {"bound", bound.str()}, {"delta", delta},
              {"limit", limit},           {"binom_nonzero", binom_nonzero}, {"pass", pass}};
}

template <CoefficientField K>
DegreeDropCheck degree_drop_check(const Valuation<K>& v, const Polynomial<K>& h, const Polynomial<K>& q, std::size_t n,
                                  std::size_t b) {
  const unsigned p = q.characteristic();
  LevelData lq = level(v, q);
  DegreeDropCheck out;
  if (!lq.b_max || b % *lq.b_max != 0) return out;
  const std::size_t k = b / *lq.b_max;
  Polynomial<K> g = hasse_derivative(h * q.pow(static_cast<unsigned>(n)), b);
  out.bound = v.nu(h) + lq.nu.scaled(static_cast<long>(n)) - lq.epsilon.scaled(static_cast<long>(b));
  if (g.is_zero()) {
    out.nu_q = ExtValue::pos_inf();
    return out;
  }
  ExpansionData e = expansion_data(v, g, q);
  out.nu_q = e.nu_q;
  out.delta = e.delta;
  if (out.nu_q != out.bound) return out;
  out.applicable = true;
  out.binom_nonzero = k <= n && binom_mod(n, k, p) != 0;
  if (k > n) {
    out.pass = false;
    return out;
  }
  out.limit = n - k;
  out.pass = out.delta <= out.limit && ((out.delta == out.limit) == out.binom_nonzero);
  return out;
}

Json DerivativeDrop::to_json() const {
  return Json{{"delta", delta},
              {"e", e},
              {"u", u},
              {"b_M", b_max},
              {"b", b},
              {"nu_q", nu_q.str()},
              {"epsilon", epsilon.str()},
              {"nu_after", nu_after.str()},
              {"delta_after", delta_after},
              {"expected_nu", expected_nu.str()},
              {"expected_delta", expected_delta}};
}

template <CoefficientField K>
DerivativeDrop derivative_drop(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q) {
  const unsigned p = q.characteristic();
  ExpansionData e = expansion_data(v, f, q);
  if (e.delta == 0) throw InputError("derivative_drop needs delta_Q(f) > 0");
  LevelData lq = level(v, q);
  if (!lq.b_max) throw InputError("derivative_drop needs I(Q) nonempty");
  DerivativeDrop out;
  out.delta = e.delta;
  PadicSplit s = padic_split(e.delta, p);
  out.e = s.e;
  out.u = s.u;
  out.b_max = *lq.b_max;
  out.b = static_cast<std::size_t>(s.power) * out.b_max;
  out.nu_q = e.nu_q;
  out.epsilon = lq.epsilon;
  out.expected_nu = e.nu_q - lq.epsilon.scaled(static_cast<long>(out.b));
  out.expected_delta = e.delta - static_cast<std::size_t>(s.power);
  Polynomial<K> g = hasse_derivative(f, out.b);
  if (g.is_zero()) {
    out.nu_after = ExtValue::pos_inf();
  } else {
    ExpansionData eg = expansion_data(v, g, q);
    out.nu_after = eg.nu_q;
    out.delta_after = eg.delta;
  }
  if (out.nu_after != out.expected_nu || out.delta_after != out.expected_delta)
    throw AssertionFailure("derivative drop at b = " + std::to_string(out.b) + ": nu_Q(d_b f) = " + out.nu_after.str() +
                           " (expected " + out.expected_nu.str() + "), delta = " + std::to_string(out.delta_after) +
                           " (expected " + std::to_string(out.expected_delta) + ")");
  return out;
}

Json to_json(const LevelData& l) {
  Json j{{"epsilon", l.epsilon.str()}, {"I", to_json(l.I)}, {"nu", l.nu.str()}};
  j["b_M"] = l.b_max ? Json(*l.b_max) : Json(nullptr);
  j["derivative_values"] = to_json(l.derivative_values);
  return j;
}

Json to_json(const ExpansionData& e) {
  return Json{{"values", to_json(e.values)}, {"nu_q", e.nu_q.str()}, {"S", to_json(e.S)},
              {"delta", e.delta},            {"deg_q", e.deg_q}};
}

Json SameDegreeReport::to_json() const {
  return Json{{"nu1", nu1.str()},
              {"nu2", nu2.str()},
              {"level1", keypoly::to_json(level1)},
              {"level2", keypoly::to_json(level2)},
              {"clauses", keypoly::to_json(clauses)},
              {"pass", pass()}};
}

template <CoefficientField K>
SameDegreeReport compare_same_degree(const Valuation<K>& v, const Polynomial<K>& q1, const Polynomial<K>& q2,
                                     bool strict) {
  require_same_degree(q1, q2);
  SameDegreeReport out;
  out.nu1 = v.nu(q1);
  out.nu2 = v.nu(q2);
  if (out.nu2 < out.nu1) throw InputError("compare_same_degree needs nu(Q1) <= nu(Q2)");
  out.level1 = level(v, q1);
  out.level2 = level(v, q2);
  out.deriv1 = out.level1.derivative_values;
  out.deriv2 = out.level2.derivative_values;
  auto d1 = [&](std::size_t b) { return out.deriv1.at(b - 1); };
  auto d2 = [&](std::size_t b) { return out.deriv2.at(b - 1); };

  for (auto b : out.level1.I)
    out.clauses.push_back(clause("i:b=" + std::to_string(b), true, d1(b) == d2(b),
                                 "nu(d_b Q1) = " + show(d1(b)) + ", nu(d_b Q2) = " + show(d2(b))));
  const bool equal = out.nu1 == out.nu2;
  out.clauses.push_back(clause("ii", equal, out.level1.epsilon == out.level2.epsilon && out.level1.I == out.level2.I,
                               "eps " + show(out.level1.epsilon) + " vs " + show(out.level2.epsilon)));
  out.clauses.push_back(clause("iii", !equal, out.level1.epsilon < out.level2.epsilon,
                               "eps " + show(out.level1.epsilon) + " < " + show(out.level2.epsilon)));
  for (auto b1 : out.level1.I)
    for (auto b2 : out.level2.I) {
      bool hyp = out.nu1 < out.nu2 && d2(b2) == d1(b2) && d2(b1) == d1(b1);
      out.clauses.push_back(clause("iv:b1=" + std::to_string(b1) + ",b2=" + std::to_string(b2), hyp, b2 <= b1));
    }
  if (strict) require_all(out.clauses, "same-degree comparison of " + q1.str() + " and " + q2.str());
  return out;
}

Json ExpansionCompareReport::to_json() const {
  return Json{{"nu_f", nu_f.str()},
              {"nu_Q1", nu1.str()},
              {"nu_Q2", nu2.str()},
              {"expansion_Q1", keypoly::to_json(e1)},
              {"expansion_Q2", keypoly::to_json(e2)},
              {"cross", keypoly::to_json(cross)},
              {"r", r},
              {"clauses", keypoly::to_json(clauses)},
              {"pass", pass()}};
}

template <CoefficientField K>
ExpansionCompareReport compare_expansions(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q1,
                                          const Polynomial<K>& q2, bool strict) {
  require_same_degree(q1, q2);
  if (f.is_zero()) throw InputError("compare_expansions needs f != 0");
  ExpansionCompareReport out;
  out.nu1 = v.nu(q1);
  out.nu2 = v.nu(q2);
  if (out.nu2 < out.nu1) throw InputError("compare_expansions needs nu(Q1) <= nu(Q2)");
  QExpansion<K> x1 = q_expand(f, q1);
  QExpansion<K> x2 = q_expand(f, q2);
  out.e1 = expansion_data(v, x1);
  out.e2 = expansion_data(v, x2);
  out.nu_f = v.nu(f);
  for (const auto& d : x1.digits) out.coeff1.push_back(v.nu(d));
  for (const auto& d : x2.digits) out.coeff2.push_back(v.nu(d));
  const Valuation<K> v1 = v.truncate(q1);
  Polynomial<K> q2pow = Polynomial<K>::constant(K::one(q1.characteristic()));
  ExtValue best = ExtValue::pos_inf();
  for (std::size_t i = 0; i < x2.digits.size(); ++i) {
    ExtValue c = x2.digits[i].is_zero() ? ExtValue::pos_inf() : v1.nu(x2.digits[i] * q2pow);
    out.cross.push_back(c);
    // Ties go to the largest index.
    if (c <= best && !c.is_pos_inf()) {
      best = c;
      out.r = i;
    }
    q2pow = q2pow * q2;
  }
  auto coeff = [](const std::vector<ExtValue>& c, std::size_t i) { return i < c.size() ? c[i] : ExtValue::pos_inf(); };

  out.clauses.push_back(clause("i", true, out.e1.nu_q <= out.e2.nu_q && out.e2.nu_q <= out.nu_f,
                               show(out.e1.nu_q) + " <= " + show(out.e2.nu_q) + " <= " + show(out.nu_f)));
  ExtValue direct = coeff(out.coeff2, out.r) + (out.r == 0 ? ExtValue(0L) : out.nu1.scaled(static_cast<long>(out.r)));
  out.clauses.push_back(clause("ii", true,
                               out.e1.nu_q == out.cross[out.r] && out.cross[out.r] == direct && out.e1.delta == out.r,
                               "r = " + std::to_string(out.r) + ", delta_Q1 = " + std::to_string(out.e1.delta)));
  out.clauses.push_back(clause("iii", true, coeff(out.coeff1, out.e1.delta) == coeff(out.coeff2, out.e1.delta),
                               show(coeff(out.coeff1, out.e1.delta)) + " vs " + show(coeff(out.coeff2, out.e1.delta))));
  out.clauses.push_back(clause("iv", true, out.e2.delta <= out.e1.delta,
                               std::to_string(out.e2.delta) + " <= " + std::to_string(out.e1.delta)));
  out.clauses.push_back(clause("v", true, out.coeff1.back() == out.coeff2.back() && out.e1.deg_q == out.e2.deg_q,
                               show(out.coeff1.back()) + " vs " + show(out.coeff2.back())));
  if (out.e1.delta == 0 && out.nu1.is_finite() && out.nu2.is_finite()) {
    const ExtValue gap = out.nu2 - out.nu1;
    const ExtValue f0 = coeff(out.coeff2, 0);
    for (std::size_t i = 1; i < out.e2.values.size(); ++i) {
      ExtValue lhs = f0.is_finite() ? out.e2.values[i] - f0 : ExtValue::neg_inf();
      ExtValue mid = gap.scaled(static_cast<long>(i));
      out.clauses.push_back(clause("vi:i=" + std::to_string(i), true, lhs > mid && mid >= gap,
                                   show(lhs) + " > " + show(mid) + " >= " + show(gap)));
    }
  } else {
    out.clauses.push_back(clause("vi", false, true));
  }
  out.clauses.push_back(clause("vii", out.e2.delta > 0 && out.nu1 < out.nu2, out.e1.nu_q < out.e2.nu_q,
                               show(out.e1.nu_q) + " < " + show(out.e2.nu_q)));
  if (strict) require_all(out.clauses, "expansion comparison of " + f.str());
  return out;
}

#define KEYPOLY_INSTANTIATE(K)                                                                                     \
  template std::vector<DerivTerm<K>> leibniz_expand<K>(const Polynomial<K>&, const Polynomial<K>&, std::size_t,   \
                                                       std::size_t, std::size_t);                                 \
  template Polynomial<K> leibniz_sum<K>(const std::vector<DerivTerm<K>>&, unsigned);                              \
  template TupleBound tuple_value_bound<K>(const Valuation<K>&, const DerivTuple&, const Polynomial<K>&,           \
                                           const Polynomial<K>&, std::size_t, const LevelData&);                  \
  template TupleBound tuple_value_bound<K>(const Valuation<K>&, const DerivTuple&, const Polynomial<K>&,           \
                                           const Polynomial<K>&, std::size_t);                                    \
  template DegreeDropCheck degree_drop_check<K>(const Valuation<K>&, const Polynomial<K>&, const Polynomial<K>&,   \
                                                std::size_t, std::size_t);                                        \
  template DerivativeDrop derivative_drop<K>(const Valuation<K>&, const Polynomial<K>&, const Polynomial<K>&);     \
  template SameDegreeReport compare_same_degree<K>(const Valuation<K>&, const Polynomial<K>&, const Polynomial<K>&, \
                                                   bool);                                                         \
  template ExpansionCompareReport compare_expansions<K>(const Valuation<K>&, const Polynomial<K>&,                 \
                                                        const Polynomial<K>&, const Polynomial<K>&, bool);
KEYPOLY_INSTANTIATE(PuiseuxSeries)
KEYPOLY_INSTANTIATE(RationalFunction)
#undef KEYPOLY_INSTANTIATE

}  // namespace keypoly
