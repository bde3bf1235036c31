#include "keypoly/valuation.hpp"

#include <algorithm>
#include <mutex>
#include <type_traits>
#include <unordered_map>
#include <variant>

#include "keypoly/errors.hpp"
#include "keypoly/random.hpp"

namespace keypoly {

template <CoefficientField K>
struct Valuation<K>::Impl {
  struct Monomial {
    ExtValue gamma;
  };
  struct Evaluation {
    std::shared_ptr<const SeriesOracle> theta;
    std::optional<Polynomial<K>> minimal_poly;
    unsigned depth;
  };
  struct Truncation {
    Valuation inner;
    Polynomial<K> q;
  };

  unsigned p;
  std::variant<Monomial, Evaluation, Truncation> data;

  mutable std::mutex mu;
  mutable bool memo = true;
  mutable std::unordered_map<std::string, ExtValue> cache;

  Impl(unsigned p_, std::variant<Monomial, Evaluation, Truncation> d) : p(p_), data(std::move(d)) {}
};

namespace {

// The least i attaining the minimum, and whether it is attained only once.
struct MinScan {
  ExtValue min = ExtValue::pos_inf();
  std::size_t count = 0;
};

MinScan scan(const std::vector<ExtValue>& v) {
  MinScan s;
  for (const auto& x : v) {
    if (x < s.min) {
      s.min = x;
      s.count = 1;
    } else if (x == s.min) {
      ++s.count;
    }
  }
  return s;
}

ExtValue times(std::size_t i, const ExtValue& w) {
  if (i == 0) return ExtValue(0L);
  return w.scaled(static_cast<long>(i));
}

// val(theta - theta_n), certified from later approximants.
ExtValue distance_to_approximant(const SeriesOracle& oracle, unsigned n, unsigned depth) {
  const PuiseuxSeries base = oracle.approximant(n);
  for (unsigned m = n; m <= n + depth; ++m) {
    ExtValue err = oracle.error_order(m);
    PuiseuxSeries diff = oracle.approximant(m) - base;
    if (diff.has_terms() && ExtValue(diff.terms().front().exponent) < err) return ExtValue(diff.terms().front().exponent);
    if (err.is_pos_inf()) return diff.val();
  }
  throw Undecided(depth, "distance from theta to its approximant " + std::to_string(n));
}

ExtValue evaluate_nu(const SeriesOracle& oracle, const std::optional<PolyP>& minimal, unsigned depth, PolyP g) {
  if (g.is_zero()) return ExtValue::pos_inf();
  if (minimal) {
    g = euclid_divide(g, *minimal).remainder;
    if (g.is_zero()) return ExtValue::pos_inf();
  }
  if (g.deg() == 0) return g.coeff(0).val();
  const std::size_t d = g.deg();
  std::vector<PolyP> derivs;
  derivs.reserve(d + 1);
  for (std::size_t i = 0; i <= d; ++i) derivs.push_back(hasse_derivative(g, i));
  // g = sum_i (d_i g)(theta_n) (x - theta_n)^i, so nu(g) >= min_i val(d_i g(theta_n)) + i * w_n,
  // with equality when the minimum is attained once.
  for (unsigned n = 1; n <= depth; ++n) {
    const PuiseuxSeries theta_n = oracle.approximant(n);
    const ExtValue w = distance_to_approximant(oracle, n, depth);
    std::vector<ExtValue> values;
    values.reserve(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      ExtValue c = derivs[i].evaluate(theta_n).val();
      if (w.is_pos_inf() && i > 0) {
        values.push_back(ExtValue::pos_inf());
      } else {
        values.push_back(c + times(i, w));
      }
    }
    MinScan s = scan(values);
    if (s.count == 1 || w.is_pos_inf()) return s.min;
  }
  throw Undecided(depth, "no approximant of " + oracle.describe() + " isolates the value of " + g.str());
}

}  // namespace

template <CoefficientField K>
Valuation<K> Valuation<K>::monomial(unsigned p, const ExtValue& gamma) {
  if (!gamma.is_finite()) throw InputError("monomial valuation needs a finite gamma, got " + gamma.str());
  return Valuation(std::make_shared<Impl>(p, typename Impl::Monomial{gamma}));
}

template <CoefficientField K>
Valuation<K> Valuation<K>::evaluation(std::shared_ptr<const SeriesOracle> theta, std::optional<Polynomial<K>> minimal_poly,
                                      unsigned depth) {
  if constexpr (!std::is_same_v<K, PuiseuxSeries>) {
    throw InputError("evaluation valuations are only available over Puiseux series");
  } else {
    if (!theta) throw InputError("evaluation valuation without a point");
    if (minimal_poly && (minimal_poly->is_zero() || minimal_poly->deg() < 1 || !minimal_poly->is_monic()))
      throw InputError("minimal polynomial must be monic of positive degree");
    if (depth == 0) throw InputError("approximation depth must be positive");
    unsigned p = theta->characteristic();
    return Valuation(std::make_shared<Impl>(p, typename Impl::Evaluation{std::move(theta), std::move(minimal_poly), depth}));
  }
}

template <CoefficientField K>
Valuation<K> Valuation<K>::truncate(const Polynomial<K>& q) const {
  if (q.is_zero() || q.deg() < 1 || !q.is_monic()) throw InputError("truncation needs a monic Q of degree >= 1, got " + q.str());
  return Valuation(std::make_shared<Impl>(impl_->p, typename Impl::Truncation{*this, q}));
}

template <CoefficientField K>
typename Valuation<K>::Kind Valuation<K>::kind() const {
  return static_cast<Kind>(impl_->data.index());
}

template <CoefficientField K>
unsigned Valuation<K>::characteristic() const {
  return impl_->p;
}

template <CoefficientField K>
const ExtValue& Valuation<K>::gamma() const {
  return std::get<typename Impl::Monomial>(impl_->data).gamma;
}

template <CoefficientField K>
const Polynomial<K>& Valuation<K>::truncation_poly() const {
  return std::get<typename Impl::Truncation>(impl_->data).q;
}

template <CoefficientField K>
const Valuation<K>& Valuation<K>::inner() const {
  return std::get<typename Impl::Truncation>(impl_->data).inner;
}

template <CoefficientField K>
unsigned Valuation<K>::depth() const {
  return std::get<typename Impl::Evaluation>(impl_->data).depth;
}

template <CoefficientField K>
const std::optional<Polynomial<K>>& Valuation<K>::minimal_poly() const {
  return std::get<typename Impl::Evaluation>(impl_->data).minimal_poly;
}

template <CoefficientField K>
std::shared_ptr<const SeriesOracle> Valuation<K>::oracle() const {
  return std::get<typename Impl::Evaluation>(impl_->data).theta;
}

template <CoefficientField K>
std::string Valuation<K>::describe() const {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, typename Impl::Monomial>) {
          return "monomial(" + d.gamma.str() + ")";
        } else if constexpr (std::is_same_v<T, typename Impl::Evaluation>) {
          return "evaluation(" + d.theta->describe() + (d.minimal_poly ? "; F = " + d.minimal_poly->str() : "") + ")";
        } else {
          return "truncation(" + d.inner.describe() + "; Q = " + d.q.str() + ")";
        }
      },
      impl_->data);
}

template <CoefficientField K>
void Valuation<K>::set_memoization(bool on) const {
  std::lock_guard lock(impl_->mu);
  impl_->memo = on;
  if (!on) impl_->cache.clear();
}

template <CoefficientField K>
std::size_t Valuation<K>::cache_size() const {
  std::lock_guard lock(impl_->mu);
  return impl_->cache.size();
}

template <CoefficientField K>
ExtValue Valuation<K>::nu(const Polynomial<K>& f) const {
  if (f.is_zero()) return ExtValue::pos_inf();
  if (f.characteristic() != impl_->p) throw InputError("polynomial and valuation have different characteristics");
  // Constants are cheap and would only bloat the cache.
  if (f.is_constant() && !std::holds_alternative<typename Impl::Truncation>(impl_->data)) return f.coeff(0).val();
  std::string key;
  bool memo;
  {
    std::lock_guard lock(impl_->mu);
    memo = impl_->memo;
  }
  if (memo) {
    key = f.str();
    std::lock_guard lock(impl_->mu);
    auto it = impl_->cache.find(key);
    if (it != impl_->cache.end()) return it->second;
  }
  ExtValue result = std::visit(
      [&](const auto& d) -> ExtValue {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, typename Impl::Monomial>) {
          ExtValue m = ExtValue::pos_inf();
          const auto& c = f.coefficients();
          for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            m = std::min(m, c[i].val() + times(i, d.gamma));
          }
          return m;
        } else if constexpr (std::is_same_v<T, typename Impl::Evaluation>) {
          if constexpr (std::is_same_v<K, PuiseuxSeries>) {
            return evaluate_nu(*d.theta, d.minimal_poly, d.depth, f);
          } else {
            throw InputError("evaluation valuation over a non-series field");
          }
        } else {
          return expansion_data(d.inner, q_expand(f, d.q)).nu_q;
        }
      },
      impl_->data);
  if (!key.empty()) {
    std::lock_guard lock(impl_->mu);
    if (impl_->memo) impl_->cache.emplace(std::move(key), result);
  }
  return result;
}

template <CoefficientField K>
LevelData level(const Valuation<K>& v, const Polynomial<K>& f) {
  if (f.is_zero()) throw InputError("level of the zero polynomial");
  LevelData out{ExtValue::neg_inf(), {}, std::nullopt, {}, v.nu(f)};
  const std::size_t d = f.deg();
  for (std::size_t b = 1; b <= d; ++b) {
    Polynomial<K> db = hasse_derivative(f, b);
    ExtValue nb = v.nu(db);
    out.derivative_values.push_back(nb);
    if (db.is_zero()) continue;
    // nu(f) = nu(d_b f) = inf cannot happen for a nonzero derivative of lower degree
    // unless nu has a kernel there; such b are skipped like zero derivatives.
    if (out.nu.is_pos_inf() && nb.is_pos_inf()) continue;
    ExtValue e = (out.nu - nb).divided(static_cast<long>(b));
    if (e > out.epsilon) {
      out.epsilon = e;
      out.I = {b};
    } else if (e == out.epsilon) {
      out.I.insert(b);
    }
  }
  if (!out.I.empty()) out.b_max = *out.I.rbegin();
  return out;
}

template <CoefficientField K>
ExpansionData expansion_data(const Valuation<K>& v, const QExpansion<K>& e) {
  ExpansionData out;
  out.nu_q = ExtValue::pos_inf();
  out.deg_q = e.deg_q();
  const ExtValue nq = e.digits.size() > 1 ? v.nu(e.q) : ExtValue(0L);
  for (std::size_t i = 0; i < e.digits.size(); ++i) {
    ExtValue val = e.digits[i].is_zero() ? ExtValue::pos_inf() : v.nu(e.digits[i]) + times(i, nq);
    out.values.push_back(val);
    out.nu_q = std::min(out.nu_q, val);
  }
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (out.values[i] == out.nu_q && !out.nu_q.is_pos_inf()) out.S.insert(i);
  out.delta = out.S.empty() ? 0 : *out.S.rbegin();
  return out;
}

template <CoefficientField K>
ExpansionData expansion_data(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q) {
  return expansion_data(v, q_expand(f, q));
}

template <CoefficientField K>
Refutation<K> refute_key(const Valuation<K>& v, const Polynomial<K>& q, const std::vector<Polynomial<K>>& witnesses) {
  if (q.is_zero() || q.deg() < 1 || !q.is_monic()) throw InputError("refute_key needs a monic Q of degree >= 1");
  Refutation<K> out;
  out.epsilon_q = level(v, q).epsilon;
  for (const auto& w : witnesses) {
    if (w.is_zero()) continue;
    if (w.deg() >= q.deg()) throw InputError("witness " + w.str() + " does not have degree < deg Q");
    ExtValue e = level(v, w).epsilon;
    out.witness_levels.push_back(e);
    if (e >= out.epsilon_q) {
      out.refuted = true;
      out.witness = w;
      return out;
    }
  }
  return out;
}

template <CoefficientField K>
std::vector<Polynomial<K>> default_witnesses(const Polynomial<K>& q, const std::vector<Polynomial<K>>& known_keys,
                                             unsigned random, std::uint64_t seed) {
  const unsigned p = q.characteristic();
  const std::size_t d = q.deg();
  std::vector<Polynomial<K>> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(Polynomial<K>::monomial(K::one(p), i));
  for (const auto& k : known_keys)
    if (!k.is_zero() && k.deg() < d) out.push_back(k);
  Rng rng = derive_rng(seed, 0x7769746e);
  for (unsigned r = 0; r < random; ++r) out.push_back(random_polynomial<K>(rng, p, d - 1));
  return out;
}

template class Valuation<PuiseuxSeries>;
template class Valuation<RationalFunction>;

#define KEYPOLY_INSTANTIATE(K)                                                                                   \
  template LevelData level<K>(const Valuation<K>&, const Polynomial<K>&);                                       \
  template ExpansionData expansion_data<K>(const Valuation<K>&, const QExpansion<K>&);                          \
  template ExpansionData expansion_data<K>(const Valuation<K>&, const Polynomial<K>&, const Polynomial<K>&);     \
  template Refutation<K> refute_key<K>(const Valuation<K>&, const Polynomial<K>&,                               \
                                       const std::vector<Polynomial<K>>&);                                      \
  template std::vector<Polynomial<K>> default_witnesses<K>(const Polynomial<K>&, const std::vector<Polynomial<K>>&, \
                                                           unsigned, std::uint64_t);
KEYPOLY_INSTANTIATE(PuiseuxSeries)
KEYPOLY_INSTANTIATE(RationalFunction)
#undef KEYPOLY_INSTANTIATE

}  // namespace keypoly
