#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "keypoly/polynomial.hpp"
#include "keypoly/series_oracle.hpp"

namespace keypoly {

// A rank-one valuation on K[x] extending val on K. Handles are cheap to copy
// and immutable; nu() is safe to call from several threads.
template <CoefficientField K>
class Valuation {
 public:
  enum class Kind { Monomial, Evaluation, Truncation };

  // nu(sum a_i x^i) = min val(a_i) + i * gamma.
  static Valuation monomial(unsigned p, const ExtValue& gamma);
  // nu(f) = val(f(theta)). With F given (monic, F(theta) = 0) inputs are
  // reduced mod F first. Only available over Puiseux series.
  static Valuation evaluation(std::shared_ptr<const SeriesOracle> theta, std::optional<Polynomial<K>> minimal_poly,
                              unsigned depth = default_precision_depth());
  // nu_Q(f) = min_i nu(f_i Q^i) over the Q-expansion. Q must be monic with
  // deg Q >= 1; that it is a key polynomial for *this is not checked.
  Valuation truncate(const Polynomial<K>& q) const;

  Kind kind() const;
  unsigned characteristic() const;
  const ExtValue& gamma() const;                  // Monomial
  const Polynomial<K>& truncation_poly() const;   // Truncation
  const Valuation& inner() const;                 // Truncation
  unsigned depth() const;                         // Evaluation
  const std::optional<Polynomial<K>>& minimal_poly() const;  // Evaluation
  std::shared_ptr<const SeriesOracle> oracle() const;         // Evaluation
  std::string describe() const;

  ExtValue nu(const Polynomial<K>& f) const;

  // The memo cache is on by default. Disabling it also clears it.
  void set_memoization(bool on) const;
  std::size_t cache_size() const;

  struct Impl;

 private:
  explicit Valuation(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

struct LevelData {
  ExtValue epsilon;  // -inf for constants
  std::set<std::size_t> I;
  std::optional<std::size_t> b_max;
  std::vector<ExtValue> derivative_values;  // nu(d_b f) for b = 1..deg f
  ExtValue nu;
};

// epsilon(f) = max_{1 <= b <= deg f} (nu(f) - nu(d_b f)) / b, taken over the b
// with d_b f != 0.
template <CoefficientField K>
LevelData level(const Valuation<K>& v, const Polynomial<K>& f);

struct ExpansionData {
  std::vector<ExtValue> values;  // nu(f_i Q^i); +inf for zero digits
  ExtValue nu_q;
  std::set<std::size_t> S;
  std::size_t delta = 0;
  std::size_t deg_q = 0;
};

template <CoefficientField K>
ExpansionData expansion_data(const Valuation<K>& v, const QExpansion<K>& e);
template <CoefficientField K>
ExpansionData expansion_data(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q);

template <CoefficientField K>
struct Refutation {
  bool refuted = false;
  std::optional<Polynomial<K>> witness;
  ExtValue epsilon_q;
  std::vector<ExtValue> witness_levels;  // in witness order, up to the refuting one
};

// Sound refuter for "Q is a key polynomial": looks for f with deg f < deg Q
// and epsilon(f) >= epsilon(Q).
template <CoefficientField K>
Refutation<K> refute_key(const Valuation<K>& v, const Polynomial<K>& q, const std::vector<Polynomial<K>>& witnesses);

// x^0..x^(d-1), the supplied smaller-degree key polynomials, then `random`
// polynomials of degree < d with small Laurent monomial coefficients.
template <CoefficientField K>
std::vector<Polynomial<K>> default_witnesses(const Polynomial<K>& q, const std::vector<Polynomial<K>>& known_keys,
                                             unsigned random = 64, std::uint64_t seed = 1);

extern template class Valuation<PuiseuxSeries>;
extern template class Valuation<RationalFunction>;

}  // namespace keypoly
