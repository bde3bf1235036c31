#pragma once

#include <cstddef>
#include <vector>

#include "keypoly/report.hpp"
#include "keypoly/valuation.hpp"

namespace keypoly {

// gamma = (b0; b1 <= ... <= br) with b0 + sum bi = b and r <= n.
struct DerivTuple {
  std::size_t b0 = 0;
  std::vector<std::size_t> parts;
  std::size_t r() const { return parts.size(); }
  std::size_t total() const;
  std::string str() const;
  friend bool operator==(const DerivTuple&, const DerivTuple&) = default;
};

// n! / ((n - r)! n_1! ... n_k!) with n_j the multiplicities of the distinct parts.
unsigned multinomial_C(std::size_t n, const DerivTuple& gamma, unsigned p);
mpz_class multinomial_C_exact(std::size_t n, const DerivTuple& gamma);

inline constexpr std::size_t kDefaultTupleCap = 1000000;

// All of S_{b,n}, ordered by b0 and then lexicographically by parts.
// CapExceeded when there are more than `cap` tuples.
std::vector<DerivTuple> enumerate_tuples(std::size_t n, std::size_t b, std::size_t cap = kDefaultTupleCap);

template <CoefficientField K>
struct DerivTerm {
  DerivTuple gamma;
  unsigned C;
  Polynomial<K> T;  // d_{b0}(h) * prod d_{bi}(Q) * Q^(n-r)
};

template <CoefficientField K>
std::vector<DerivTerm<K>> leibniz_expand(const Polynomial<K>& h, const Polynomial<K>& q, std::size_t n, std::size_t b,
                                         std::size_t cap = kDefaultTupleCap);

template <CoefficientField K>
Polynomial<K> leibniz_sum(const std::vector<DerivTerm<K>>& terms, unsigned p);

struct TupleBound {
  DerivTuple gamma;
  ExtValue value;    // nu(T)
  ExtValue bound;    // nu(h Q^n) - b eps(Q)
  bool tight = false;       // value == bound
  bool structural = false;  // b0 == 0 and every part in I(Q)
  bool pass() const { return value >= bound && tight == structural; }
  Json to_json() const;
};

// Value of one Leibniz term against its lower bound; AssertionFailure if the
// bound fails or tightness disagrees with the structural criterion.
template <CoefficientField K>
TupleBound tuple_value_bound(const Valuation<K>& v, const DerivTuple& gamma, const Polynomial<K>& h,
                             const Polynomial<K>& q, std::size_t n, const LevelData& q_level);

template <CoefficientField K>
TupleBound tuple_value_bound(const Valuation<K>& v, const DerivTuple& gamma, const Polynomial<K>& h,
                             const Polynomial<K>& q, std::size_t n);

// Degree drop of d_b(h Q^n) in the Q-expansion when b_M | b and the value
// bound is attained.
struct DegreeDropCheck {
  bool applicable = false;  // b_M | b and nu_Q(d_b(hQ^n)) = nu(hQ^n) - b eps
  ExtValue nu_q;
  ExtValue bound;
  std::size_t delta = 0;
  std::size_t limit = 0;    // n - b / b_M
  bool binom_nonzero = false;
  bool pass = true;
  Json to_json() const;
};

template <CoefficientField K>
DegreeDropCheck degree_drop_check(const Valuation<K>& v, const Polynomial<K>& h, const Polynomial<K>& q, std::size_t n,
                                  std::size_t b);

struct DerivativeDrop {
  std::size_t delta = 0;
  unsigned e = 0;
  std::uint64_t u = 0;
  std::size_t b_max = 0;
  std::size_t b = 0;
  ExtValue nu_q;
  ExtValue epsilon;
  ExtValue nu_after;
  std::size_t delta_after = 0;
  ExtValue expected_nu;
  std::size_t expected_delta = 0;
  Json to_json() const;
};

// delta = delta_Q(f) = p^e u, b = p^e b_M; checks nu_Q(d_b f) = nu_Q(f) - b eps
// and delta_Q(d_b f) = delta - p^e. AssertionFailure if either fails.
template <CoefficientField K>
DerivativeDrop derivative_drop(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q);

struct SameDegreeReport {
  ExtValue nu1, nu2;
  LevelData level1, level2;
  std::vector<ExtValue> deriv1, deriv2;  // nu(d_b Qj), b = 1..deg
  std::vector<Clause> clauses;
  bool pass() const { return all_pass(clauses); }
  Json to_json() const;
};

// Same-degree key polynomials with nu(Q1) <= nu(Q2). With strict = true a
// failed clause throws AssertionFailure.
template <CoefficientField K>
SameDegreeReport compare_same_degree(const Valuation<K>& v, const Polynomial<K>& q1, const Polynomial<K>& q2,
                                     bool strict = true);

struct ExpansionCompareReport {
  ExpansionData e1, e2;          // against Q1 and Q2
  std::vector<ExtValue> cross;   // nu_{Q1}(f_i Q2^i), f_i the Q2-digits
  std::size_t r = 0;
  ExtValue nu_f;
  ExtValue nu1, nu2;
  std::vector<ExtValue> coeff1, coeff2;  // nu of the digits
  std::vector<Clause> clauses;
  bool pass() const { return all_pass(clauses); }
  Json to_json() const;
};

template <CoefficientField K>
ExpansionCompareReport compare_expansions(const Valuation<K>& v, const Polynomial<K>& f, const Polynomial<K>& q1,
                                          const Polynomial<K>& q2, bool strict = true);

Json to_json(const LevelData& l);
Json to_json(const ExpansionData& e);

}  // namespace keypoly
