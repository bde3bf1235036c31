#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "keypoly/key_engine.hpp"
#include "keypoly/parallel.hpp"

namespace keypoly {

// A family n -> Q_n of monic degree-alpha key polynomials whose values
// increase to B. Cofinality in the set of all such key polynomials is a
// property of the construction and is not checked.
struct KeyFamily {
  unsigned p = 2;
  std::size_t alpha = 1;
  ExtValue B;
  ExtValue eps_B;
  std::size_t b_inf = 1;
  unsigned depth = 2;
  unsigned stable_from = 1;  // I(Q_n) = {b_inf} for n >= stable_from
  std::function<PolyP(unsigned)> generator;
  Valuation<PuiseuxSeries> valuation;
  std::string name;

  PolyP member(unsigned n) const { return generator(n); }
};

struct Scenario {
  KeyFamily family;
  PolyP F;
  PolyP G;  // F + t + t^2, with nu(G) = 1
};

// theta = sum_{i >= 1} t^(-1/p^i), Q_n = x - theta_n, F = x^p - x - t^(-1).
// InputError unless p is prime and depth >= 2. precision_depth = 0 takes
// default_precision_depth().
Scenario artin_schreier_family(unsigned p, unsigned depth, unsigned precision_depth = 0);

enum class Membership { InCertified, InSampled, Out, Undetermined };
std::string to_string(Membership m);

struct MembershipResult {
  Membership status = Membership::Undetermined;
  std::optional<unsigned> witness;     // Out: first n with nu_{Q_n}(f) = nu(f)
  ExtValue nu_f;                       // unset when undetermined
  std::vector<ExtValue> nu_trunc;      // nu_{Q_n}(f), n = 1..checked
  std::optional<ExtValue> sup_bound;   // certified upper bound for sup nu_{Q_n}(f)
  std::optional<unsigned> certified_from;
  std::string reason;
  Json to_json() const;
};

// Membership of f != 0 in S_alpha. Undecided inside nu(f) gives Undetermined.
MembershipResult in_S_alpha(const KeyFamily& family, const PolyP& f, unsigned n_max,
                            Execution mode = Execution::Parallel);

struct LimitReport {
  unsigned n = 0;
  ExtValue nu_member;  // nu(Q_n)
  ExtValue nu_F;
  std::vector<PolyP> digits;
  ExpansionData expansion;
  std::vector<ExtValue> coefficient_values;  // nu(f_i)
  std::size_t delta = 0;
  unsigned r = 0;
  bool leading_one = false;
  ExtValue nu_trunc;
  std::size_t gamma = 0;
  std::set<std::size_t> Lambda;
  std::optional<std::size_t> omega;
  PolyP P_Q{2};
  std::set<std::size_t> support;  // indices of nonzero digits
  bool p_polynomial = false;      // support within {0} and powers of p
  Json to_json() const;
};

// Structure of a limit key polynomial F against Q_n. StructureViolation names
// the failed clause: delta=deg, leading-one, p-power, nu-trunc.
LimitReport limit_structure(const KeyFamily& family, const PolyP& F, unsigned n);

struct RemovalResult {
  PolyP result{2};
  ExtValue bound;
  bool bound_certified = false;
  std::vector<std::pair<std::size_t, std::string>> removed;  // digit index, monomial
  MembershipResult after;
  Json to_json() const;
};

// Drops the monomials of the Q_n-digits f_i (i >= 1) whose value exceeds the
// bound on sup nu_{Q_m}(f). Digit 0 is kept whole. InputError if f is not in
// S_alpha; AssertionFailure if the result leaves S_alpha.
RemovalResult remove_high_monomials(const KeyFamily& family, const PolyP& f, unsigned n, unsigned n_max);

struct BoundReport {
  std::vector<Clause> clauses;
  bool pass() const { return all_pass(clauses); }
  Json to_json() const;
};

// Per-member bounds: nu(d_b Q_n) >= B - b eps_B, I(Q_n) = {b_inf}, sampled
// lower bounds on nu(T_gamma(a Q^k)). AssertionFailure on the first
// violation when strict.
BoundReport bound_checks(const KeyFamily& family, unsigned n_from, unsigned n_to, bool strict = true);

// Checks against F: level gap (eps(F) above every member, lower
// degree samples bounded by some member), interior digits of re-expanded
// p-power terms, and stable Lambda-coefficient values.
BoundReport structure_checks(const KeyFamily& family, const PolyP& F, unsigned n_from, unsigned n_to,
                             unsigned samples = 16, std::uint64_t seed = 1, bool strict = true);

struct ScenarioOptions {
  unsigned p = 2;
  unsigned depth = 8;
  unsigned n_max = 12;
  unsigned precision_depth = 0;
  Execution mode = Execution::Parallel;
};

// Full scenario report as JSON; see the README for the schema.
Json scenario_report(const ScenarioOptions& options);

}  // namespace keypoly
