#pragma once

#include <string>
#include <vector>

#include "keypoly/ext_value.hpp"

namespace keypoly {

enum class FieldKind { PuiseuxFp, RationalFunctionFp };

struct FieldSpec {
  unsigned p = 2;
  FieldKind kind = FieldKind::PuiseuxFp;

  // Throws InputError unless p is prime.
  void validate() const;
  std::string str() const;
};

// Element of the bounded-level Puiseux field over F_p: a finite sum of terms
// c * t^e with every e in (1/p^level) Z, known modulo terms of exponent
// >= precision(). precision() == +inf means the element is exact.
class PuiseuxSeries {
 public:
  struct Term {
    Rat exponent;
    unsigned coeff;  // in 1..p-1
    friend bool operator==(const Term&, const Term&) = default;
  };

  static PuiseuxSeries zero(unsigned p);
  static PuiseuxSeries one(unsigned p) { return from_int(p, 1); }
  static PuiseuxSeries from_int(unsigned p, long long c);
  // Throws ExponentError if the exponent denominator is not a power of p.
  static PuiseuxSeries monomial(unsigned p, long long coeff, const Rat& exponent);
  // The unknown element O(t^precision).
  static PuiseuxSeries big_o(unsigned p, const ExtValue& precision);
  static PuiseuxSeries from_terms(unsigned p, std::vector<Term> terms,
                                  const ExtValue& precision = ExtValue::pos_inf());

  unsigned characteristic() const noexcept { return p_; }
  unsigned level() const noexcept { return level_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const ExtValue& precision() const noexcept { return precision_; }

  bool is_exact() const noexcept { return precision_.is_pos_inf(); }
  bool has_terms() const noexcept { return !terms_.empty(); }
  // Certified zero: no terms and exact.
  bool is_zero() const noexcept { return terms_.empty() && is_exact(); }
  bool is_certified_nonzero() const noexcept { return has_terms(); }
  bool is_one() const;
  bool is_monomial() const noexcept { return terms_.size() == 1 && is_exact(); }

  // Least exponent; +inf for exact zero; PrecisionLoss if nothing is known
  // below a finite precision.
  ExtValue val() const;
  // A value that val() is certainly >= to (never throws).
  ExtValue val_lower_bound() const;

  PuiseuxSeries truncated(const ExtValue& precision) const;
  PuiseuxSeries exact_part() const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  PuiseuxSeries& operator+=(const PuiseuxSeries& b) { return *this = *this + b; }
  PuiseuxSeries& operator-=(const PuiseuxSeries& b) { return *this = *this - b; }
  PuiseuxSeries& operator*=(const PuiseuxSeries& b) { return *this = *this * b; }
  PuiseuxSeries scaled(long long c) const;
  PuiseuxSeries pow(unsigned n) const;

  // Exact inverse; only single-term series have one in this field, anything
  // else throws PrecisionLoss (ZeroDivisor when nothing is certified).
  PuiseuxSeries inverse() const;
  // b with val(a * b - 1) >= target. Monomials are inverted exactly.
  PuiseuxSeries inverse(const ExtValue& target) const;

  std::string str() const;

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_ && a.precision_ == b.precision_;
  }

 private:
  PuiseuxSeries(unsigned p, unsigned level, std::vector<Term> terms, ExtValue precision)
      : p_(p), level_(level), terms_(std::move(terms)), precision_(std::move(precision)) {}

  // Sorts, merges equal exponents, drops zero coefficients and terms at or
  // beyond the precision.
  void normalize();

  unsigned p_;
  unsigned level_;
  std::vector<Term> terms_;
  ExtValue precision_;
};

// Smallest m with den(e) | p^m; ExponentError when den(e) is not a power of p.
unsigned exponent_level(const Rat& e, unsigned p);

}  // namespace keypoly
