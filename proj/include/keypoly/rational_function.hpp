#pragma once

#include <string>
#include <vector>

#include "keypoly/ext_value.hpp"

namespace keypoly {

// Dense polynomial in t over F_p, lowest degree first, no trailing zeros.
using FpPoly = std::vector<unsigned>;

// Exact element of F_p(t) with the t-adic valuation. Stored as num/den with
// gcd 1 and den monic.
class RationalFunction {
 public:
  static RationalFunction zero(unsigned p);
  static RationalFunction one(unsigned p) { return from_int(p, 1); }
  static RationalFunction from_int(unsigned p, long long c);
  // c * t^e for any integer e.
  static RationalFunction monomial(unsigned p, long long coeff, long e);
  static RationalFunction fraction(unsigned p, FpPoly num, FpPoly den);

  unsigned characteristic() const noexcept { return p_; }
  const FpPoly& numerator() const noexcept { return num_; }
  const FpPoly& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.empty(); }
  bool is_certified_nonzero() const noexcept { return !num_.empty(); }
  bool is_one() const noexcept { return num_ == den_; }
  bool is_exact() const noexcept { return true; }

  ExtValue val() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction scaled(long long c) const;
  RationalFunction pow(unsigned n) const;
  RationalFunction inverse() const;

  std::string str() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.p_ == b.p_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  RationalFunction(unsigned p, FpPoly num, FpPoly den) : p_(p), num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  unsigned p_;
  FpPoly num_;
  FpPoly den_;
};

}  // namespace keypoly
