#include "keypoly/rational_function.hpp"

#include <algorithm>

#include "keypoly/errors.hpp"
#include "keypoly/modp.hpp"

namespace keypoly {

namespace {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly add(const FpPoly& a, const FpPoly& b, unsigned p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned long long> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + 1ULL * a[i] * b[j]) % p;
  FpPoly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, unsigned c, unsigned p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned>(1ULL * a[i] * c % p);
  trim(r);
  return r;
}

// a = q * b + r; b nonzero.
void divmod(const FpPoly& a, const FpPoly& b, unsigned p, FpPoly& q, FpPoly& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  unsigned lead_inv = mod_inverse(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    unsigned c = static_cast<unsigned>(1ULL * r.back() * lead_inv % p);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = (r[shift + i] + p - static_cast<unsigned>(1ULL * c * b[i] % p)) % p;
    trim(r);
  }
  trim(q);
}

FpPoly gcd(FpPoly a, FpPoly b, unsigned p) {
  while (!b.empty()) {
    FpPoly q, r;
    divmod(a, b, p, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::size_t order(const FpPoly& a) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  return i;
}

}  // namespace

RationalFunction RationalFunction::zero(unsigned p) { return RationalFunction(p, {}, {1}); }

RationalFunction RationalFunction::from_int(unsigned p, long long c) {
  unsigned r = mod_reduce(c, p);
  return r ? RationalFunction(p, {r}, {1}) : zero(p);
}

RationalFunction RationalFunction::monomial(unsigned p, long long coeff, long e) {
  unsigned c = mod_reduce(coeff, p);
  if (c == 0) return zero(p);
  FpPoly shifted(static_cast<std::size_t>(e < 0 ? -e : e) + 1, 0);
  shifted.back() = e < 0 ? 1 : c;
  if (e < 0) return RationalFunction::fraction(p, {c}, std::move(shifted));
  return RationalFunction(p, std::move(shifted), {1});
}

RationalFunction RationalFunction::fraction(unsigned p, FpPoly num, FpPoly den) {
  for (auto& c : num) c %= p;
  for (auto& c : den) c %= p;
  trim(num);
  trim(den);
  if (den.empty()) throw ZeroDivisor("rational function with zero denominator");
  RationalFunction r(p, std::move(num), std::move(den));
  r.normalize();
  return r;
}

void RationalFunction::normalize() {
  if (num_.empty()) {
    den_ = {1};
    return;
  }
  FpPoly g = gcd(num_, den_, p_);
  if (g.size() > 1) {
    FpPoly q, r;
    divmod(num_, g, p_, q, r);
    num_ = std::move(q);
    divmod(den_, g, p_, q, r);
    den_ = std::move(q);
  }
  unsigned inv = mod_inverse(den_.back(), p_);
  num_ = scale(num_, inv, p_);
  den_ = scale(den_, inv, p_);
}

ExtValue RationalFunction::val() const {
  if (is_zero()) return ExtValue::pos_inf();
  return ExtValue(static_cast<long>(order(num_)) - static_cast<long>(order(den_)));
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(p_, scale(num_, p_ - 1, p_), den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.p_ != b.p_) throw InputError("adding rational functions over different characteristics");
  if (a.den_ == b.den_) {
    RationalFunction r(a.p_, add(a.num_, b.num_, a.p_), a.den_);
    r.normalize();
    return r;
  }
  RationalFunction r(a.p_, add(mul(a.num_, b.den_, a.p_), mul(b.num_, a.den_, a.p_), a.p_), mul(a.den_, b.den_, a.p_));
  r.normalize();
  return r;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.p_ != b.p_) throw InputError("multiplying rational functions over different characteristics");
  RationalFunction r(a.p_, mul(a.num_, b.num_, a.p_), mul(a.den_, b.den_, a.p_));
  r.normalize();
  return r;
}

RationalFunction RationalFunction::scaled(long long c) const {
  return RationalFunction(p_, scale(num_, mod_reduce(c, p_), p_), num_.empty() ? FpPoly{1} : den_);
}

RationalFunction RationalFunction::pow(unsigned n) const {
  RationalFunction result = one(p_);
  RationalFunction base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ZeroDivisor("inverse of zero rational function");
  RationalFunction r(p_, den_, num_);
  r.normalize();
  return r;
}

namespace {

std::string laurent_str(const FpPoly& a, long shift) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    long e = static_cast<long>(i) - shift;
    if (!out.empty()) out += " + ";
    std::string mono = e == 1 ? "t" : "t^(" + std::to_string(e) + ")";
    if (e == 0)
      out += std::to_string(a[i]);
    else if (a[i] == 1)
      out += mono;
    else
      out += std::to_string(a[i]) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string RationalFunction::str() const {
  // Laurent polynomials (denominator a power of t) print in the series grammar.
  std::size_t k = den_.size() - 1;
  if (order(den_) == k) return laurent_str(num_, static_cast<long>(k));
  return "(" + laurent_str(num_, 0) + ")/(" + laurent_str(den_, 0) + ")";
}

}  // namespace keypoly
