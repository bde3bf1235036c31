#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "keypoly/errors.hpp"
#include "keypoly/field.hpp"
#include "keypoly/modp.hpp"

namespace keypoly {

// Element of K[x]. Coefficients are stored lowest degree first; trailing
// certified zeros are trimmed, so the zero polynomial has no coefficients.
template <CoefficientField K>
class Polynomial {
 public:
  using Coefficient = K;

  explicit Polynomial(unsigned p) : p_(p) {}
  Polynomial(unsigned p, std::vector<K> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const K& c) { return Polynomial(c.characteristic(), {c}); }
  static Polynomial x(unsigned p) { return monomial(K::one(p), 1); }
  static Polynomial monomial(const K& c, std::size_t degree) {
    std::vector<K> v(degree + 1, K::zero(c.characteristic()));
    v[degree] = c;
    return Polynomial(c.characteristic(), std::move(v));
  }

  unsigned characteristic() const noexcept { return p_; }
  bool is_zero() const noexcept { return c_.empty(); }

  // Empty for the zero polynomial; PrecisionLoss if the top coefficient is
  // not certified nonzero.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    if (!c_.back().is_certified_nonzero())
      throw PrecisionLoss("leading coefficient " + c_.back().str() + " is not certified nonzero");
    return c_.size() - 1;
  }
  // Degree of a nonzero polynomial.
  std::size_t deg() const {
    auto d = degree();
    if (!d) throw std::domain_error("degree of the zero polynomial");
    return *d;
  }

  const std::vector<K>& coefficients() const noexcept { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K::zero(p_); }
  K leading() const { return c_.empty() ? K::zero(p_) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_exact() const {
    for (const auto& c : c_)
      if (!c.is_exact()) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const Polynomial& big = a.c_.size() >= b.c_.size() ? a : b;
    const Polynomial& small = a.c_.size() >= b.c_.size() ? b : a;
    Polynomial r = big;
    for (std::size_t i = 0; i < small.c_.size(); ++i) r.c_[i] = r.c_[i] + small.c_[i];
    r.trim();
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.p_);
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, K::zero(a.p_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Polynomial(a.p_, std::move(out));
  }
  friend Polynomial operator*(const K& s, const Polynomial& f) {
    Polynomial r = f;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial pow(unsigned n) const {
    Polynomial result = constant(K::one(p_));
    Polynomial base = *this;
    while (n) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  // Multiplication by x^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<K> v(k, K::zero(p_));
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(p_, std::move(v));
  }

  K evaluate(const K& at) const {
    K acc = K::zero(p_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  std::string str() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  unsigned p_;
  std::vector<K> c_;
};

template <CoefficientField K>
std::string Polynomial<K>::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const K& c = c_[i];
    if (c.is_zero()) continue;
    std::string term;
    std::string xs = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    std::string cs = c.str();
    if (i == 0) {
      term = cs;
    } else if (c.is_one()) {
      term = xs;
    } else if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos) {
      term = "(" + cs + ")*" + xs;
    } else {
      term = cs + "*" + xs;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

// Hasse derivative: d_b(x^n) = binom(n, b) x^(n-b), binomials reduced mod p.
template <CoefficientField K>
Polynomial<K> hasse_derivative(const Polynomial<K>& f, std::size_t b) {
  const unsigned p = f.characteristic();
  if (b == 0) return f;
  const auto& c = f.coefficients();
  if (c.size() <= b) return Polynomial<K>(p);
  std::vector<K> out;
  out.reserve(c.size() - b);
  for (std::size_t n = b; n < c.size(); ++n) {
    unsigned m = binom_mod(n, b, p);
    out.push_back(m == 0 ? K::zero(p) : c[n].scaled(m));
  }
  return Polynomial<K>(p, std::move(out));
}

template <CoefficientField K>
struct DivisionResult {
  Polynomial<K> quotient;
  Polynomial<K> remainder;
};

// f = q g + r with r = 0 or deg r < deg g.
template <CoefficientField K>
DivisionResult<K> euclid_divide(const Polynomial<K>& f, const Polynomial<K>& g) {
  const unsigned p = f.characteristic();
  if (g.is_zero()) throw ZeroDivisor("polynomial division by zero");
  const std::size_t dg = g.deg();
  const K lead = g.leading();
  const bool monic = lead.is_one();
  const K lead_inv = monic ? lead : lead.inverse();
  std::vector<K> r = f.coefficients();
  std::vector<K> q(r.size() >= dg + 1 ? r.size() - dg : 0, K::zero(p));
  const auto& gc = g.coefficients();
  for (std::size_t top = r.size(); top-- > dg;) {
    if (r[top].is_zero()) continue;
    if (!r[top].is_certified_nonzero())
      throw PrecisionLoss("division step on an uncertified coefficient " + r[top].str());
    K c = monic ? r[top] : r[top] * lead_inv;
    std::size_t shift = top - dg;
    q[shift] = c;
    for (std::size_t i = 0; i < dg; ++i)
      if (!gc[i].is_zero()) r[shift + i] -= c * gc[i];
    r[top] = K::zero(p);
  }
  if (r.size() > dg) r.erase(r.begin() + static_cast<std::ptrdiff_t>(dg), r.end());
  return {Polynomial<K>(p, std::move(q)), Polynomial<K>(p, std::move(r))};
}

// Radix-q representation f = sum digits[i] q^i.
template <CoefficientField K>
struct QExpansion {
  Polynomial<K> q;
  std::vector<Polynomial<K>> digits;

  // deg_q(f); the zero polynomial has no digits.
  std::size_t deg_q() const { return digits.empty() ? 0 : digits.size() - 1; }
  Polynomial<K> reconstruct() const {
    Polynomial<K> acc(q.characteristic());
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = acc * q + *it;
    return acc;
  }
};

template <CoefficientField K>
QExpansion<K> q_expand(const Polynomial<K>& f, const Polynomial<K>& q) {
  if (q.is_zero() || q.deg() < 1 || !q.is_monic())
    throw InputError("q-expansion requires a monic q of degree >= 1, got " + q.str());
  QExpansion<K> e{q, {}};
  Polynomial<K> rest = f;
  while (!rest.is_zero()) {
    auto [quo, rem] = euclid_divide(rest, q);
    e.digits.push_back(std::move(rem));
    rest = std::move(quo);
  }
  return e;
}

template <CoefficientField K>
struct BezoutResult {
  Polynomial<K> inverse;
  Polynomial<K> witness;
};

// inv * a = 1 + witness * q with deg inv < deg q. q is caller-asserted
// irreducible; a common factor of positive degree throws NotCoprime.
template <CoefficientField K>
BezoutResult<K> bezout_inverse(const Polynomial<K>& a, const Polynomial<K>& q) {
  const unsigned p = a.characteristic();
  if (a.is_zero()) throw ZeroDivisor("bezout_inverse of zero");
  if (q.is_zero() || q.deg() < 1) throw InputError("bezout_inverse needs deg q >= 1");
  // Invariant: s_i * a + t_i * q = r_i.
  Polynomial<K> r0 = q, r1 = euclid_divide(a, q).remainder;
  Polynomial<K> s0(p), s1 = Polynomial<K>::constant(K::one(p));
  Polynomial<K> t0 = Polynomial<K>::constant(K::one(p)), t1 = -euclid_divide(a, q).quotient;
  if (r1.is_zero()) throw NotCoprime(a.str() + " is divisible by " + q.str());
  while (r1.deg() > 0) {
    auto [quo, rem] = euclid_divide(r0, r1);
    if (rem.is_zero()) throw NotCoprime("gcd(" + a.str() + ", " + q.str() + ") = " + r1.str());
    Polynomial<K> s2 = s0 - quo * s1;
    Polynomial<K> t2 = t0 - quo * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const K c_inv = r1.leading().inverse();
  Polynomial<K> inv = c_inv * s1;
  Polynomial<K> witness = -(c_inv * t1);
  // Keep deg inv < deg q; the shift moves into the witness.
  auto [shift, reduced] = euclid_divide(inv, q);
  if (!shift.is_zero()) {
    inv = std::move(reduced);
    witness = witness - shift * a;
  }
  return {std::move(inv), std::move(witness)};
}

template <CoefficientField K>
std::ostream& operator<<(std::ostream& os, const Polynomial<K>& f) {
  return os << f.str();
}

using PolyP = Polynomial<PuiseuxSeries>;
using PolyR = Polynomial<RationalFunction>;

extern template class Polynomial<PuiseuxSeries>;
extern template class Polynomial<RationalFunction>;

}  // namespace keypoly
