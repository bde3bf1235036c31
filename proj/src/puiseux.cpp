#include "keypoly/puiseux.hpp"

#include <algorithm>

#include "keypoly/errors.hpp"
#include "keypoly/modp.hpp"

namespace keypoly {

void FieldSpec::validate() const {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
}

std::string FieldSpec::str() const {
  return (kind == FieldKind::PuiseuxFp ? "puiseux/F_" : "rational-function/F_") + std::to_string(p);
}

unsigned exponent_level(const Rat& e, unsigned p) {
  mpz_class den = e.get_den();
  unsigned level = 0;
  while (den % p == 0) {
    den /= p;
    ++level;
  }
  if (den != 1)
    throw ExponentError("exponent " + to_string(e) + " has a denominator that is not a power of " +
                        std::to_string(p));
  return level;
}

PuiseuxSeries PuiseuxSeries::zero(unsigned p) { return PuiseuxSeries(p, 0, {}, ExtValue::pos_inf()); }

PuiseuxSeries PuiseuxSeries::from_int(unsigned p, long long c) {
  unsigned r = mod_reduce(c, p);
  if (r == 0) return zero(p);
  return PuiseuxSeries(p, 0, {Term{Rat(0), r}}, ExtValue::pos_inf());
}

PuiseuxSeries PuiseuxSeries::monomial(unsigned p, long long coeff, const Rat& exponent) {
  unsigned level = exponent_level(exponent, p);
  unsigned r = mod_reduce(coeff, p);
  if (r == 0) return PuiseuxSeries(p, level, {}, ExtValue::pos_inf());
  return PuiseuxSeries(p, level, {Term{exponent, r}}, ExtValue::pos_inf());
}

PuiseuxSeries PuiseuxSeries::big_o(unsigned p, const ExtValue& precision) {
  unsigned level = precision.is_finite() ? exponent_level(precision.value(), p) : 0;
  return PuiseuxSeries(p, level, {}, precision);
}

PuiseuxSeries PuiseuxSeries::from_terms(unsigned p, std::vector<Term> terms, const ExtValue& precision) {
  unsigned level = precision.is_finite() ? exponent_level(precision.value(), p) : 0;
  for (auto& t : terms) {
    level = std::max(level, exponent_level(t.exponent, p));
    t.coeff %= p;
  }
  PuiseuxSeries s(p, level, std::move(terms), precision);
  s.normalize();
  return s;
}

void PuiseuxSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return cmp(a.exponent, b.exponent) < 0; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff = (merged.back().coeff + t.coeff) % p_;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [&](const Term& t) { return t.coeff == 0 || ExtValue(t.exponent) >= precision_; });
  terms_ = std::move(merged);
}

bool PuiseuxSeries::is_one() const { return is_monomial() && terms_[0].coeff == 1 && terms_[0].exponent == 0; }

ExtValue PuiseuxSeries::val() const {
  if (has_terms()) return ExtValue(terms_.front().exponent);
  if (is_exact()) return ExtValue::pos_inf();
  throw PrecisionLoss("valuation of O(t^" + precision_.str() + ") is not determined");
}

ExtValue PuiseuxSeries::val_lower_bound() const {
  return has_terms() ? ExtValue(terms_.front().exponent) : precision_;
}

PuiseuxSeries PuiseuxSeries::truncated(const ExtValue& precision) const {
  PuiseuxSeries s = *this;
  if (precision < s.precision_) {
    s.precision_ = precision;
    if (precision.is_finite()) s.level_ = std::max(s.level_, exponent_level(precision.value(), p_));
    std::erase_if(s.terms_, [&](const Term& t) { return ExtValue(t.exponent) >= precision; });
  }
  return s;
}

PuiseuxSeries PuiseuxSeries::exact_part() const { return PuiseuxSeries(p_, level_, terms_, ExtValue::pos_inf()); }

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries s = *this;
  for (auto& t : s.terms_) t.coeff = (p_ - t.coeff) % p_;
  return s;
}

PuiseuxSeries PuiseuxSeries::scaled(long long c) const {
  unsigned r = mod_reduce(c, p_);
  if (r == 0) return PuiseuxSeries(p_, level_, {}, precision_);
  PuiseuxSeries s = *this;
  for (auto& t : s.terms_) t.coeff = static_cast<unsigned>(static_cast<unsigned long long>(t.coeff) * r % p_);
  return s;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.p_ != b.p_) throw InputError("adding series over different characteristics");
  ExtValue precision = std::min(a.precision_, b.precision_);
  std::vector<PuiseuxSeries::Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    int c = i == a.terms_.end() ? 1 : j == b.terms_.end() ? -1 : cmp(i->exponent, j->exponent);
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back(*j++);
    } else {
      unsigned s = (i->coeff + j->coeff) % a.p_;
      if (s) out.push_back({i->exponent, s});
      ++i;
      ++j;
    }
  }
  if (precision.is_finite())
    std::erase_if(out, [&](const PuiseuxSeries::Term& t) { return ExtValue(t.exponent) >= precision; });
  return PuiseuxSeries(a.p_, std::max(a.level_, b.level_), std::move(out), precision);
}

namespace {

using Terms = std::vector<PuiseuxSeries::Term>;

// Merge of two exponent-sorted term lists, adding coefficients mod p.
Terms merge_terms(Terms&& a, Terms&& b, unsigned p) {
  Terms out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    int c = i == a.end() ? 1 : j == b.end() ? -1 : cmp(i->exponent, j->exponent);
    if (c < 0) {
      out.push_back(std::move(*i++));
    } else if (c > 0) {
      out.push_back(std::move(*j++));
    } else {
      unsigned s = (i->coeff + j->coeff) % p;
      if (s) out.push_back({std::move(i->exponent), s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.p_ != b.p_) throw InputError("multiplying series over different characteristics");
  const unsigned p = a.p_;
  unsigned level = std::max(a.level_, b.level_);
  if (a.is_zero() || b.is_zero()) return PuiseuxSeries(p, level, {}, ExtValue::pos_inf());
  // Error terms: (a + O(pa)) (b + O(pb)) = ab + O(pa + val b) + O(pb + val a).
  ExtValue precision = std::min(a.precision_ + b.val_lower_bound(), b.precision_ + a.val_lower_bound());
  const auto& outer = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
  const auto& inner = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
  // Each row s * inner is already sorted; merge the rows pairwise.
  std::vector<Terms> rows;
  rows.reserve(outer.size());
  for (const auto& s : outer) {
    Terms row;
    row.reserve(inner.size());
    for (const auto& t : inner) {
      Rat e = s.exponent + t.exponent;
      if (precision.is_finite() && cmp(e, precision.value()) >= 0) break;
      row.push_back({std::move(e), static_cast<unsigned>(static_cast<unsigned long long>(s.coeff) * t.coeff % p)});
    }
    rows.push_back(std::move(row));
  }
  while (rows.size() > 1) {
    std::size_t half = (rows.size() + 1) / 2;
    for (std::size_t k = 0; k + half < rows.size(); ++k)
      rows[k] = merge_terms(std::move(rows[k]), std::move(rows[k + half]), p);
    rows.resize(half);
  }
  Terms out = rows.empty() ? Terms{} : std::move(rows.front());
  return PuiseuxSeries(p, level, std::move(out), precision);
}

PuiseuxSeries PuiseuxSeries::pow(unsigned n) const {
  PuiseuxSeries result = one(p_);
  PuiseuxSeries base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

PuiseuxSeries PuiseuxSeries::inverse() const {
  if (!has_terms()) throw ZeroDivisor("inverse of a series with no certified term");
  if (!is_monomial())
    throw PrecisionLoss("exact inverse of " + str() + " is an infinite series; request a target precision");
  const Term& t = terms_.front();
  return PuiseuxSeries(p_, level_, {Term{Rat(-t.exponent), mod_inverse(t.coeff, p_)}}, ExtValue::pos_inf());
}

PuiseuxSeries PuiseuxSeries::inverse(const ExtValue& target) const {
  if (!has_terms()) throw ZeroDivisor("inverse of a series with no certified term");
  if (is_monomial()) return inverse();
  // a = lead * (1 + w) with val(w) > 0, so 1/a = lead^-1 * sum (-w)^k.
  const Term& lead = terms_.front();
  PuiseuxSeries lead_inv(p_, level_, {Term{Rat(-lead.exponent), mod_inverse(lead.coeff, p_)}}, ExtValue::pos_inf());
  const ExtValue v(lead.exponent);
  // a * b - 1 = (1 + w) * sum - 1, so sum is needed modulo t^target, and the
  // product inherits the error O(t^(precision - v)) of a.
  if (precision_ - v < target)
    throw PrecisionLoss("input precision " + precision_.str() + " is too low for an inverse to " + target.str());
  PuiseuxSeries w = (*this * lead_inv) - one(p_);
  PuiseuxSeries minus_w = (-w).truncated(target);
  PuiseuxSeries sum = one(p_).truncated(target);
  PuiseuxSeries power = one(p_);
  for (;;) {
    power = (power * minus_w).truncated(target);
    if (!power.has_terms()) break;
    sum = sum + power;
  }
  ExtValue out_precision = std::min(target - v, precision_ - v.scaled(2));
  return (sum * lead_inv).truncated(out_precision);
}

namespace {

std::string exponent_str(const Rat& e) {
  if (e == 1) return "t";
  return "t^(" + to_string(e) + ")";
}

}  // namespace

std::string PuiseuxSeries::str() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent == 0) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += exponent_str(t.exponent);
    } else {
      out += std::to_string(t.coeff) + "*" + exponent_str(t.exponent);
    }
  }
  if (!is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(" + exponent_str(precision_.value()) + ")";
  }
  return out.empty() ? "0" : out;
}

}  // namespace keypoly
