#include "keypoly/ext_value.hpp"

#include <cctype>
#include <stdexcept>

#include "keypoly/errors.hpp"

namespace keypoly {

Rat make_rat(long num, long den) {
  if (den == 0) throw ZeroDivisor("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d{std::string(den)};
  if (d == 0) throw ZeroDivisor("rational with zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::strong_ordering compare(const Rat& a, const Rat& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtValue ExtValue::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  return ExtValue(parse_rat(text));
}

const Rat& ExtValue::value() const {
  if (!is_finite()) throw std::logic_error("value() of infinite ExtValue " + str());
  return value_;
}

std::string ExtValue::str() const {
  switch (tag_) {
    case Tag::PosInf:
      return "inf";
    case Tag::NegInf:
      return "-inf";
    case Tag::Finite:
      break;
  }
  return to_string(value_);
}

ExtValue ExtValue::operator-() const {
  switch (tag_) {
    case Tag::PosInf:
      return neg_inf();
    case Tag::NegInf:
      return pos_inf();
    case Tag::Finite:
      break;
  }
  return ExtValue(Rat(-value_));
}

ExtValue ExtValue::scaled(long n) const {
  if (is_finite()) return ExtValue(Rat(value_ * n));
  if (n == 0) throw UndefinedSum("0 * " + str());
  return n > 0 ? *this : -*this;
}

ExtValue ExtValue::divided(long n) const {
  if (n <= 0) throw std::invalid_argument("ExtValue::divided expects a positive divisor");
  if (!is_finite()) return *this;
  Rat q = value_ / n;
  q.canonicalize();
  return ExtValue(q);
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    throw UndefinedSum("inf + (-inf) is undefined");
  if (!a.is_finite()) return a;
  if (!b.is_finite()) return b;
  return ExtValue(Rat(a.value_ + b.value_));
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  if (a.tag_ != b.tag_) return a.tag_ <=> b.tag_;
  if (!a.is_finite()) return std::strong_ordering::equal;
  return compare(a.value_, b.value_);
}

Comparison compare(const ExtValue& a, const ExtValue& b) {
  auto ord = a <=> b;
  return ord <= 0 ? Comparison{ord, a, b} : Comparison{ord, b, a};
}

}  // namespace keypoly
