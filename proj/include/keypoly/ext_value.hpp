#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace keypoly {

// Exact rational; gmpxx keeps it canonical (lowest terms, positive denominator)
// as long as every constructor goes through make_rat / parse_rat.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::strong_ordering compare(const Rat& a, const Rat& b);

// A point of the value set: a rational, +inf (the value of 0) or -inf (the
// level of a constant polynomial).
class ExtValue {
 public:
  enum class Tag : std::uint8_t { NegInf, Finite, PosInf };

  ExtValue() = default;
  ExtValue(const Rat& value) : tag_(Tag::Finite), value_(value) {}  // NOLINT(google-explicit-constructor)
  ExtValue(long value) : tag_(Tag::Finite), value_(value) {}        // NOLINT(google-explicit-constructor)

  static ExtValue pos_inf() { return ExtValue(Tag::PosInf); }
  static ExtValue neg_inf() { return ExtValue(Tag::NegInf); }
  static ExtValue parse(std::string_view text);

  Tag tag() const noexcept { return tag_; }
  bool is_finite() const noexcept { return tag_ == Tag::Finite; }
  bool is_pos_inf() const noexcept { return tag_ == Tag::PosInf; }
  bool is_neg_inf() const noexcept { return tag_ == Tag::NegInf; }

  // Throws std::logic_error on an infinite value.
  const Rat& value() const;

  std::string str() const;

  ExtValue operator-() const;
  // Multiplication by an integer; 0 * (+-inf) throws UndefinedSum.
  ExtValue scaled(long n) const;
  // Division by a positive integer.
  ExtValue divided(long n) const;

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b);
  friend ExtValue operator-(const ExtValue& a, const ExtValue& b) { return a + (-b); }
  ExtValue& operator+=(const ExtValue& b) { return *this = *this + b; }

  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b);
  friend bool operator==(const ExtValue& a, const ExtValue& b) { return (a <=> b) == 0; }

 private:
  explicit ExtValue(Tag tag) : tag_(tag) {}

  Tag tag_ = Tag::Finite;
  Rat value_{0};
};

struct Comparison {
  std::strong_ordering ordering;
  ExtValue min;
  ExtValue max;
};

Comparison compare(const ExtValue& a, const ExtValue& b);

inline std::ostream& operator<<(std::ostream& os, const ExtValue& v) { return os << v.str(); }

inline ExtValue operator*(long n, const ExtValue& v) { return v.scaled(n); }

}  // namespace keypoly
