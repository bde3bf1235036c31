#pragma once

#include <concepts>
#include <ostream>
#include <string>

#include "keypoly/ext_value.hpp"
#include "keypoly/puiseux.hpp"
#include "keypoly/rational_function.hpp"

namespace keypoly {

// A valued coefficient field of characteristic p with val(t) = 1.
template <class K>
concept CoefficientField = std::equality_comparable<K> && requires(const K& a, const K& b, unsigned p, long long n) {
  { K::zero(p) } -> std::same_as<K>;
  { K::one(p) } -> std::same_as<K>;
  { K::from_int(p, n) } -> std::same_as<K>;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.scaled(n) } -> std::same_as<K>;
  { a.inverse() } -> std::same_as<K>;
  { a.val() } -> std::same_as<ExtValue>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_certified_nonzero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.is_exact() } -> std::convertible_to<bool>;
  { a.characteristic() } -> std::convertible_to<unsigned>;
  { a.str() } -> std::convertible_to<std::string>;
};

inline std::ostream& operator<<(std::ostream& os, const PuiseuxSeries& a) { return os << a.str(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunction& a) { return os << a.str(); }

static_assert(CoefficientField<PuiseuxSeries>);
static_assert(CoefficientField<RationalFunction>);

}  // namespace keypoly
