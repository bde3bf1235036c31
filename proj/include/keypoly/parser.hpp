#pragma once

#include <string_view>

#include "keypoly/polynomial.hpp"

namespace keypoly {

// Parses a polynomial literal in x over K.
//
//   expr    := ["-"] term (("+" | "-") term)*
//   term    := power (["*" | "/"] power)*      juxtaposition multiplies
//   power   := atom ["^" exponent]
//   atom    := INT | "t" | "x" | "(" expr ")" | "O(" t-power ")"
//
// t takes a rational exponent, written t^(a/b), t^n or t^-n; x and
// parenthesised expressions take non-negative integer exponents. Division is
// only by exact invertible constants. Integers are reduced mod p.
template <CoefficientField K>
Polynomial<K> parse_polynomial(std::string_view text, unsigned p);

// Same grammar; the result must have degree <= 0 in x.
template <CoefficientField K>
K parse_coefficient(std::string_view text, unsigned p);

inline PolyP parse_puiseux_poly(std::string_view text, unsigned p) { return parse_polynomial<PuiseuxSeries>(text, p); }

}  // namespace keypoly
