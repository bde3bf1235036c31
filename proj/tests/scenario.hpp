#pragma once

#include <memory>
#include <string>

#include "keypoly/parser.hpp"
#include "keypoly/series_oracle.hpp"
#include "keypoly/valuation.hpp"

namespace testing_support {

using namespace keypoly;

inline PolyP P(const std::string& text, unsigned p) { return parse_polynomial<PuiseuxSeries>(text, p); }
inline Rat R(long a, long b) { return make_rat(a, b); }

inline PolyP F_of(unsigned p) { return P("x^" + std::to_string(p) + " - x - t^(-1)", p); }

inline Valuation<PuiseuxSeries> scenario(unsigned p, unsigned depth = 24) {
  return Valuation<PuiseuxSeries>::evaluation(std::make_shared<ArtinSchreierOracle>(p), F_of(p), depth);
}

inline PolyP Qn(unsigned p, unsigned n) {
  ArtinSchreierOracle o(p);
  return PolyP::x(p) - PolyP::constant(o.approximant(n));
}

}  // namespace testing_support
