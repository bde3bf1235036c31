#pragma once

#include <cstdint>
#include <random>

#include "keypoly/polynomial.hpp"

namespace keypoly {

using Rng = std::mt19937_64;

// Independent stream for (seed, a, b): the same triple always gives the same
// sequence, whatever order streams are created in.
Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct RandomShape {
  unsigned max_terms = 2;     // terms per coefficient
  unsigned max_level = 1;     // exponents in (1/p^max_level) Z
  long exponent_span = 2;     // |exponent| <= span
};

template <CoefficientField K>
K random_coefficient(Rng& rng, unsigned p, const RandomShape& shape = {});

// Uniform degree in [0, max_degree]; nonzero leading coefficient.
template <CoefficientField K>
Polynomial<K> random_polynomial(Rng& rng, unsigned p, std::size_t max_degree, const RandomShape& shape = {});

template <CoefficientField K>
Polynomial<K> random_monic(Rng& rng, unsigned p, std::size_t degree, const RandomShape& shape = {});

}  // namespace keypoly
