#include "keypoly/random.hpp"

namespace keypoly {

Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

PuiseuxSeries random_series(Rng& rng, unsigned p, const RandomShape& shape) {
  auto n = uniform(rng, 1, shape.max_terms);
  PuiseuxSeries s = PuiseuxSeries::zero(p);
  for (long k = 0; k < n; ++k) {
    long level = uniform(rng, 0, shape.max_level);
    long den = 1;
    for (long i = 0; i < level; ++i) den *= p;
    long num = uniform(rng, -shape.exponent_span * den, shape.exponent_span * den);
    s += PuiseuxSeries::monomial(p, uniform(rng, 1, p - 1), make_rat(num, den));
  }
  if (s.is_zero()) s = PuiseuxSeries::one(p);
  return s;
}

RationalFunction random_rational(Rng& rng, unsigned p, const RandomShape& shape) {
  auto n = uniform(rng, 1, shape.max_terms);
  RationalFunction s = RationalFunction::zero(p);
  for (long k = 0; k < n; ++k)
    s += RationalFunction::monomial(p, uniform(rng, 1, p - 1), uniform(rng, -shape.exponent_span, shape.exponent_span));
  // Occasionally a genuine fraction, which has no finite Laurent expansion.
  if (uniform(rng, 0, 3) == 0) s = s * RationalFunction::fraction(p, {1}, {1, 1});
  if (s.is_zero()) s = RationalFunction::one(p);
  return s;
}

}  // namespace

template <>
PuiseuxSeries random_coefficient<PuiseuxSeries>(Rng& rng, unsigned p, const RandomShape& shape) {
  return random_series(rng, p, shape);
}

template <>
RationalFunction random_coefficient<RationalFunction>(Rng& rng, unsigned p, const RandomShape& shape) {
  return random_rational(rng, p, shape);
}

template <CoefficientField K>
Polynomial<K> random_polynomial(Rng& rng, unsigned p, std::size_t max_degree, const RandomShape& shape) {
  auto d = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_degree)));
  std::vector<K> c;
  c.reserve(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    c.push_back(i == d || uniform(rng, 0, 2) != 0 ? random_coefficient<K>(rng, p, shape) : K::zero(p));
  return Polynomial<K>(p, std::move(c));
}

template <CoefficientField K>
Polynomial<K> random_monic(Rng& rng, unsigned p, std::size_t degree, const RandomShape& shape) {
  std::vector<K> c;
  c.reserve(degree + 1);
  for (std::size_t i = 0; i < degree; ++i)
    c.push_back(uniform(rng, 0, 2) != 0 ? random_coefficient<K>(rng, p, shape) : K::zero(p));
  c.push_back(K::one(p));
  return Polynomial<K>(p, std::move(c));
}

template PolyP random_polynomial<PuiseuxSeries>(Rng&, unsigned, std::size_t, const RandomShape&);
template PolyR random_polynomial<RationalFunction>(Rng&, unsigned, std::size_t, const RandomShape&);
template PolyP random_monic<PuiseuxSeries>(Rng&, unsigned, std::size_t, const RandomShape&);
template PolyR random_monic<RationalFunction>(Rng&, unsigned, std::size_t, const RandomShape&);

}  // namespace keypoly
