#include "keypoly/series_oracle.hpp"

#include <cstdlib>
#include <string>

#include "keypoly/errors.hpp"
#include "keypoly/modp.hpp"

namespace keypoly {

namespace {

Rat inverse_power(unsigned p, unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), p, k);
  return Rat(mpz_class(1), den);
}

}  // namespace

ArtinSchreierOracle::ArtinSchreierOracle(unsigned p) : p_(p) {
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
}

PuiseuxSeries ArtinSchreierOracle::approximant(unsigned n) const {
  std::vector<PuiseuxSeries::Term> terms;
  terms.reserve(n);
  for (unsigned i = 1; i <= n; ++i) terms.push_back({Rat(-inverse_power(p_, i)), 1});
  return PuiseuxSeries::from_terms(p_, std::move(terms));
}

ExtValue ArtinSchreierOracle::error_order(unsigned n) const { return ExtValue(Rat(-inverse_power(p_, n + 1))); }

std::string ArtinSchreierOracle::describe() const {
  return "sum_{i>=1} t^(-1/" + std::to_string(p_) + "^i)";
}

ExactSeriesOracle::ExactSeriesOracle(PuiseuxSeries theta) : theta_(std::move(theta)) {
  if (!theta_.is_exact()) throw InputError("evaluation point " + theta_.str() + " is not exact");
}

unsigned default_precision_depth() {
  const char* env = std::getenv("KEYPOLY_PRECISION_DEPTH");
  if (env == nullptr || *env == '\0') return 24;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw InputError(std::string("KEYPOLY_PRECISION_DEPTH must be an integer in [1, 4096], got '") + env + "'");
  return static_cast<unsigned>(v);
}

}  // namespace keypoly
