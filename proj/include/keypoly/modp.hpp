#pragma once

#include <cstdint>
#include <span>

namespace keypoly {

bool is_prime(std::uint64_t n);

unsigned mod_reduce(long long v, unsigned p);
unsigned mod_pow(unsigned a, std::uint64_t e, unsigned p);
// Inverse of a nonzero residue modulo the prime p.
unsigned mod_inverse(unsigned a, unsigned p);

// binom(n, k) mod p via Lucas' theorem.
unsigned binom_mod(std::uint64_t n, std::uint64_t k, unsigned p);

// n! / ((n - r)! * counts[0]! * ... ) mod p where r = sum(counts).
// Evaluated as binom(n, r) times a product of binomials, each reduced by Lucas.
unsigned multinomial_mod(std::uint64_t n, std::span<const std::uint64_t> counts, unsigned p);

bool is_power_of(std::uint64_t n, std::uint64_t p);

// n = p^e * u with p not dividing u; n must be positive.
struct PadicSplit {
  unsigned e;
  std::uint64_t u;
  std::uint64_t power;  // p^e
};
PadicSplit padic_split(std::uint64_t n, unsigned p);

}  // namespace keypoly
