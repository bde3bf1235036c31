#include "keypoly/modp.hpp"

#include <stdexcept>

namespace keypoly {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned mod_reduce(long long v, unsigned p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

unsigned mod_pow(unsigned a, std::uint64_t e, unsigned p) {
  std::uint64_t base = a % p;
  std::uint64_t result = 1 % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<unsigned>(result);
}

unsigned mod_inverse(unsigned a, unsigned p) {
  if (a % p == 0) throw std::domain_error("mod_inverse of zero residue");
  return mod_pow(a, p - 2, p);
}

namespace {

// binom(n, k) for 0 <= k <= n < p.
unsigned small_binom(unsigned n, unsigned k, unsigned p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return static_cast<unsigned>(num * mod_inverse(static_cast<unsigned>(den), p) % p);
}

}  // namespace

unsigned binom_mod(std::uint64_t n, std::uint64_t k, unsigned p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n || k) {
    unsigned nd = static_cast<unsigned>(n % p);
    unsigned kd = static_cast<unsigned>(k % p);
    if (kd > nd) return 0;
    result = result * small_binom(nd, kd, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<unsigned>(result);
}

unsigned multinomial_mod(std::uint64_t n, std::span<const std::uint64_t> counts, unsigned p) {
  std::uint64_t r = 0;
  for (auto c : counts) r += c;
  if (r > n) throw std::invalid_argument("multinomial_mod: parts exceed n");
  std::uint64_t result = binom_mod(n, r, p);
  std::uint64_t acc = 0;
  for (auto c : counts) {
    acc += c;
    result = result * binom_mod(acc, c, p) % p;
  }
  return static_cast<unsigned>(result);
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

PadicSplit padic_split(std::uint64_t n, unsigned p) {
  if (n == 0) throw std::invalid_argument("padic_split of zero");
  PadicSplit s{0, n, 1};
  while (s.u % p == 0) {
    s.u /= p;
    s.power *= p;
    ++s.e;
  }
  return s;
}

}  // namespace keypoly
