#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "multfun/rational.hpp"

namespace multfun {

struct PrimePower {
  u64 p;
  std::uint32_t e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n as its sorted (p, e) list; empty exactly for n = 1
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  std::uint32_t exponent_of(u64 p) const {
    for (const auto& f : factors)
      if (f.p == p) return f.e;
    return 0;
  }
  std::uint32_t omega() const { return static_cast<std::uint32_t>(factors.size()); }
  std::uint32_t big_omega() const {
    std::uint32_t s = 0;
    for (const auto& f : factors) s += f.e;
    return s;
  }
};

Factorization factorize(u64 n);  // rejects n = 0
bool is_prime(u64 n);

// ascending; memoized internally (append-only, thread safe)
const std::vector<u64>& divisors(u64 n);
std::vector<u64> unitary_divisors(u64 n);

u64 gcd_list(std::span<const u64> xs);
u64 lcm_list(std::span<const u64> xs);
u64 lcm2(u64 a, u64 b);

// greatest common unitary divisor, by definitional scan of common unitary divisors
u64 gcud_list(std::span<const u64> xs);
u64 gcud2(u64 a, u64 b);

std::vector<u64> primes_up_to(u64 limit);

// smallest-prime-factor sieve (spf[0] = spf[1] = 0)
std::vector<std::uint32_t> spf_sieve(std::uint32_t limit);
std::vector<i64> phi_sieve(std::uint32_t limit);
std::vector<i64> mu_sieve(std::uint32_t limit);

u64 ipow(u64 base, std::uint32_t e);
u64 binom_u64(u64 n, u64 k);  // small arguments only

}  // namespace multfun
