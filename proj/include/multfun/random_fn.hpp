#pragma once

#include "multfun/arith_fn.hpp"

namespace multfun {

// Deterministic pseudo-random functions for identity/axiom checks. Values come
// from hashing the arguments with a fixed seed, so the evaluators stay pure and
// every run is byte-identical.

namespace detail {

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline long hashed_value(u64 h, long lo, long hi) {
  return lo + static_cast<long>(h % static_cast<u64>(hi - lo + 1));
}

}  // namespace detail

// multiplicative, from hashed local values at (p, e); value 1 at e = 0
inline FnR random_multiplicative(int r, u64 seed) {
  return FnR::from_local(
      r,
      [seed](u64 p, const Exps& e) {
        bool unit = true;
        for (auto x : e)
          if (x) unit = false;
        if (unit) return rat(1);
        u64 h = detail::splitmix64(seed ^ (p * 0x100000001b3ull));
        for (auto x : e) h = detail::splitmix64(h ^ x);
        return rat(detail::hashed_value(h, -3, 7));
      },
      FnClass::multiplicative, "rand_mult_" + std::to_string(seed));
}

// one-variable multiplicative (same construction, arity 1)
inline FnR random_multiplicative_1var(u64 seed) { return random_multiplicative(1, seed); }

// general: hashed value per tuple, nonzero at (1,..,1)
inline FnR random_general(int r, u64 seed, long lo = -4, long hi = 9) {
  return FnR(
      r,
      [seed, lo, hi](const Tuple& t) {
        bool unit = true;
        for (auto x : t)
          if (x != 1) unit = false;
        u64 h = seed;
        for (auto x : t) h = detail::splitmix64(h ^ x);
        long v = detail::hashed_value(h, lo, hi);
        if (unit && v == 0) v = 1;
        return rat(v);
      },
      FnClass::general, "rand_gen_" + std::to_string(seed));
}

}  // namespace multfun
