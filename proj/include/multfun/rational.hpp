#pragma once

#include <cstdint>
#include <string>
#include <gmpxx.h>

namespace multfun {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline Rat rat(long n) { return Rat(n); }

inline Rat rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_u64(u64 n) {
  Rat q;
  mpz_set_ui(q.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_set_ui(q.get_den_mpz_t(), 1);
  return q;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return rat(1);
  Rat b = base;
  bool neg = e < 0;
  unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), k);
  out.canonicalize();
  if (neg) return 1 / out;
  return out;
}

inline bool is_integer(const Rat& q) { return mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0; }

// canonical text form: plain integer when the denominator is 1, else "num/den"
inline std::string rat_str(const Rat& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Int factorial_int(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Int binomial_int(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace multfun
