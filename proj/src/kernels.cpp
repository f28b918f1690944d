#include "multfun/kernels.hpp"

#include <bit>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multfun::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

BitMatrix::BitMatrix(u64 n) : n_(n), row_words_((n + 63) / 64), words_(n * row_words_, 0) {}

bool BitMatrix::get(u64 i, u64 j) const {
  return words_[(i - 1) * row_words_ + (j - 1) / 64] >> ((j - 1) % 64) & 1;
}

void BitMatrix::set(u64 i, u64 j, bool v) {
  u64& w = words_[(i - 1) * row_words_ + (j - 1) / 64];
  u64 bit = u64(1) << ((j - 1) % 64);
  if (v)
    w |= bit;
  else
    w &= ~bit;
}

BitMatrix build_pair_matrix_serial(u64 n, const std::function<bool(u64, u64)>& pred) {
  BitMatrix m(n);
  for (u64 i = 1; i <= n; ++i)
    for (u64 j = i; j <= n; ++j) {
      bool v = pred(i, j);
      m.set(i, j, v);
      m.set(j, i, v);
    }
  return m;
}

BitMatrix build_pair_matrix_parallel(u64 n, const std::function<bool(u64, u64)>& pred) {
  BitMatrix m(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (i64 i = 1; i <= static_cast<i64>(n); ++i)
    for (u64 j = static_cast<u64>(i); j <= n; ++j)
      if (pred(static_cast<u64>(i), j)) m.set(static_cast<u64>(i), j, true);
  // mirror below the diagonal afterwards; rows above are write-disjoint
  for (u64 i = 1; i <= n; ++i)
    for (u64 j = 1; j < i; ++j)
      if (m.get(j, i)) m.set(i, j, true);
  return m;
}

namespace {

u64 row_and_popcount(const u64* a, const u64* b, size_t words) {
  u64 c = 0;
  for (size_t w = 0; w < words; ++w) c += static_cast<u64>(std::popcount(a[w] & b[w]));
  return c;
}

u64 count_tuples_row_range(const BitMatrix& m, int r, u64 lo, u64 hi) {
  const u64 n = m.size();
  const size_t words = m.row_words();
  u64 total = 0;
  std::vector<u64> buf(words);
  for (u64 a = lo; a <= hi; ++a) {
    if (r == 2) {
      total += row_and_popcount(m.row(a), m.row(a), words);
      continue;
    }
    for (u64 b = 1; b <= n; ++b) {
      if (!m.get(a, b)) continue;
      if (r == 3) {
        total += row_and_popcount(m.row(a), m.row(b), words);
      } else {
        for (size_t w = 0; w < words; ++w) buf[w] = m.row(a)[w] & m.row(b)[w];
        // c, d both from buf with (c, d) allowed
        for (size_t w = 0; w < words; ++w) {
          u64 bits = buf[w];
          while (bits) {
            u64 c = w * 64 + static_cast<u64>(std::countr_zero(bits)) + 1;
            bits &= bits - 1;
            total += row_and_popcount(buf.data(), m.row(c), words);
          }
        }
      }
    }
  }
  return total;
}

}  // namespace

u64 count_tuples_serial(const BitMatrix& m, int r) {
  return count_tuples_row_range(m, r, 1, m.size());
}

u64 count_tuples_parallel(const BitMatrix& m, int r) {
  const i64 n = static_cast<i64>(m.size());
  u64 total = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
  for (i64 a = 1; a <= n; ++a)
    total += count_tuples_row_range(m, r, static_cast<u64>(a), static_cast<u64>(a));
  return total;
}

namespace {

u64 count_gcd_rows(u64 box, int r, const std::vector<std::uint8_t>& pred, u64 lo, u64 hi) {
  u64 total = 0;
  if (r == 2) {
    for (u64 a = lo; a <= hi; ++a)
      for (u64 b = 1; b <= box; ++b)
        if (pred[std::gcd(a, b)]) ++total;
    return total;
  }
  if (r == 3) {
    for (u64 a = lo; a <= hi; ++a)
      for (u64 b = 1; b <= box; ++b) {
        u64 g = std::gcd(a, b);
        if (g == 1) {
          // gcd stays 1 for every c
          if (pred[1]) total += box;
          continue;
        }
        for (u64 c = 1; c <= box; ++c)
          if (pred[std::gcd(g, c)]) ++total;
      }
    return total;
  }
  // generic odometer fallback
  std::vector<u64> t(static_cast<size_t>(r), 1);
  auto in_range = [&](void) { return t[0] >= lo && t[0] <= hi; };
  while (true) {
    if (in_range()) {
      u64 g = 0;
      for (u64 x : t) g = std::gcd(g, x);
      if (pred[g]) ++total;
    }
    int i = r - 1;
    while (i >= 0 && t[static_cast<size_t>(i)] == box) t[static_cast<size_t>(i--)] = 1;
    if (i < 0) break;
    ++t[static_cast<size_t>(i)];
  }
  return total;
}

}  // namespace

u64 count_gcd_pred_serial(u64 box, int r, const std::vector<std::uint8_t>& pred) {
  return count_gcd_rows(box, r, pred, 1, box);
}

u64 count_gcd_pred_parallel(u64 box, int r, const std::vector<std::uint8_t>& pred) {
  u64 total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (i64 a = 1; a <= static_cast<i64>(box); ++a)
    total += count_gcd_rows(box, r, pred, static_cast<u64>(a), static_cast<u64>(a));
  return total;
}

i128 floor_power_sum_serial(u64 x, int r, const std::vector<i64>& w) {
  i128 acc = 0;
  for (u64 d = 1; d <= x; ++d) {
    i128 q = static_cast<i128>(x / d);
    i128 t = q;
    for (int i = 1; i < r; ++i) t *= q;
    acc += static_cast<i128>(w[d]) * t;
  }
  return acc;
}

i128 floor_power_sum_parallel(u64 x, int r, const std::vector<i64>& w) {
  // fixed blocks, per-thread partials, sequential fold
  const u64 block = 4096;
  const u64 nblocks = (x + block - 1) / block;
  std::vector<i128> partial(nblocks, 0);
#pragma omp parallel for schedule(static)
  for (i64 bi = 0; bi < static_cast<i64>(nblocks); ++bi) {
    u64 lo = static_cast<u64>(bi) * block + 1;
    u64 hi = std::min(x, lo + block - 1);
    i128 acc = 0;
    for (u64 d = lo; d <= hi; ++d) {
      i128 q = static_cast<i128>(x / d);
      i128 t = q;
      for (int i = 1; i < r; ++i) t *= q;
      acc += static_cast<i128>(w[d]) * t;
    }
    partial[static_cast<size_t>(bi)] = acc;
  }
  i128 acc = 0;
  for (i128 v : partial) acc += v;
  return acc;
}

namespace {
constexpr size_t kPrimeBlock = 2048;
}

Real product_over_primes_serial(const std::vector<u64>& primes,
                                const std::function<Real(u64)>& local) {
  const size_t nblocks = (primes.size() + kPrimeBlock - 1) / kPrimeBlock;
  Real acc = 1;
  for (size_t bi = 0; bi < nblocks; ++bi) {
    Real blockacc = 1;
    size_t lo = bi * kPrimeBlock;
    size_t hi = std::min(primes.size(), lo + kPrimeBlock);
    for (size_t i = lo; i < hi; ++i) blockacc *= local(primes[i]);
    acc *= blockacc;
  }
  return acc;
}

Real product_over_primes_parallel(const std::vector<u64>& primes,
                                  const std::function<Real(u64)>& local) {
  const size_t nblocks = (primes.size() + kPrimeBlock - 1) / kPrimeBlock;
  std::vector<Real> partial(nblocks, Real(1));
  std::exception_ptr error;  // exceptions must not unwind through the omp region
#pragma omp parallel for schedule(dynamic)
  for (i64 bi = 0; bi < static_cast<i64>(nblocks); ++bi) {
    try {
      Real blockacc = 1;
      size_t lo = static_cast<size_t>(bi) * kPrimeBlock;
      size_t hi = std::min(primes.size(), lo + kPrimeBlock);
      for (size_t i = lo; i < hi; ++i) blockacc *= local(primes[i]);
      partial[static_cast<size_t>(bi)] = blockacc;
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  Real acc = 1;
  for (const Real& v : partial) acc *= v;
  return acc;
}

}  // namespace multfun::kernels
