#pragma once

#include <functional>
#include <vector>

#include "multfun/real.hpp"

namespace multfun::kernels {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

// symmetric boolean pair predicate over [1, n], bit-packed rows
class BitMatrix {
 public:
  explicit BitMatrix(u64 n);
  u64 size() const { return n_; }
  bool get(u64 i, u64 j) const;
  void set(u64 i, u64 j, bool v);
  const u64* row(u64 i) const { return words_.data() + (i - 1) * row_words_; }
  size_t row_words() const { return row_words_; }

 private:
  u64 n_;
  size_t row_words_;
  std::vector<u64> words_;
};

// fill M[i][j] = pred(i, j) for 1 <= i <= j <= n (symmetric closure)
BitMatrix build_pair_matrix_serial(u64 n, const std::function<bool(u64, u64)>& pred);
BitMatrix build_pair_matrix_parallel(u64 n, const std::function<bool(u64, u64)>& pred);

// ordered r-tuples over [1,n]^r whose pairs all satisfy the predicate, r in 2..4
u64 count_tuples_serial(const BitMatrix& m, int r);
u64 count_tuples_parallel(const BitMatrix& m, int r);

// ordered r-tuples with pred(gcd of tuple) true; pred indexed by gcd value
u64 count_gcd_pred_serial(u64 box, int r, const std::vector<std::uint8_t>& pred);
u64 count_gcd_pred_parallel(u64 box, int r, const std::vector<std::uint8_t>& pred);

// sum_{d <= x} w[d] * floor(x/d)^r, exact
i128 floor_power_sum_serial(u64 x, int r, const std::vector<i64>& w);
i128 floor_power_sum_parallel(u64 x, int r, const std::vector<i64>& w);

// product over the given primes of local(p); fixed 2048-prime blocks, sequential
// in-block products and a sequential final fold, so the result is bit-stable for
// any thread count
Real product_over_primes_serial(const std::vector<u64>& primes,
                                const std::function<Real(u64)>& local);
Real product_over_primes_parallel(const std::vector<u64>& primes,
                                  const std::function<Real(u64)>& local);

int max_threads();

}  // namespace multfun::kernels
