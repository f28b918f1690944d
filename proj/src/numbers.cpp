#include "multfun/numbers.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace multfun {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic base set for 64-bit inputs
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 c = 1;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
    ++c;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

namespace {

Factorization factorize_uncached(u64 n) {
  Factorization f;
  f.value = n;
  std::vector<u64> primes;
  // trial division handles the desk-scale range; rho picks up large cofactors
  u64 m = n;
  for (u64 d = 2; d * d <= m && d <= 1000000; d == 2 ? d = 3 : d += 2) {
    while (m % d == 0) {
      primes.push_back(d);
      m /= d;
    }
  }
  if (m > 1) factor_rec(m, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().p == p)
      ++f.factors.back().e;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

// append-only cache; evaluators hit the same small arguments millions of times
constexpr u64 kFactorMemoLimit = 1 << 22;
std::mutex fact_mutex;
std::unordered_map<u64, Factorization> fact_memo;

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > kFactorMemoLimit) return factorize_uncached(n);
  {
    std::lock_guard lk(fact_mutex);
    auto it = fact_memo.find(n);
    if (it != fact_memo.end()) return it->second;
  }
  Factorization f = factorize_uncached(n);
  std::lock_guard lk(fact_mutex);
  fact_memo.emplace(n, f);
  return f;
}

bool is_prime(u64 n) { return miller_rabin(n); }

namespace {
std::mutex div_mutex;
std::unordered_map<u64, std::shared_ptr<const std::vector<u64>>> div_memo;
}  // namespace

const std::vector<u64>& divisors(u64 n) {
  {
    std::lock_guard lk(div_mutex);
    auto it = div_memo.find(n);
    if (it != div_memo.end()) return *it->second;
  }
  auto f = factorize(n);
  std::vector<u64> ds{1};
  for (const auto& pp : f.factors) {
    size_t sz = ds.size();
    u64 q = 1;
    for (std::uint32_t k = 1; k <= pp.e; ++k) {
      q *= pp.p;
      for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * q);
    }
  }
  std::sort(ds.begin(), ds.end());
  auto sp = std::make_shared<const std::vector<u64>>(std::move(ds));
  std::lock_guard lk(div_mutex);
  auto [it, _] = div_memo.emplace(n, sp);
  return *it->second;
}

std::vector<u64> unitary_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d : divisors(n))
    if (std::gcd(d, n / d) == 1) out.push_back(d);
  return out;
}

u64 gcd_list(std::span<const u64> xs) {
  if (xs.empty()) throw std::invalid_argument("gcd_list: empty input");
  u64 g = 0;
  for (u64 x : xs) g = std::gcd(g, x);
  return g;
}

u64 lcm2(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

u64 lcm_list(std::span<const u64> xs) {
  if (xs.empty()) throw std::invalid_argument("lcm_list: empty input");
  u64 l = 1;
  for (u64 x : xs) l = lcm2(l, x);
  return l;
}

u64 gcud_list(std::span<const u64> xs) {
  if (xs.empty()) throw std::invalid_argument("gcud_list: empty input");
  // scan unitary divisors of the first element, keep those unitary in every element
  u64 best = 1;
  for (u64 d : unitary_divisors(xs[0])) {
    if (d <= best) continue;
    bool common = true;
    for (u64 x : xs.subspan(1)) {
      if (x % d != 0 || std::gcd(d, x / d) != 1) {
        common = false;
        break;
      }
    }
    if (common) best = d;
  }
  return best;
}

u64 gcud2(u64 a, u64 b) {
  u64 xs[2] = {a, b};
  return gcud_list(xs);
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> spf_sieve(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

std::vector<i64> phi_sieve(std::uint32_t limit) {
  std::vector<i64> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), i64(0));
  for (std::uint32_t p = 2; p <= limit; ++p) {
    if (phi[p] == p) {  // p prime
      for (std::uint64_t j = p; j <= limit; j += p) phi[j] -= phi[j] / p;
    }
  }
  return phi;
}

std::vector<i64> mu_sieve(std::uint32_t limit) {
  std::vector<i64> mu(limit + 1, 1);
  auto spf = spf_sieve(limit);
  for (std::uint32_t n = 2; n <= limit; ++n) {
    std::uint32_t p = spf[n];
    std::uint32_t m = n / p;
    mu[n] = (m % p == 0) ? 0 : -mu[m];
  }
  return mu;
}

u64 ipow(u64 base, std::uint32_t e) {
  u64 r = 1;
  while (e--) r *= base;
  return r;
}

u64 binom_u64(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace multfun
