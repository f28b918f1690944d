// serial vs OpenMP kernel comparison; exits nonzero on any result mismatch
#include <chrono>
#include <cstdio>
#include <numeric>

#include "multfun/asymptotics.hpp"
#include "multfun/kernels.hpp"

using namespace multfun;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

bool g_ok = true;

template <typename F, typename G>
void bench(const char* name, F serial, G parallel) {
  auto t0 = Clock::now();
  auto rs = serial();
  auto t1 = Clock::now();
  auto rp = parallel();
  auto t2 = Clock::now();
  bool eq = rs == rp;
  if (!eq) g_ok = false;
  double ts = seconds(t0, t1), tp = seconds(t1, t2);
  std::printf("%-34s serial %8.3fs  omp %8.3fs  speedup %5.2fx  %s\n", name, ts, tp,
              tp > 0 ? ts / tp : 0.0, eq ? "match" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("kernel benchmark, %d thread(s)\n\n", kernels::max_threads());

  {
    const u64 B = 2000;
    std::vector<std::uint8_t> pred(B + 1, 0);
    pred[1] = 1;
    bench(
        "coprime pair count B=2000",
        [&] { return kernels::count_gcd_pred_serial(B, 2, pred); },
        [&] { return kernels::count_gcd_pred_parallel(B, 2, pred); });
  }
  {
    const u64 B = 300;
    auto build = [&](bool par) {
      auto pred = [](u64 a, u64 b) { return std::gcd(a, b) == 1; };
      return par ? kernels::build_pair_matrix_parallel(B, pred)
                 : kernels::build_pair_matrix_serial(B, pred);
    };
    auto ms = build(false);
    auto mp = build(true);
    bench(
        "pairwise-coprime triples B=300",
        [&] { return kernels::count_tuples_serial(ms, 3); },
        [&] { return kernels::count_tuples_parallel(mp, 3); });
  }
  {
    bench(
        "gcud pair count B=1500",
        [&] { return empirical_count(DensityPredicate::gcud_one, 2, 1500, false); },
        [&] { return empirical_count(DensityPredicate::gcud_one, 2, 1500, true); });
  }
  {
    const u64 x = 2000000;
    auto phi = phi_sieve(static_cast<std::uint32_t>(x));
    bench(
        "sum phi(d) floor(x/d)^3, x=2e6",
        [&] { return static_cast<long long>(kernels::floor_power_sum_serial(x, 3, phi) % 1000000007); },
        [&] { return static_cast<long long>(kernels::floor_power_sum_parallel(x, 3, phi) % 1000000007); });
  }
  {
    bench(
        "pairwise-coprime density EP P=1e6",
        [&] { return real_str(density_pairwise_coprime(2, 1000000, false).value, 30); },
        [&] { return real_str(density_pairwise_coprime(2, 1000000, true).value, 30); });
  }

  std::printf("\n%s\n", g_ok ? "all kernels agree" : "kernel mismatch detected");
  return g_ok ? 0 : 1;
}
