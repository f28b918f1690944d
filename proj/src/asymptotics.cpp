#include "multfun/asymptotics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "multfun/catalog.hpp"
#include "multfun/convolution.hpp"
#include "multfun/kernels.hpp"
#include "multfun/zeta.hpp"

namespace multfun {

DensityPredicate density_predicate_from_name(const std::string& name) {
  if (name == "gcd-one" || name == "coprime") return DensityPredicate::gcd_one;
  if (name == "gcd-squarefree") return DensityPredicate::gcd_squarefree;
  if (name == "pairwise-coprime") return DensityPredicate::pairwise_coprime;
  if (name == "gcud-one" || name == "unitary-coprime") return DensityPredicate::gcud_one;
  if (name == "pairwise-unitary-coprime") return DensityPredicate::pairwise_unitary_coprime;
  throw std::invalid_argument("unknown density predicate: " + name);
}

const char* density_predicate_name(DensityPredicate p) {
  switch (p) {
    case DensityPredicate::gcd_one: return "gcd-one";
    case DensityPredicate::gcd_squarefree: return "gcd-squarefree";
    case DensityPredicate::pairwise_coprime: return "pairwise-coprime";
    case DensityPredicate::gcud_one: return "gcud-one";
    case DensityPredicate::pairwise_unitary_coprime: return "pairwise-unitary-coprime";
  }
  return "?";
}

long long q_function(const Exps& nu) {
  std::map<std::uint32_t, int> mult;
  for (auto v : nu)
    if (v >= 1) ++mult[v];
  long long out = 1;
  for (const auto& [v, t] : mult) {
    long long f = 1 - t;
    if (t % 2) f = -f;
    out *= f;
  }
  return out;
}

namespace {

Real real_x(u64 p) { return 1 / Real(p); }

}  // namespace

Rat density_coprime_local_closed(int r, u64 p) {
  Rat x = rat(1) / rat_u64(p);
  return rat_pow(1 - x, r - 1) * (1 + rat(r - 1) * x);
}

Rat density_coprime_local_proof(int r, u64 p) {
  Rat x = rat(1) / rat_u64(p);
  return rat_pow(1 - x, r) + rat(r) * x * rat_pow(1 - x, r - 1);
}

EulerProductResult density_pairwise_coprime(int r, u64 prime_cutoff, bool parallel) {
  if (r < 2) throw std::invalid_argument("density_pairwise_coprime: r >= 2");
  const int c = r * (r - 1) / 2;
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.parallel = parallel;
  opt.extract = {{Real(2), -c}};
  auto local = [r, c](u64 p) {
    Real x = real_x(p);
    Real v = pow(1 - x, r - 1) * (1 + (r - 1) * x);
    return v / pow(1 - x * x, c);
  };
  return euler_product_local(local, opt);
}

EulerProductResult density_gcud_coprime(int r, u64 prime_cutoff, bool parallel) {
  if (r < 2) throw std::invalid_argument("density_gcud_coprime: r >= 2");
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.parallel = parallel;
  opt.extract = {{Real(r), -1}};
  auto local = [r](u64 p) {
    Real pr = pow(Real(p), r);
    Real v = 1 - pow(Real(p) - 1, r) / (pr * (pr - 1));
    return v / (1 - 1 / pr);
  };
  return euler_product_local(local, opt);
}

namespace {

// Q-sum local factor: sum over exponent patterns with distinct positive values
// of Q(nu) prod phi(p^{nu_i}) / p^{2 sum nu}. Patterns are enumerated as
// ascending chains of (value, multiplicity) groups; phi(p^v)/p^{2v} = (1-1/p) p^{-v}.
Real unitary_q_local(int r, u64 p, int degree) {
  Real x = real_x(p);
  Real one_minus = 1 - x;
  Real acc = 1;  // all-zero pattern
  int depth = 0;
  std::function<void(std::uint32_t, int, Real, long long, long long)> rec =
      [&](std::uint32_t minv, int slots_left, Real weight, long long qfac, long long ways) {
        if (depth > 0) acc += Real(qfac * ways) * weight;
        if (slots_left == 0) return;
        for (std::uint32_t v = minv; v <= static_cast<std::uint32_t>(degree); ++v) {
          // the cheapest extension at value v uses one slot and weighs ~ x^v
          Real base = weight * pow(x, static_cast<int>(v));
          if (base < Real("1e-45")) break;
          for (int t = 1; t <= slots_left; ++t) {
            long long f = 1 - t;
            if (t % 2) f = -f;
            if (f == 0) continue;  // t = 1 groups vanish
            long long choose = 1;
            for (int i = 0; i < t; ++i) choose = choose * (slots_left - i) / (i + 1);
            Real w = weight;
            for (int i = 0; i < t; ++i) {
              w *= one_minus;
              for (std::uint32_t j = 0; j < v; ++j) w *= x;
            }
            ++depth;
            rec(v + 1, slots_left - t, w, qfac * f, ways * choose);
            --depth;
          }
        }
      };
  rec(1, r, Real(1), 1, 1);
  return acc;
}

}  // namespace

const std::vector<long>& unitary_coprime_poly_coeffs(int r) {
  static const std::vector<long> c3 = {1, 0, -4, 7, -9, 8, -2, -3, 2};
  // corrected coefficients; the published row propagates a sign slip in the
  // underlying Q table (see q_function) and fails the brute-force cross-check
  static const std::vector<long> c4 = {1, 0, -8, 19, -27, 16, 36, -93, 75, 8, -48, 17, -1, 24, -28, 9};
  if (r == 3) return c3;
  if (r == 4) return c4;
  throw std::invalid_argument("unitary_coprime_poly_coeffs: r in {3, 4}");
}

namespace {

std::vector<ZetaFactor> unitary_zeta_factors(int r) {
  switch (r) {
    case 2: return {{Real(2), 1}};
    case 3: return {{Real(2), 1}, {Real(3), 1}};
    case 4: return {{Real(2), 2}, {Real(3), 1}, {Real(4), 1}};
    default: throw std::invalid_argument("pairwise unitary coprime: r in {2, 3, 4}");
  }
}

Real apply_poly(const std::vector<long>& coef, const Real& x) {
  Real acc = 0;
  for (size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
  return acc;
}

}  // namespace

EulerProductResult density_pairwise_unitary_coprime(int r, u64 prime_cutoff, int local_degree,
                                                    bool parallel) {
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.local_degree = local_degree;
  opt.parallel = parallel;
  auto zf = unitary_zeta_factors(r);
  opt.extract = zf;
  auto local = [r, local_degree, zf](u64 p) {
    Real v = unitary_q_local(r, p, local_degree);
    Real lp = log(Real(p));
    for (const auto& f : zf) {
      Real fac = 1 - exp(-f.s * lp);
      for (int i = 0; i < f.mult; ++i) v *= fac;
    }
    return v;
  };
  return euler_product_local(local, opt);
}

EulerProductResult unitary_coprime_polynomial_product(int r, u64 prime_cutoff, bool parallel) {
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.parallel = parallel;
  opt.extract = unitary_zeta_factors(r);
  const auto& coef = unitary_coprime_poly_coeffs(r);
  auto local = [&coef](u64 p) { return apply_poly(coef, real_x(p)); };
  return euler_product_local(local, opt);
}

// ---------------- empirical counting ----------------

namespace {

std::vector<std::uint8_t> squarefree_table(u64 box) {
  std::vector<std::uint8_t> sf(box + 1, 1);
  for (u64 d = 2; d * d <= box; ++d)
    for (u64 m = d * d; m <= box; m += d * d) sf[m] = 0;
  return sf;
}

// factorization signatures for gcud tests, from an spf sieve
struct FactorSig {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pe;
};

std::vector<FactorSig> factor_signatures(u64 box) {
  auto spf = spf_sieve(static_cast<std::uint32_t>(box));
  std::vector<FactorSig> sig(box + 1);
  for (u64 n = 2; n <= box; ++n) {
    std::uint32_t m = static_cast<std::uint32_t>(n);
    while (m > 1) {
      std::uint32_t p = spf[m], e = 0;
      while (m % p == 0) m /= p, ++e;
      sig[n].pe.push_back({p, e});
    }
  }
  return sig;
}

bool gcud_coprime_sigs(const FactorSig& a, const FactorSig& b) {
  // gcud(a, b) = 1 iff no prime appears with the same exponent in both
  auto i = a.pe.begin();
  auto j = b.pe.begin();
  while (i != a.pe.end() && j != b.pe.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else {
      if (i->second == j->second) return false;
      ++i, ++j;
    }
  }
  return true;
}

}  // namespace

u64 empirical_count(DensityPredicate pred, int r, u64 box, bool parallel) {
  using namespace kernels;
  switch (pred) {
    case DensityPredicate::gcd_one: {
      std::vector<std::uint8_t> p(box + 1, 0);
      p[1] = 1;
      return parallel ? count_gcd_pred_parallel(box, r, p) : count_gcd_pred_serial(box, r, p);
    }
    case DensityPredicate::gcd_squarefree: {
      auto p = squarefree_table(box);
      p[0] = 0;
      return parallel ? count_gcd_pred_parallel(box, r, p) : count_gcd_pred_serial(box, r, p);
    }
    case DensityPredicate::pairwise_coprime: {
      auto mk = [&](auto builder) {
        return builder(box, [](u64 a, u64 b) { return std::gcd(a, b) == 1; });
      };
      BitMatrix m = parallel ? mk(build_pair_matrix_parallel) : mk(build_pair_matrix_serial);
      return parallel ? count_tuples_parallel(m, r) : count_tuples_serial(m, r);
    }
    case DensityPredicate::gcud_one: {
      auto sigs = factor_signatures(box);
      auto pred2 = [&sigs](u64 a, u64 b) { return gcud_coprime_sigs(sigs[a], sigs[b]); };
      if (r == 2) {
        // direct pair scan; the matrix would work too but this keeps memory flat
        u64 total = 0;
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 32) reduction(+ : total)
          for (i64 a = 1; a <= static_cast<i64>(box); ++a)
            for (u64 b = 1; b <= box; ++b)
              if (pred2(static_cast<u64>(a), b)) ++total;
        } else {
          for (u64 a = 1; a <= box; ++a)
            for (u64 b = 1; b <= box; ++b)
              if (pred2(a, b)) ++total;
        }
        return total;
      }
      // gcud of the whole tuple must be 1
      u64 total = 0;
      Tuple t(static_cast<size_t>(r), 1);
      while (true) {
        if (gcud_list(t) == 1) ++total;
        int i = r - 1;
        while (i >= 0 && t[static_cast<size_t>(i)] == box) t[static_cast<size_t>(i--)] = 1;
        if (i < 0) break;
        ++t[static_cast<size_t>(i)];
      }
      return total;
    }
    case DensityPredicate::pairwise_unitary_coprime: {
      auto sigs = factor_signatures(box);
      auto pred2 = [&sigs](u64 a, u64 b) { return gcud_coprime_sigs(sigs[a], sigs[b]); };
      BitMatrix m =
          parallel ? build_pair_matrix_parallel(box, pred2) : build_pair_matrix_serial(box, pred2);
      return parallel ? count_tuples_parallel(m, r) : count_tuples_serial(m, r);
    }
  }
  throw std::logic_error("empirical_count: bad predicate");
}

u64 empirical_count_serial_reference(DensityPredicate pred, int r, u64 box) {
  // definitional per-tuple loop, kept as the reference for the kernels
  u64 total = 0;
  Tuple t(static_cast<size_t>(r), 1);
  auto sf = squarefree_table(box);
  while (true) {
    bool ok = false;
    switch (pred) {
      case DensityPredicate::gcd_one:
        ok = gcd_list(t) == 1;
        break;
      case DensityPredicate::gcd_squarefree:
        ok = sf[gcd_list(t)] != 0;
        break;
      case DensityPredicate::pairwise_coprime: {
        ok = true;
        for (int i = 0; i < r && ok; ++i)
          for (int j = i + 1; j < r && ok; ++j)
            if (std::gcd(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]) != 1) ok = false;
        break;
      }
      case DensityPredicate::gcud_one:
        ok = gcud_list(t) == 1;
        break;
      case DensityPredicate::pairwise_unitary_coprime: {
        ok = true;
        for (int i = 0; i < r && ok; ++i)
          for (int j = i + 1; j < r && ok; ++j)
            if (gcud2(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]) != 1) ok = false;
        break;
      }
    }
    if (ok) ++total;
    int i = r - 1;
    while (i >= 0 && t[static_cast<size_t>(i)] == box) t[static_cast<size_t>(i--)] = 1;
    if (i < 0) break;
    ++t[static_cast<size_t>(i)];
  }
  return total;
}

Rat empirical_density(DensityPredicate pred, int r, u64 box, bool parallel) {
  u64 c = empirical_count(pred, r, box, parallel);
  Rat denom = rat_u64(box);
  for (int i = 1; i < r; ++i) denom *= rat_u64(box);
  Rat q = rat_u64(c) / denom;
  return q;
}

DensityReport density_report(DensityPredicate pred, int r, u64 prime_cutoff, u64 box) {
  DensityReport rep;
  switch (pred) {
    case DensityPredicate::gcd_one: {
      // 1/zeta(r)
      EulerOptions opt;
      opt.prime_cutoff = prime_cutoff;
      opt.extract = {{Real(r), -1}};
      rep.analytic = euler_product_local([](u64) { return Real(1); }, opt);
      break;
    }
    case DensityPredicate::gcd_squarefree: {
      EulerOptions opt;
      opt.prime_cutoff = prime_cutoff;
      opt.extract = {{Real(2 * r), -1}};
      rep.analytic = euler_product_local([](u64) { return Real(1); }, opt);
      break;
    }
    case DensityPredicate::pairwise_coprime:
      rep.analytic = density_pairwise_coprime(r, prime_cutoff);
      break;
    case DensityPredicate::gcud_one:
      rep.analytic = density_gcud_coprime(r, prime_cutoff);
      break;
    case DensityPredicate::pairwise_unitary_coprime:
      rep.analytic = density_pairwise_unitary_coprime(r, prime_cutoff);
      break;
  }
  rep.box = box;
  rep.empirical = empirical_density(pred, r, box);
  rep.gap = abs(to_real(rep.empirical) - rep.analytic.value);
  return rep;
}

// ---------------- mean values ----------------

EulerProductResult mean_value_multiplicative(const FnR& f, u64 prime_cutoff, int local_degree,
                                             bool parallel) {
  if (!f.has_local() || !at_least_multiplicative(f.fn_class()))
    throw std::invalid_argument("mean_value_multiplicative: needs local data");
  const int r = f.arity();
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.local_degree = local_degree;
  opt.parallel = parallel;
  auto local = [f, r, local_degree](u64 p) {
    Real x = real_x(p);
    std::vector<Real> xs(static_cast<size_t>(r), x);
    return pow(1 - x, r) * euler_local_sum(f, p, xs, local_degree);
  };
  return euler_product_local(local, opt);
}

Real mean_value_wintner(const FnR& f, u64 box) {
  const int r = f.arity();
  FnR mu = mobius_fn(ConvKind::dirichlet, r);
  FnR g = convolve(ConvKind::dirichlet, mu, f);
  Real acc = 0;
  for_each_tuple(r, box, [&](const Tuple& t) {
    Rat v = g(t);
    if (v == 0) return;
    u64 prod = 1;
    for (u64 x : t) prod *= x;
    acc += to_real(v) / Real(prod);
  });
  return acc;
}

EulerProductResult mean_value_unitary(const FnR& f, u64 prime_cutoff, int local_degree,
                                      bool parallel) {
  if (!f.has_local() || !at_least_multiplicative(f.fn_class()))
    throw std::invalid_argument("mean_value_unitary: needs local data");
  const int r = f.arity();
  FnR mux = mobius_fn(ConvKind::unitary, r);
  FnR kern = convolve(ConvKind::unitary, mux, f);
  EulerOptions opt;
  opt.prime_cutoff = prime_cutoff;
  opt.local_degree = local_degree;
  opt.parallel = parallel;
  auto local = [kern, r, local_degree](u64 p) {
    // sum (mu^x x f)(p^nu) phi(p^nu1)...phi(p^nur) / p^{2|nu|}
    Real x = real_x(p);
    Real acc = 1;
    int small_streak = 0;
    const Real eps("1e-30");
    Exps e(static_cast<size_t>(r), 0);
    for (int s = 1; s <= local_degree * r; ++s) {
      Real layer = 0;
      std::function<void(int, int, Real)> rec = [&](int pos, int left, Real w) {
        if (pos == r - 1) {
          if (left > local_degree) return;
          e[static_cast<size_t>(pos)] = static_cast<std::uint32_t>(left);
          Real ww = w;
          if (left > 0) {
            ww *= (1 - x);
            for (int j = 0; j < left; ++j) ww *= x;
          }
          Rat v = kern.local(p, e);
          if (v != 0) layer += to_real(v) * ww;
          return;
        }
        Real w2 = w;
        for (int ei = 0; ei <= std::min(left, local_degree); ++ei) {
          e[static_cast<size_t>(pos)] = static_cast<std::uint32_t>(ei);
          Real ww = w2;
          if (ei > 0) {
            ww = w2 * (1 - x);
            for (int j = 0; j < ei; ++j) ww *= x;
          }
          rec(pos + 1, left - ei, ww);
        }
      };
      rec(0, s, Real(1));
      acc += layer;
      // whole layers can vanish (the kernel is zero at odd total degrees for
      // pattern-type functions), so require a run of negligible layers
      if (abs(layer) < eps * abs(acc)) {
        if (++small_streak >= 3 && s > 2) break;
      } else {
        small_streak = 0;
      }
    }
    return acc;
  };
  return euler_product_local(local, opt);
}

// ---------------- partial-sum tables ----------------

TableTarget table_target_from_name(const std::string& name) {
  if (name == "gcd2") return TableTarget::gcd2;
  if (name == "gcdr") return TableTarget::gcdr;
  if (name == "lcm2") return TableTarget::lcm2;
  if (name == "g2") return TableTarget::g2;
  if (name == "l2n" || name == "l2_over_n") return TableTarget::l2_over_n;
  if (name == "s2") return TableTarget::s2;
  if (name == "c2") return TableTarget::c2;
  throw std::invalid_argument("unknown table target: " + name);
}

const char* table_target_name(TableTarget t) {
  switch (t) {
    case TableTarget::gcd2: return "gcd2";
    case TableTarget::gcdr: return "gcdr";
    case TableTarget::lcm2: return "lcm2";
    case TableTarget::g2: return "g2";
    case TableTarget::l2_over_n: return "l2_over_n";
    case TableTarget::s2: return "s2";
    case TableTarget::c2: return "c2";
  }
  return "?";
}

namespace {

Rat rat_i128(kernels::i128 v) {
  bool neg = v < 0;
  unsigned __int128 a = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  u64 hi = static_cast<u64>(a >> 64), lo = static_cast<u64>(a);
  Rat out = rat_u64(hi);
  Rat two64 = rat_u64(1ull << 32);
  two64 *= two64;
  out = out * two64 + rat_u64(lo);
  if (neg) out = -out;
  return out;
}

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// D(m) = sum_{k <= m} tau(k), hyperbola method
u64 divisor_summatory(u64 m) {
  if (m == 0) return 0;
  u64 s = isqrt_u64(m);
  u64 acc = 0;
  for (u64 a = 1; a <= s; ++a) acc += m / a;
  return 2 * acc - s * s;
}

// U(x, c) = sum_{j <= x/c} floor(x/(c j))
u64 divisor_summatory_scaled(u64 x, u64 c) {
  u64 m = x / c;
  u64 acc = 0;
  for (u64 j = 1; j <= m; ++j) acc += x / (c * j);
  return acc;
}

std::vector<i64> mu_phi_convolution(std::uint32_t limit) {
  auto mu = mu_sieve(limit);
  auto phi = phi_sieve(limit);
  std::vector<i64> h(limit + 1, 0);
  for (std::uint32_t d = 1; d <= limit; ++d) {
    if (!mu[d]) continue;
    for (std::uint64_t m = d; m <= limit; m += d) h[m] += mu[d] * phi[m / d];
  }
  return h;
}

kernels::i128 lcm2_exact(u64 x, const std::vector<i64>& mu) {
  // sum_{m,n<=x} lcm = sum_g g * sum_{e<=x/g} mu(e) e^2 S1(x/(g e))^2,
  // S1(k) = k(k+1)/2, inner pair (a, b) coprime
  kernels::i128 total = 0;
  for (u64 g = 1; g <= x; ++g) {
    u64 y = x / g;
    kernels::i128 inner = 0;
    for (u64 e = 1; e <= y; ++e) {
      if (!mu[e]) continue;
      u64 k = y / e;
      kernels::i128 s1 = static_cast<kernels::i128>(k) * (k + 1) / 2;
      inner += static_cast<kernels::i128>(mu[e]) * static_cast<kernels::i128>(e) * e * s1 * s1;
    }
    total += static_cast<kernels::i128>(g) * inner;
  }
  return total;
}

Rat l2_over_n_exact(u64 x, const std::vector<i64>& mu) {
  // sum_{n<=x} l2(n)/n = sum_{de<=x} 1/gcd(d,e)
  //                    = sum_g (1/g) sum_{e: g^2 e^2 <= x} mu(e) D(x/(g^2 e^2))
  Rat total(0);
  for (u64 g = 1; g * g <= x; ++g) {
    i64 acc = 0;
    for (u64 e = 1; g * g * e * e <= x; ++e) {
      if (!mu[e]) continue;
      acc += mu[e] * static_cast<i64>(divisor_summatory(x / (g * g * e * e)));
    }
    Rat term = rat(static_cast<long>(acc));
    total += term / rat_u64(g);
  }
  return total;
}

}  // namespace

Rat exact_partial_sum(TableTarget target, u64 x, int r, bool parallel) {
  using kernels::i128;
  switch (target) {
    case TableTarget::gcd2: {
      auto phi = phi_sieve(static_cast<std::uint32_t>(x));
      i128 v = parallel ? kernels::floor_power_sum_parallel(x, 2, phi)
                        : kernels::floor_power_sum_serial(x, 2, phi);
      return rat_i128(v);
    }
    case TableTarget::gcdr: {
      auto phi = phi_sieve(static_cast<std::uint32_t>(x));
      i128 v = parallel ? kernels::floor_power_sum_parallel(x, r, phi)
                        : kernels::floor_power_sum_serial(x, r, phi);
      return rat_i128(v);
    }
    case TableTarget::lcm2: {
      auto mu = mu_sieve(static_cast<std::uint32_t>(x));
      return rat_i128(lcm2_exact(x, mu));
    }
    case TableTarget::g2: {
      auto phi = phi_sieve(static_cast<std::uint32_t>(isqrt_u64(x)) + 2);
      i128 acc = 0;
      for (u64 c = 1; c * c <= x; ++c)
        acc += static_cast<i128>(phi[c]) * static_cast<i128>(divisor_summatory(x / (c * c)));
      return rat_i128(acc);
    }
    case TableTarget::l2_over_n: {
      auto mu = mu_sieve(static_cast<std::uint32_t>(isqrt_u64(x)) + 2);
      return l2_over_n_exact(x, mu);
    }
    case TableTarget::s2: {
      auto phi = phi_sieve(static_cast<std::uint32_t>(x));
      i128 acc = 0;
      for (u64 c = 1; c <= x; ++c) {
        u64 u = divisor_summatory_scaled(x, c);
        acc += static_cast<i128>(phi[c]) * static_cast<i128>(u) * static_cast<i128>(u);
      }
      return rat_i128(acc);
    }
    case TableTarget::c2: {
      auto h = mu_phi_convolution(static_cast<std::uint32_t>(x));
      i128 acc = 0;
      for (u64 c = 1; c <= x; ++c) {
        if (!h[c]) continue;
        u64 u = divisor_summatory_scaled(x, c);
        acc += static_cast<i128>(h[c]) * static_cast<i128>(u) * static_cast<i128>(u);
      }
      return rat_i128(acc);
    }
  }
  throw std::logic_error("exact_partial_sum: bad target");
}

namespace {

Real main_term(TableTarget target, u64 xu, int r) {
  Real x(xu);
  Real lx = log(x);
  Real z2 = zeta_eval(Real(2)), z3 = zeta_eval(Real(3));
  switch (target) {
    case TableTarget::gcd2: {
      Real zp2 = zeta_deriv(Real(2));
      Real g = euler_gamma();
      return x * x / z2 * (lx + 2 * g - Real(1) / 2 - z2 / 2 - zp2 / z2);
    }
    case TableTarget::gcdr: {
      Real zr = zeta_eval(Real(r)), zr1 = zeta_eval(Real(r - 1));
      return zr1 / zr * pow(x, r);
    }
    case TableTarget::lcm2:
      return z3 / (4 * z2) * pow(x, 4);
    case TableTarget::g2:
      return 3 / (2 * pi_const() * pi_const()) * x * lx * lx;
    case TableTarget::l2_over_n: {
      Real zp2 = zeta_deriv(Real(2)), zp3 = zeta_deriv(Real(3));
      Real g = euler_gamma();
      return z3 / z2 * x * (lx + 2 * g - 1 - 2 * zp2 / z2 + 2 * zp3 / z3);
    }
    case TableTarget::s2:
      return 2 / (pi_const() * pi_const()) * x * x * lx * lx * lx;
    case TableTarget::c2: {
      Real p4 = pow(pi_const(), 4);
      return 12 / p4 * x * x * lx * lx * lx;
    }
  }
  throw std::logic_error("main_term: bad target");
}

}  // namespace

std::vector<PartialSumRow> partial_sum_table(TableTarget target, const std::vector<u64>& xs,
                                             int r) {
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument("partial_sum_table: xs must be ascending");
  std::vector<PartialSumRow> rows;
  for (u64 x : xs) {
    PartialSumRow row;
    row.x = x;
    row.exact = exact_partial_sum(target, x, r);
    row.main_term = main_term(target, x, r);
    row.rel_dev = to_real(row.exact) / row.main_term - 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

LeadingFit fit_leading_coefficient(TableTarget target, const std::vector<u64>& xs) {
  // model: exact(x)/x^a = sum_{k<=m} c_k log^k x, leading k = m
  int m = 0, apow = 0;
  Real expected = 0;
  Real pi2 = pi_const() * pi_const();
  switch (target) {
    case TableTarget::g2:
      m = 2, apow = 1, expected = 3 / (2 * pi2);
      break;
    case TableTarget::s2:
      m = 3, apow = 2, expected = 2 / pi2;
      break;
    case TableTarget::c2:
      m = 3, apow = 2, expected = 12 / (pi2 * pi2);
      break;
    default:
      throw std::invalid_argument("fit_leading_coefficient: g2, s2 or c2 only");
  }
  const int np = m + 1;
  std::vector<std::vector<Real>> ata(static_cast<size_t>(np),
                                     std::vector<Real>(static_cast<size_t>(np), Real(0)));
  std::vector<Real> atb(static_cast<size_t>(np), Real(0));
  for (u64 xu : xs) {
    Rat ex = exact_partial_sum(target, xu);
    Real y = to_real(ex) / pow(Real(xu), apow);
    Real lx = log(Real(xu));
    std::vector<Real> row(static_cast<size_t>(np));
    for (int k = 0; k <= m; ++k) row[static_cast<size_t>(k)] = pow(lx, m - k);
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j)
        ata[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            row[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
      atb[static_cast<size_t>(i)] += row[static_cast<size_t>(i)] * y;
    }
  }
  // gaussian elimination
  for (int col = 0; col < np; ++col) {
    int piv = col;
    for (int i = col + 1; i < np; ++i)
      if (abs(ata[static_cast<size_t>(i)][static_cast<size_t>(col)]) >
          abs(ata[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
        piv = i;
    std::swap(ata[static_cast<size_t>(col)], ata[static_cast<size_t>(piv)]);
    std::swap(atb[static_cast<size_t>(col)], atb[static_cast<size_t>(piv)]);
    for (int i = col + 1; i < np; ++i) {
      Real f = ata[static_cast<size_t>(i)][static_cast<size_t>(col)] /
               ata[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int j = col; j < np; ++j)
        ata[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
            f * ata[static_cast<size_t>(col)][static_cast<size_t>(j)];
      atb[static_cast<size_t>(i)] -= f * atb[static_cast<size_t>(col)];
    }
  }
  std::vector<Real> sol(static_cast<size_t>(np));
  for (int i = np - 1; i >= 0; --i) {
    Real v = atb[static_cast<size_t>(i)];
    for (int j = i + 1; j < np; ++j)
      v -= ata[static_cast<size_t>(i)][static_cast<size_t>(j)] * sol[static_cast<size_t>(j)];
    sol[static_cast<size_t>(i)] = v / ata[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  LeadingFit fit;
  fit.fitted_leading = sol[0];
  fit.expected_leading = expected;
  fit.rel_error = abs(sol[0] - expected) / expected;
  return fit;
}

std::vector<Tuple> search_perfect_tuples(int r, u64 box) {
  std::vector<Tuple> out;
  Tuple t(static_cast<size_t>(r), 1);
  // canonical nondecreasing tuples
  std::function<void(int, u64)> rec = [&](int pos, u64 lo) {
    if (pos == r) {
      if (catalog::is_perfect_tuple(t)) out.push_back(t);
      return;
    }
    for (u64 v = lo; v <= box; ++v) {
      t[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 1);
  return out;
}

}  // namespace multfun
