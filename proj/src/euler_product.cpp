#include "multfun/euler_product.hpp"

#include "multfun/kernels.hpp"
#include "multfun/zeta.hpp"

namespace multfun {

// sum over exponent tuples of f(p^nu) * prod x_i^{nu_i}, by total degree,
// stopping once a layer is negligible against the running sum
Real euler_local_sum(const FnR& f, u64 p, const std::vector<Real>& x, int degree) {
  const int r = static_cast<int>(x.size());
  Real acc = 1;  // nu = 0 term of a multiplicative function
  Real prev_layer_mag = -1;
  int growth_streak = 0;
  const Real eps("1e-30");
  Exps e(static_cast<size_t>(r), 0);
  for (int s = 1; s <= degree * r; ++s) {
    Real layer = 0;
    bool any = false;
    // compositions of s with each part <= degree
    std::function<void(int, int, Real)> rec = [&](int pos, int left, Real weight) {
      if (pos == r - 1) {
        if (left > degree) return;
        e[static_cast<size_t>(pos)] = static_cast<std::uint32_t>(left);
        Real w = weight;
        for (int j = 0; j < left; ++j) w *= x[static_cast<size_t>(pos)];
        Rat v = f.local(p, e);
        if (v != 0) {
          layer += to_real(v) * w;
          any = true;
        }
        return;
      }
      int cap = std::min(left, degree);
      Real w = weight;
      for (int ei = 0; ei <= cap; ++ei) {
        e[static_cast<size_t>(pos)] = static_cast<std::uint32_t>(ei);
        rec(pos + 1, left - ei, w);
        w *= x[static_cast<size_t>(pos)];
      }
    };
    rec(0, s, Real(1));
    acc += layer;
    Real mag = abs(layer);
    if (prev_layer_mag > 0 && mag > prev_layer_mag && s > 3) {
      if (++growth_streak >= 3)
        throw DivergenceError("euler_product: local terms not decreasing at p = " +
                              std::to_string(p));
    } else {
      growth_streak = 0;
    }
    prev_layer_mag = mag;
    if (any && mag < eps * abs(acc) && s > 2) break;
    if (!any && s > 2 * degree) break;
  }
  return acc;
}

namespace {

Real tail_from_samples(u64 p1, const Real& t1, u64 p2, const Real& t2, u64 cutoff,
                       const Real& value) {
  // model |local - 1| ~ c / p^alpha and bound the log-tail by an integral
  Real a1 = abs(t1), a2 = abs(t2);
  if (a2 == 0 || a1 == 0) return Real(0);
  if (p1 == p2) return Real(0);
  Real alpha = log(a1 / a2) / log(Real(p2) / Real(p1));
  if (alpha <= Real("1.05")) return abs(value);  // no useful bound
  Real c = a2 * pow(Real(p2), alpha);
  Real logtail = 2 * c * pow(Real(cutoff), 1 - alpha) / (alpha - 1);
  return abs(value) * logtail;
}

}  // namespace

EulerProductResult euler_product_local(const std::function<Real(u64)>& local,
                                       const EulerOptions& opt) {
  auto primes = primes_up_to(opt.prime_cutoff);
  if (primes.empty()) throw std::invalid_argument("euler_product: no primes below cutoff");
  Real prod = opt.parallel ? kernels::product_over_primes_parallel(primes, local)
                           : kernels::product_over_primes_serial(primes, local);
  for (const auto& zf : opt.extract) {
    Real z = zeta_eval(zf.s, opt.zeta_digits);
    for (int i = 0; i < std::abs(zf.mult); ++i) prod = zf.mult > 0 ? prod * z : prod / z;
  }
  EulerProductResult out;
  out.value = prod;
  out.prime_cutoff = opt.prime_cutoff;
  out.local_degree = opt.local_degree;
  // sample the residual local factor at the two largest primes
  u64 p2 = primes.back();
  u64 p1 = primes.size() >= 16 ? primes[primes.size() - 16] : primes.front();
  auto residual = [&](u64 p) { return local(p) - 1; };
  out.tail_estimate = tail_from_samples(p1, residual(p1), p2, residual(p2), opt.prime_cutoff,
                                        out.value);
  return out;
}

EulerProductResult euler_product_eval(const FnR& f, const std::vector<Real>& z,
                                      const EulerOptions& opt) {
  if (static_cast<int>(z.size()) != f.arity())
    throw std::invalid_argument("euler_product_eval: arity mismatch");
  if (!f.has_local() || !at_least_multiplicative(f.fn_class()))
    throw std::invalid_argument(
        "euler_product_eval: needs a multiplicative function with local data");
  auto local = [&f, &z, &opt](u64 p) {
    std::vector<Real> x(z.size());
    Real lp = log(Real(p));
    for (size_t i = 0; i < z.size(); ++i) x[i] = exp(-z[i] * lp);
    Real v = euler_local_sum(f, p, x, opt.local_degree);
    for (const auto& zf : opt.extract) {
      Real base = exp(-zf.s * lp);  // p^{-s}
      Real fac = 1 - base;
      for (int i = 0; i < std::abs(zf.mult); ++i) v = zf.mult > 0 ? v * fac : v / fac;
    }
    return v;
  };
  return euler_product_local(local, opt);
}

Real dirichlet_partial_sum(const FnR& f, const std::vector<Real>& z, u64 N) {
  const int r = f.arity();
  if (static_cast<int>(z.size()) != r)
    throw std::invalid_argument("dirichlet_partial_sum: arity mismatch");
  // per-coordinate weight tables n^{-z_i}
  std::vector<std::vector<Real>> w(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    w[static_cast<size_t>(i)].resize(N + 1);
    for (u64 n = 1; n <= N; ++n)
      w[static_cast<size_t>(i)][n] = exp(-z[static_cast<size_t>(i)] * log(Real(n)));
  }
  Real acc = 0;
  Tuple t(static_cast<size_t>(r), 1);
  while (true) {
    Rat v = f(t);
    if (v != 0) {
      Real term = to_real(v);
      for (int i = 0; i < r; ++i) term *= w[static_cast<size_t>(i)][t[static_cast<size_t>(i)]];
      acc += term;
    }
    int i = r - 1;
    while (i >= 0 && t[static_cast<size_t>(i)] == N) t[static_cast<size_t>(i--)] = 1;
    if (i < 0) break;
    ++t[static_cast<size_t>(i)];
  }
  return acc;
}

}  // namespace multfun
