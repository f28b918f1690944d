#pragma once

#include <stdexcept>

#include "multfun/arith_fn.hpp"
#include "multfun/real.hpp"

namespace multfun {

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EulerProductResult {
  Real value = 0;
  u64 prime_cutoff = 0;
  int local_degree = 0;
  Real tail_estimate = 0;  // heuristic, not rigorous
};

// multiply each local factor by (1 - p^{-s})^mult and the final value by
// zeta(s)^mult; standard acceleration for slowly convergent products
struct ZetaFactor {
  Real s;
  int mult = 1;
};

struct EulerOptions {
  u64 prime_cutoff = 100000;
  int local_degree = 40;
  std::vector<ZetaFactor> extract;
  bool parallel = true;
  int zeta_digits = 50;
};

// prod over p <= P of sum_nu f(p^nu) p^{-<nu, z>}, local sums truncated at the
// local degree with geometric early stop; caller asserts z lies in the
// convergence region. Throws DivergenceError when local terms fail to decay.
EulerProductResult euler_product_eval(const FnR& f, const std::vector<Real>& z,
                                      const EulerOptions& opt = {});

// same machinery for a caller-supplied local factor p -> Real
EulerProductResult euler_product_local(const std::function<Real(u64)>& local,
                                       const EulerOptions& opt);

// one local sum: sum_nu f(p^nu) prod x_i^{nu_i}, degree-truncated with early stop
Real euler_local_sum(const FnR& f, u64 p, const std::vector<Real>& x, int degree);

// the brute-force oracle: direct truncated sum over [1, N]^r
Real dirichlet_partial_sum(const FnR& f, const std::vector<Real>& z, u64 N);

}  // namespace multfun
