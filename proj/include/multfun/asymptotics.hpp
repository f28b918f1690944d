#pragma once

#include "multfun/euler_product.hpp"

namespace multfun {

enum class DensityPredicate {
  gcd_one,
  gcd_squarefree,
  pairwise_coprime,
  gcud_one,
  pairwise_unitary_coprime,
};

DensityPredicate density_predicate_from_name(const std::string& name);
const char* density_predicate_name(DensityPredicate p);

struct DensityReport {
  EulerProductResult analytic;
  Rat empirical;
  u64 box = 0;
  Real gap = 0;
};

// corrected combinatorial value of (mu^x_r x rho^x) at one prime block:
// prod over the distinct positive exponent values, taken t_i times, of
// (-1)^{t_i} (1 - t_i). (The published sign (-1)^r disagrees with the
// brute-force unitary convolution; see the q_function tests.)
long long q_function(const Exps& nu);

// A_r, closed-form local (1 - 1/p)^{r-1} (1 + (r-1)/p), zeta(2)^{-C(r,2)} extracted
EulerProductResult density_pairwise_coprime(int r, u64 prime_cutoff, bool parallel = true);
// the proof-route local polynomial (1-1/p)^r + (r/p)(1-1/p)^{r-1}, exact in p
Rat density_coprime_local_closed(int r, u64 p);
Rat density_coprime_local_proof(int r, u64 p);

// gcud(n1..nr) = 1 density, local 1 - (p-1)^r / (p^r (p^r - 1))
EulerProductResult density_gcud_coprime(int r, u64 prime_cutoff, bool parallel = true);

// A^x_r via the Q-sum local factors (degree-truncated), paper-style zeta factors
EulerProductResult density_pairwise_unitary_coprime(int r, u64 prime_cutoff,
                                                    int local_degree = 40,
                                                    bool parallel = true);
// explicit polynomial route, r in {3, 4}; r = 4 uses the corrected coefficients
EulerProductResult unitary_coprime_polynomial_product(int r, u64 prime_cutoff,
                                                      bool parallel = true);
const std::vector<long>& unitary_coprime_poly_coeffs(int r);

Rat empirical_density(DensityPredicate pred, int r, u64 box, bool parallel = true);
u64 empirical_count(DensityPredicate pred, int r, u64 box, bool parallel = true);
u64 empirical_count_serial_reference(DensityPredicate pred, int r, u64 box);

DensityReport density_report(DensityPredicate pred, int r, u64 prime_cutoff, u64 box);

// mean values
EulerProductResult mean_value_multiplicative(const FnR& f, u64 prime_cutoff,
                                             int local_degree = 40, bool parallel = true);
Real mean_value_wintner(const FnR& f, u64 box);  // sum (mu_r * f)(t) / prod t
EulerProductResult mean_value_unitary(const FnR& f, u64 prime_cutoff, int local_degree = 40,
                                      bool parallel = true);

// partial-sum tables
enum class TableTarget { gcd2, gcdr, lcm2, g2, l2_over_n, s2, c2 };
TableTarget table_target_from_name(const std::string& name);
const char* table_target_name(TableTarget t);

struct PartialSumRow {
  u64 x = 0;
  Rat exact;
  Real main_term = 0;
  Real rel_dev = 0;  // exact/main - 1
};

std::vector<PartialSumRow> partial_sum_table(TableTarget target, const std::vector<u64>& xs,
                                             int r = 3);

// least-squares fit of exact/x^a = lead * log^m x + ... on the given grid;
// the lower-order constants of the g2/s2/c2 main terms are not published,
// so acceptance gates on the fitted leading coefficient
struct LeadingFit {
  Real fitted_leading = 0;
  Real expected_leading = 0;
  Real rel_error = 0;
};
LeadingFit fit_leading_coefficient(TableTarget target, const std::vector<u64>& xs);

// exact partial sums (used by the tables; exposed for tests and the bench tool)
Rat exact_partial_sum(TableTarget target, u64 x, int r = 3, bool parallel = true);

std::vector<Tuple> search_perfect_tuples(int r, u64 box);  // canonical (sorted) tuples

}  // namespace multfun
