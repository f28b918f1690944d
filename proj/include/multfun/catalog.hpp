#pragma once

#include "multfun/arith_fn.hpp"

namespace multfun {
namespace catalog {

// --- one-variable classics (exact evaluators over the factorization) ---
FnR delta1();
FnR id1();
FnR id_pow(long k);        // n^k
FnR euler_phi();
FnR jordan_phi(long k);    // phi_k
FnR dedekind_psi();
FnR mobius1();
FnR mobius_unitary1();     // (-1)^omega
FnR tau1();
FnR tau_piltz(long k);     // tau_k, k >= 1
FnR sigma1();
FnR sigma_pow(long k);     // sigma_k
FnR omega_fn();            // number of distinct primes (not multiplicative)
FnR big_omega_fn();
FnR liouville();
FnR xi1();                 // prod nu_p!
FnR beta_alt();            // id * lambda, alternating sum of divisors

// c_n(k) by the mu-form; exact integer
long long ramanujan_sum(u64 n, u64 k);
// as the two-variable multiplicative function (k, n) -> c_n(k)
FnR ramanujan_fn();
// its Dirichlet-convolution representation (two-route check)
FnR ramanujan_fn_representation();

// --- r-variable specials ---
FnR gcd_fn(int r);
FnR lcm_fn(int r);
FnR prod_fn(int r);  // n1...nr
FnR g_of_gcd(const FnR& g, int r);
FnR g_of_lcm(const FnR& g, int r);

FnR rho_fn(int r);                  // pairwise coprime indicator, r >= 2
FnR rho_representation(int r);      // sum tau(d1...dr) mu(n1/d1)...mu(nr/dr)
FnR rho_unitary_fn(int r);          // pairwise unitary coprime indicator

FnR sigma_r_fn(int r);              // sum gcd(d1,..,dr) over divisor tuples
FnR sigma_r_representation(int r);  // sum_{d | gcd} phi(d) tau(n1/d)...tau(nr/d)

FnR subgroup_count_fn();            // s(m, n), arity 2
FnR cyclic_count_fn(int r);         // c(n1,..,nr) via the phi/phi(lcm) formula
FnR cyclic_count_gcd_form();        // r = 2 form: sum phi(gcd(d1, d2))

FnR E_fn(int r);                    // (1/n) sum c_{n1}(j)...c_{nr}(j), n = lcm
FnR E_representation(int r);
FnR A_fn(int r);                    // (1/n) sum gcd(k,n1)...gcd(k,nr)
FnR A_representation(int r);

bool is_perfect_tuple(const Tuple& t);  // sigma_r(t) = 2 gcd(t)

// CLI vocabulary: resolve a name (with optional integer parameter already split
// off) at ambient arity r; returns empty FnR when unknown
FnR by_name(const std::string& name, int r, bool* needs_param = nullptr);
FnR by_name_param(const std::string& name, long k, int r);
std::vector<std::string> names();

}  // namespace catalog
}  // namespace multfun
