#pragma once

#include "multfun/convolution.hpp"

namespace multfun {

enum class ConvoluteKind { dir, unit, gcd, lcm, binom };

const char* convolute_kind_name(ConvoluteKind k);

// collapse an r-variable function to one variable by summing over constrained
// r-tuples (product = n with the kind's side condition, or lcm = n).
// Production path recombines per prime when f is multiplicative with local data;
// the global enumeration stays available as the oracle.
FnR convolute(ConvoluteKind k, const FnR& f);
FnR convolute_definitional(ConvoluteKind k, const FnR& f);

// counting functions: convolutes of 1_r in closed form
FnR tau_r_closed(int r);   // prod C(nu + r - 1, r - 1)
FnR h_r_closed(int r);     // r^omega
FnR n_r_closed(int r);     // prod (C(nu + r - 1, r - 1) - C(nu - 1, r - 1))
FnR m_r_closed(int r);     // prod ((nu + 1)^r - nu^r)
FnR q_r_closed(int r);     // r^Omega

// named one-variable convolutes
FnR g_r_fn(int r);          // sum_{d1...dr = n} gcd(d1,..,dr)
FnR ell_r_fn(int r);        // sum_{d1...dr = n} lcm(d1,..,dr)
FnR parabolic_fn();         // N(n) = sum_{d | n} phi(gcd(d, n/d))
FnR cyclic_diag_fn();       // c(n) = sum_{lcm(d,e) = n} gcd(d, e)
FnR ramanujan_dir_fn();     // a(n) = sum_{de = n} c_d(e)
FnR ramanujan_unit_fn();    // b(n), unitary version
FnR ramanujan_lcm_fn();     // h(n) = sum_{lcm(d,e) = n} c_d(e)

// F(n, 1, .., 1) = f(n), zero elsewhere; the surjectivity witness
FnR embed_first(const FnR& f, int r);

struct IdentityCheck {
  bool ok = true;
  u64 counterexample = 0;
  Rat lhs, rhs;
};

// Prop 10 routes for f = g(gcd .)
IdentityCheck check_dir_convolute_of_g_gcd(const FnR& g, int r, u64 limit);
IdentityCheck check_lcm_convolute_of_g_gcd(const FnR& g, int r, u64 limit);

// the homomorphism law of the kind (gcd maps its convolution to the unitary one)
bool homomorphism_check(ConvoluteKind k, const FnR& f, const FnR& g, u64 limit,
                        u64* counterexample = nullptr);

}  // namespace multfun
