#pragma once

#include <stdexcept>

#include "multfun/arith_fn.hpp"

namespace multfun {

enum class ConvKind { dirichlet, unitary, gcd, lcm, binomial };

const char* conv_kind_name(ConvKind k);

struct NotInvertibleError : std::runtime_error {
  Tuple witness;
  explicit NotInvertibleError(Tuple w)
      : std::runtime_error("function not invertible"), witness(std::move(w)) {}
};

// the unit delta_r for all five convolutions
FnR identity_fn(int r);
FnR one_fn(int r);

// direct summation over divisor decompositions per the kind's side condition;
// always available as the oracle path
FnR convolve_definitional(ConvKind k, const FnR& f, const FnR& g);

// production path: prime-local composition when both operands carry local data,
// definitional summation otherwise; results agree (tags are advisory only)
FnR convolve(ConvKind k, const FnR& f, const FnR& g);

// lazy inverse; solves the convolution equations per requested tuple.
// dirichlet/unitary/gcd/binomial need f(1,..,1) != 0; the lcm kind checks
// (f * 1_r)(d) != 0 tuple by tuple and reports the witness otherwise.
FnR inverse(ConvKind k, const FnR& f);

// f (+) g computed through (f*1_r)(g*1_r)*mu_r
FnR lcm_via_dirichlet(const FnR& f, const FnR& g);

// does f o g = xi_r((f/xi_r) * (g/xi_r)) hold on [1,B]^r?
bool binomial_iso_check(const FnR& f, const FnR& g, u64 box);

// the per-kind Mobius function: inverse of 1_r (mu_r, mu^x_r, mu^o_r, mu^+_r, lambda_r)
FnR mobius_fn(ConvKind k, int r);

FnR pointwise_mul(const FnR& f, const FnR& g);
FnR pointwise_add(const FnR& f, const FnR& g);

// xi(n) = prod nu_p(n)! lifted to r variables
FnR xi_r_fn(int r);

}  // namespace multfun
