#pragma once

#include "multfun/arith_fn.hpp"

namespace multfun {

// truncated formal power series of the local values of a multiplicative function
// at one prime: coefficient at (e1,..,er) is f(p^e1,..,p^er), all ei <= degree
struct BellSeries {
  u64 p = 2;
  int arity = 1;
  int degree = 0;
  std::vector<Rat> coef;  // dense, stride (degree+1)^i

  size_t index_of(const Exps& e) const;
  const Rat& at(const Exps& e) const;
  Rat& at(const Exps& e);
};

BellSeries bell_series(const FnR& f, u64 p, int degree);  // rejects non-multiplicative input
BellSeries bell_multiply(const BellSeries& a, const BellSeries& b);  // truncated product

// one-variable unitary Bell sum rule at positive degrees; degree 0 is
// convention-dependent and deliberately not compared
bool unitary_bell_sum_check(const FnR& f, const FnR& g, u64 p, int degree);

}  // namespace multfun
