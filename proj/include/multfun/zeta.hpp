#pragma once

#include <vector>

#include "multfun/real.hpp"

namespace multfun {

// Riemann zeta for real s > 1, Euler-Maclaurin with Bernoulli tail correction
Real zeta_eval(const Real& s, int digits = 50);
Real zeta_deriv(const Real& s, int digits = 50);  // zeta'(s), s > 1

// B_0, B_2, B_4, ... as exact rationals (even-index Bernoulli numbers)
const std::vector<Rat>& bernoulli_even(int count);

}  // namespace multfun
