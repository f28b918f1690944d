#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>
#include <sstream>

#include "multfun/rational.hpp"

namespace multfun {

// 60 working decimal digits; the series/asymptotics contracts ask for >= 50.
// Expression templates are off: evaluators get type-erased behind std::function,
// and a deferred expression must not outlive its operands.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>,
                                           boost::multiprecision::et_off>;

inline Real pi_const() { return boost::math::constants::pi<Real>(); }
inline Real euler_gamma() { return boost::math::constants::euler<Real>(); }

inline Real to_real(const Rat& q) {
  if (is_integer(q) && mpz_fits_slong_p(q.get_num_mpz_t()))
    return Real(static_cast<long>(mpz_get_si(q.get_num_mpz_t())));
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

inline std::string real_str(const Real& x, int digits = 15) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace multfun
