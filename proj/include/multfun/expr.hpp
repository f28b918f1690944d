#pragma once

#include <stdexcept>
#include <string>

#include "multfun/arith_fn.hpp"

namespace multfun {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Prefix expression grammar over the catalog vocabulary, at ambient arity r:
//   atoms        catalog names; k-families take an integer suffix (phi_2, tau_3)
//   convolutions dir(f,g) unit(f,g) gcd(f,g) lcm(f,g) binom(f,g)
//   inverses     inv_dir(f) inv_unit(f) inv_gcd(f) inv_lcm(f) inv_binom(f)
//   convolutes   conv_dir(f) conv_unit(f) conv_gcd(f) conv_lcm(f) conv_binom(f)
//   lifting      lift(g1,..,gk)  of_gcd(g)  of_lcm(g)  embed(g)
//   pointwise    mul(f,g) add(f,g)   diagonal  diag(f)
// A bare name is an atom; name( starts an operator application ("gcd" the
// function vs "gcd(f,g)" the convolution).
FnR parse_function_expr(const std::string& text, int ambient_arity);

}  // namespace multfun
