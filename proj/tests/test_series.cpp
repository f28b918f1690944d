#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multfun/bell.hpp"
#include "multfun/catalog.hpp"
#include "multfun/convolution.hpp"
#include "multfun/euler_product.hpp"
#include "multfun/random_fn.hpp"
#include "multfun/zeta.hpp"

using namespace multfun;

namespace {

Real abs_err(const Real& a, const Real& b) { return abs(a - b); }

}  // namespace

TEST_CASE("bernoulli numbers") {
  const auto& B = bernoulli_even(8);
  CHECK(B[0] == rat(1));
  CHECK(B[1] == rat(1, 6));
  CHECK(B[2] == rat(-1, 30));
  CHECK(B[3] == rat(1, 42));
  CHECK(B[5] == rat(5, 66));
}

TEST_CASE("zeta at the classical points") {
  Real pi = pi_const();
  CHECK(abs_err(zeta_eval(Real(2)), pi * pi / 6) < Real("1e-48"));
  CHECK(abs_err(zeta_eval(Real(4)), pow(pi, 4) / 90) < Real("1e-48"));
  // Apery's constant, 40 digits
  CHECK(abs_err(zeta_eval(Real(3)), Real("1.202056903159594285399738161511449990765")) <
        Real("1e-38"));
  CHECK_THROWS_AS(zeta_eval(Real(1)), std::invalid_argument);
  // doubling the node count does not move the value (Euler-Maclaurin oracle)
  CHECK(abs_err(zeta_eval(Real("2.5"), 40), zeta_eval(Real("2.5"), 52)) < Real("1e-40"));
}

TEST_CASE("zeta derivative") {
  // reference values to 40 digits
  CHECK(abs_err(zeta_deriv(Real(2)), Real("-0.9375482543158437537025740945678649778979")) <
        Real("1e-36"));
  CHECK(abs_err(zeta_deriv(Real(3)), Real("-0.1981262428856368533306818215032857968755")) <
        Real("1e-36"));
  // finite-difference cross-check
  Real h("1e-20");
  Real fd = (zeta_eval(Real(2) + h, 55) - zeta_eval(Real(2) - h, 55)) / (2 * h);
  CHECK(abs_err(zeta_deriv(Real(2)), fd) < Real("1e-18"));
}

TEST_CASE("bell series of gcd matches its closed rational form") {
  FnR g = catalog::gcd_fn(2);
  const u64 p = 2;
  const int D = 6;
  BellSeries b = bell_series(g, p, D);
  CHECK(b.at({1, 1}) == 2);
  CHECK(b.at({0, 0}) == 1);
  // (1 - x1 x2) / ((1 - x1)(1 - x2)(1 - p x1 x2)): coefficient of x1^a x2^b
  // is gcd(p^a, p^b) = p^min(a,b); check every cell
  for (std::uint32_t a = 0; a <= D; ++a)
    for (std::uint32_t b2 = 0; b2 <= D; ++b2)
      CHECK(b.at({a, b2}) == rat_u64(ipow(p, std::min(a, b2))));
}

TEST_CASE("bell series basics") {
  FnR delta = identity_fn(2);
  BellSeries bd = bell_series(delta, 3, 4);
  Exps e{0, 0};
  CHECK(bd.at(e) == 1);
  CHECK(bd.at({1, 0}) == 0);
  CHECK(bd.at({2, 3}) == 0);

  BellSeries bid = bell_series(catalog::id1(), 3, 5);
  for (std::uint32_t k = 0; k <= 5; ++k) CHECK(bid.at({k}) == rat_u64(ipow(3, k)));

  CHECK_THROWS_AS(bell_series(random_general(1, 1), 2, 3), std::invalid_argument);
}

TEST_CASE("bell product rule") {
  // 1 * 1 gives tau: coefficients 1, 2, 3, ...
  BellSeries b1 = bell_series(one_fn(1), 2, 4);
  BellSeries prod = bell_multiply(b1, b1);
  for (std::uint32_t k = 0; k <= 4; ++k) CHECK(prod.at({k}) == rat_u64(k + 1));
  // mu * 1 = delta
  BellSeries bmu = bell_series(catalog::mobius1(), 2, 5);
  BellSeries bone = bell_series(one_fn(1), 2, 5);
  BellSeries bd = bell_multiply(bmu, bone);
  CHECK(bd.at({0}) == 1);
  for (std::uint32_t k = 1; k <= 5; ++k) CHECK(bd.at({k}) == 0);
  // delta is the multiplicative unit
  BellSeries bdelta = bell_series(identity_fn(1), 2, 5);
  BellSeries same = bell_multiply(bone, bdelta);
  CHECK(same.coef == bone.coef);
  // random multiplicative pairs at several primes and degree 6
  for (int i = 0; i < 10; ++i) {
    int r = 1 + i % 2;
    FnR f = random_multiplicative(r, 1000 + static_cast<u64>(i));
    FnR g = random_multiplicative(r, 2000 + static_cast<u64>(i));
    FnR c = convolve(ConvKind::dirichlet, f, g);
    for (u64 p : {2ull, 3ull, 5ull}) {
      BellSeries lhs = bell_series(c, p, 6);
      BellSeries rhs = bell_multiply(bell_series(f, p, 6), bell_series(g, p, 6));
      CHECK(lhs.coef == rhs.coef);
    }
  }
  CHECK_THROWS_AS(bell_multiply(bell_series(one_fn(1), 2, 3), bell_series(one_fn(1), 3, 3)),
                  std::invalid_argument);
}

TEST_CASE("unitary bell sum rule at positive degrees") {
  CHECK(unitary_bell_sum_check(one_fn(1), one_fn(1), 2, 3));
  CHECK(unitary_bell_sum_check(identity_fn(1), random_multiplicative_1var(3), 2, 5));
  CHECK(unitary_bell_sum_check(catalog::id1(), catalog::id1(), 3, 4));
  // (id x id)(9) enumerates unitary pairs (1,9),(9,1): 18
  FnR sq = convolve(ConvKind::unitary, catalog::id1(), catalog::id1());
  CHECK(sq({9}) == 18);
}

TEST_CASE("euler product: coprime pairs at (2,2) is zeta(2)^2/zeta(4) = 5/2") {
  EulerOptions opt;
  opt.prime_cutoff = 100000;
  opt.extract = {{Real(2), 2}, {Real(4), -1}};
  FnR vis = catalog::g_of_gcd(identity_fn(1), 2);  // indicator of gcd = 1
  auto res = euler_product_eval(vis, {Real(2), Real(2)}, opt);
  CHECK(abs_err(res.value, Real("2.5")) < Real("1e-20"));
}

TEST_CASE("euler product vs zeta closed forms") {
  Real z2 = zeta_eval(Real(2)), z3 = zeta_eval(Real(3)), z4 = zeta_eval(Real(4)),
       z5 = zeta_eval(Real(5));
  EulerOptions opt;
  opt.prime_cutoff = 100000;

  opt.extract = {{Real(2), 2}, {Real(3), 1}};
  auto gcd_res = euler_product_eval(catalog::gcd_fn(2), {Real(2), Real(2)}, opt);
  CHECK(abs_err(gcd_res.value, z2 * z2 * z3 / z4) < Real("1e-10"));

  opt.extract = {{Real(2), 2}, {Real(5), 1}};
  auto lcm_res = euler_product_eval(catalog::lcm_fn(2), {Real(3), Real(3)}, opt);
  CHECK(abs_err(lcm_res.value, z2 * z2 * z5 / z4) < Real("1e-10"));

  // s = gcd * 1_2 keeps local data through the convolution fast path
  FnR s_local = convolve(ConvKind::dirichlet, catalog::gcd_fn(2), one_fn(2));
  opt.extract = {{Real(2), 4}, {Real(3), 1}};
  auto s_res = euler_product_eval(s_local, {Real(2), Real(2)}, opt);
  CHECK(abs_err(s_res.value, pow(z2, 4) * z3 / z4) < Real("1e-10"));

  // c = phi(gcd .) * 1_2
  FnR c_local = convolve(ConvKind::dirichlet, catalog::g_of_gcd(catalog::euler_phi(), 2),
                         one_fn(2));
  opt.extract = {{Real(2), 4}, {Real(3), 1}, {Real(4), -2}};
  auto c_res = euler_product_eval(c_local, {Real(2), Real(2)}, opt);
  CHECK(abs_err(c_res.value, pow(z2, 4) * z3 / (z4 * z4)) < Real("1e-10"));
}

TEST_CASE("euler product rejects functions without local data") {
  EulerOptions opt;
  opt.prime_cutoff = 2000;
  CHECK_THROWS_AS(euler_product_eval(catalog::subgroup_count_fn(), {Real(2), Real(2)}, opt),
                  std::invalid_argument);
  // the local route for s agrees with its divisor-sum definition pointwise
  FnR s_local = convolve(ConvKind::dirichlet, catalog::gcd_fn(2), one_fn(2));
  FnR s_def = catalog::subgroup_count_fn();
  for_each_tuple(2, 16, [&](const Tuple& t) { CHECK(s_local(t) == s_def(t)); });
}

TEST_CASE("dirichlet partial sums") {
  FnR delta = identity_fn(2);
  CHECK(abs_err(dirichlet_partial_sum(delta, {Real(2), Real(2)}, 10), Real(1)) < Real("1e-50"));
  // partial sums approach the product from below for nonnegative functions
  FnR g = catalog::gcd_fn(2);
  Real p50 = dirichlet_partial_sum(g, {Real(2), Real(2)}, 50);
  Real p100 = dirichlet_partial_sum(g, {Real(2), Real(2)}, 100);
  EulerOptions opt;
  opt.prime_cutoff = 100000;
  opt.extract = {{Real(2), 2}, {Real(3), 1}};
  Real full = euler_product_eval(g, {Real(2), Real(2)}, opt).value;
  CHECK(p50 < p100);
  CHECK(p100 < full);
  CHECK(full - p100 < Real("0.05"));
}

TEST_CASE("bell series bridge to the euler product") {
  // prod over p <= P of f_(p)(p^-z1, p^-z2) equals the euler product at the same cutoff
  FnR g = catalog::gcd_fn(2);
  EulerOptions opt;
  opt.prime_cutoff = 200;
  opt.parallel = false;
  auto res = euler_product_eval(g, {Real(2), Real(2)}, opt);
  Real viabell = 1;
  for (u64 p : primes_up_to(200)) {
    BellSeries b = bell_series(g, p, 24);
    Real x = 1 / (Real(p) * Real(p));
    Real local = 0;
    for (std::uint32_t a = 24 + 1; a-- > 0;) {
      Real row = 0;
      for (std::uint32_t c = 24 + 1; c-- > 0;) row = row * x + to_real(b.at({a, c}));
      local = local * x + row;
    }
    viabell *= local;
  }
  CHECK(abs_err(res.value, viabell) < res.tail_estimate + Real("1e-25"));
}

TEST_CASE("monotone refinement stays within the reported tail estimate") {
  FnR g = catalog::gcd_fn(2);
  std::vector<Real> z{Real(2), Real(2)};
  EulerOptions o1, o2, o3;
  o1.prime_cutoff = 1000;
  o2.prime_cutoff = 10000;
  o3.prime_cutoff = 100000;
  auto r1 = euler_product_eval(g, z, o1);
  auto r2 = euler_product_eval(g, z, o2);
  auto r3 = euler_product_eval(g, z, o3);
  CHECK(abs_err(r1.value, r2.value) <= r1.tail_estimate);
  CHECK(abs_err(r2.value, r3.value) <= r2.tail_estimate);
}

TEST_CASE("divergent local sums are reported") {
  // n1 n2 at z = (1/2, 1/2): local terms grow with the degree
  FnR f = catalog::prod_fn(2);
  EulerOptions opt;
  opt.prime_cutoff = 50;
  opt.parallel = false;
  CHECK_THROWS_AS(euler_product_eval(f, {Real("0.5"), Real("0.5")}, opt), DivergenceError);
}

TEST_CASE("rho's two euler-product forms agree") {
  // closed local forms of the pairwise-coprime series at z = (2,2,2) and (3,2,2)
  auto form1 = [](const Real& x1, const Real& x2, const Real& x3) {
    return (1 - x1) * (1 - x2) * (1 - x3) + x1 * (1 - x2) * (1 - x3) + x2 * (1 - x1) * (1 - x3) +
           x3 * (1 - x1) * (1 - x2);
  };
  auto form2 = [](const Real& x1, const Real& x2, const Real& x3) {
    return 1 - (x1 * x2 + x1 * x3 + x2 * x3) + 2 * x1 * x2 * x3;
  };
  for (auto z : {std::array<int, 3>{2, 2, 2}, std::array<int, 3>{3, 2, 2}}) {
    Real p1 = 1, p2 = 1;
    for (u64 p : primes_up_to(100000)) {
      Real x1 = pow(Real(p), -z[0]), x2 = pow(Real(p), -z[1]), x3 = pow(Real(p), -z[2]);
      p1 *= form1(x1, x2, x3);
      p2 *= form2(x1, x2, x3);
    }
    CHECK(abs_err(p1, p2) < Real("1e-10"));
    // and the generic local-sum route, zeta factors extracted per variable,
    // lands on the same value
    EulerOptions opt;
    opt.prime_cutoff = 100000;
    for (int zi : z) opt.extract.push_back({Real(zi), 1});
    auto res = euler_product_eval(catalog::rho_fn(3),
                                  {Real(z[0]), Real(z[1]), Real(z[2])}, opt);
    Real zprod = 1;
    for (int zi : z) zprod *= zeta_eval(Real(zi));
    CHECK(abs_err(res.value, zprod * p1) < Real("1e-9"));
  }
}
