#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multfun/catalog.hpp"
#include "multfun/convolution.hpp"
#include "multfun/random_fn.hpp"
#include "oracles.hpp"

using namespace multfun;

namespace {

oracle::Fn wrap(const FnR& f) {
  return [f](const oracle::Tuple& t) { return f(t); };
}

void check_against_oracle(ConvKind k, const FnR& f, const FnR& g, u64 box) {
  FnR fast = convolve(k, f, g);
  FnR defn = convolve_definitional(k, f, g);
  auto of = wrap(f);
  auto og = wrap(g);
  for_each_tuple(f.arity(), box, [&](const Tuple& t) {
    Rat expect;
    switch (k) {
      case ConvKind::dirichlet: expect = oracle::conv_dirichlet(of, og, t); break;
      case ConvKind::unitary: expect = oracle::conv_unitary(of, og, t); break;
      case ConvKind::gcd: expect = oracle::conv_gcd(of, og, t); break;
      case ConvKind::lcm: expect = oracle::conv_lcm(of, og, t); break;
      case ConvKind::binomial: expect = oracle::conv_binomial(of, og, t); break;
    }
    CHECK(fast(t) == expect);
    CHECK(defn(t) == expect);
  });
}

}  // namespace

TEST_CASE("spec values for the five kinds") {
  FnR one2 = one_fn(2);
  CHECK(convolve(ConvKind::dirichlet, one2, one2)({4, 6}) == 12);  // tau(4) tau(6)
  CHECK(convolve(ConvKind::unitary, one2, one2)({12, 9}) == 8);    // 2^{omega(12)+omega(9)}
  CHECK(convolve(ConvKind::gcd, one2, one2)({12, 9}) == 4);        // 2^{omega(108)}
  CHECK(convolve(ConvKind::lcm, one2, one2)({4, 2}) == 15);        // tau(16) tau(4)
  FnR one1 = one_fn(1);
  CHECK(convolve(ConvKind::binomial, one1, one1)({8}) == 8);  // 2^{Omega(8)}
}

TEST_CASE("fast (local) path equals the definitional path equals the naive oracle") {
  check_against_oracle(ConvKind::dirichlet, catalog::gcd_fn(2), catalog::lcm_fn(2), 12);
  check_against_oracle(ConvKind::unitary, catalog::gcd_fn(2), catalog::rho_fn(2), 12);
  check_against_oracle(ConvKind::gcd, catalog::lcm_fn(2), catalog::lcm_fn(2), 12);
  check_against_oracle(ConvKind::lcm, catalog::gcd_fn(2), catalog::gcd_fn(2), 10);
  check_against_oracle(ConvKind::binomial, catalog::gcd_fn(2), catalog::lcm_fn(2), 10);
  check_against_oracle(ConvKind::dirichlet, random_multiplicative(2, 7), random_multiplicative(2, 8),
                       10);
  check_against_oracle(ConvKind::lcm, random_multiplicative(2, 9), random_multiplicative(2, 10), 8);
}

TEST_CASE("identity element") {
  FnR d2 = identity_fn(2);
  CHECK(d2({1, 1}) == 1);
  CHECK(d2({2, 1}) == 0);
  for (ConvKind k : {ConvKind::dirichlet, ConvKind::unitary, ConvKind::gcd, ConvKind::lcm,
                     ConvKind::binomial}) {
    FnR f = catalog::sigma_r_fn(2);
    FnR idf = convolve(k, identity_fn(2), f);
    for_each_tuple(2, 20, [&](const Tuple& t) { CHECK(idf(t) == f(t)); });
  }
}

TEST_CASE("dirichlet inverse of one is mu_r") {
  FnR inv = inverse(ConvKind::dirichlet, one_fn(2));
  FnR mu = mobius_fn(ConvKind::dirichlet, 2);
  CHECK(inv({6, 2}) == -1);  // mu(6) mu(2)
  for_each_tuple(2, 16, [&](const Tuple& t) { CHECK(inv(t) == mu(t)); });
}

TEST_CASE("gcd-kind inverse of a multiplicative f is (-1)^omega(prod) f") {
  FnR g = catalog::gcd_fn(2);
  FnR inv = inverse(ConvKind::gcd, g);
  CHECK(inv({2, 2}) == -2);
  FnR mug = mobius_fn(ConvKind::gcd, 2);
  for_each_tuple(2, 16, [&](const Tuple& t) { CHECK(inv(t) == mug(t) * g(t)); });
}

TEST_CASE("lcm inverse of one matches the prime-power formula") {
  for (int r : {1, 2, 3}) {
    FnR inv = inverse(ConvKind::lcm, one_fn(r));
    FnR closed = mobius_fn(ConvKind::lcm, r);
    for (u64 p : {2ull, 3ull, 5ull}) {
      Exps e(static_cast<size_t>(r), 0);
      while (true) {
        Tuple t(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) t[static_cast<size_t>(i)] = ipow(p, e[static_cast<size_t>(i)]);
        CHECK(inv(t) == closed(t));
        size_t i = 0;
        while (i < e.size() && e[i] == 4) e[i++] = 0;
        if (i == e.size()) break;
        ++e[i];
      }
    }
  }
  // mu_lcm at a single prime: -1/2
  FnR m1 = mobius_fn(ConvKind::lcm, 1);
  CHECK(m1({2}) == rat(-1, 2));
  CHECK(m1({3}) == rat(-1, 2));
  // and the convolution really inverts
  FnR inv2 = inverse(ConvKind::lcm, one_fn(2));
  FnR prod = convolve_definitional(ConvKind::lcm, one_fn(2), inv2);
  for_each_tuple(2, 10, [&](const Tuple& t) { CHECK(prod(t) == identity_fn(2)(t)); });
}

TEST_CASE("inverse of a completely multiplicative f is mu_r f") {
  FnR f = catalog::prod_fn(2);
  FnR inv = inverse(ConvKind::dirichlet, f);
  FnR mu = mobius_fn(ConvKind::dirichlet, 2);
  for_each_tuple(2, 20, [&](const Tuple& t) { CHECK(inv(t) == mu(t) * f(t)); });
}

TEST_CASE("(f*f) = f tau tau for completely multiplicative f") {
  FnR f = catalog::prod_fn(2);
  FnR ff = convolve(ConvKind::dirichlet, f, f);
  FnR tau = catalog::tau1();
  for_each_tuple(2, 20, [&](const Tuple& t) {
    CHECK(ff(t) == f(t) * tau({t[0]}) * tau({t[1]}));
  });
}

TEST_CASE("unitary square of a firmly multiplicative f") {
  FnR f = from_one_variable_product({catalog::sigma1(), catalog::euler_phi()});
  FnR ff = convolve(ConvKind::unitary, f, f);
  for_each_tuple(2, 16, [&](const Tuple& t) {
    u64 w = factorize(t[0]).omega() + factorize(t[1]).omega();
    CHECK(ff(t) == f(t) * rat_u64(u64(1) << w));
  });
}

TEST_CASE("non-invertible input reports the witness") {
  // f(1,1) = 0
  FnR z(2, [](const Tuple&) { return rat(0); }, FnClass::general, "zero");
  CHECK_THROWS_AS(inverse(ConvKind::dirichlet, z), NotInvertibleError);
  try {
    inverse(ConvKind::unitary, z);
    CHECK(false);
  } catch (const NotInvertibleError& e) {
    CHECK(e.witness == Tuple{1, 1});
  }
  // lcm kind: (f * 1_r) vanishing at some tuple is reported lazily
  FnR muf = from_one_variable_product({catalog::mobius1()});
  FnR inv = inverse(ConvKind::lcm, muf);
  CHECK_THROWS_AS(inv({4}), NotInvertibleError);  // (mu * 1)(4) = 0
}

TEST_CASE("lcm via the dirichlet route") {
  FnR one2 = one_fn(2);
  CHECK(lcm_via_dirichlet(one2, one2)({4, 2}) == 15);
  FnR g = random_general(2, 42);
  FnR viad = lcm_via_dirichlet(identity_fn(2), g);
  for_each_tuple(2, 12, [&](const Tuple& t) { CHECK(viad(t) == g(t)); });
  // von Sterneck: sum over lcm(d, e) = n of phi(d) phi(e) = phi_2(n)
  FnR phi = catalog::euler_phi();
  FnR l = lcm_via_dirichlet(phi, phi);
  CHECK(l({12}) == 96);
  FnR j2 = catalog::jordan_phi(2);
  for (u64 n = 1; n <= 60; ++n) CHECK(l({n}) == j2({n}));
}

TEST_CASE("binomial isomorphism") {
  CHECK(binomial_iso_check(one_fn(1), one_fn(1), 16));
  CHECK(binomial_iso_check(catalog::id1(), catalog::liouville(), 16));
  CHECK(binomial_iso_check(random_multiplicative(2, 5), random_multiplicative(2, 6), 12));
}

TEST_CASE("algebra axioms on random functions, all kinds") {
  for (int i = 0; i < 5; ++i) {
    FnR f = random_general(2, 900 + static_cast<u64>(3 * i));
    FnR g = random_general(2, 901 + static_cast<u64>(3 * i));
    FnR h = random_general(2, 902 + static_cast<u64>(3 * i));
    for (ConvKind k : {ConvKind::dirichlet, ConvKind::unitary, ConvKind::gcd, ConvKind::lcm,
                       ConvKind::binomial}) {
      FnR fg = convolve_definitional(k, f, g);
      FnR gf = convolve_definitional(k, g, f);
      FnR fg_h = convolve_definitional(k, fg, h);
      FnR f_gh = convolve_definitional(k, f, convolve_definitional(k, g, h));
      for_each_tuple(2, 10, [&](const Tuple& t) {
        CHECK(fg(t) == gf(t));
        CHECK(fg_h(t) == f_gh(t));
      });
      if (k != ConvKind::lcm) {
        FnR lhs = convolve_definitional(k, f, pointwise_add(g, h));
        FnR rhs = pointwise_add(convolve_definitional(k, f, g), convolve_definitional(k, f, h));
        for_each_tuple(2, 10, [&](const Tuple& t) { CHECK(lhs(t) == rhs(t)); });
      }
    }
  }
}

TEST_CASE("dirichlet round-trips for random invertible functions") {
  for (int i = 0; i < 8; ++i) {
    FnR f = random_general(2, 777 + static_cast<u64>(i));
    FnR fi = inverse(ConvKind::dirichlet, f);
    FnR prod = convolve_definitional(ConvKind::dirichlet, f, fi);
    FnR d = identity_fn(2);
    for_each_tuple(2, 12, [&](const Tuple& t) { CHECK(prod(t) == d(t)); });
  }
}

TEST_CASE("round-trips for the other kinds") {
  FnR d = identity_fn(2);
  for (int i = 0; i < 3; ++i) {
    FnR f = random_general(2, 888 + static_cast<u64>(i));
    for (ConvKind k : {ConvKind::unitary, ConvKind::gcd, ConvKind::binomial}) {
      FnR prod = convolve_definitional(k, f, inverse(k, f));
      for_each_tuple(2, 10, [&](const Tuple& t) { CHECK(prod(t) == d(t)); });
    }
    // the lcm kind needs (f * 1_r) nonzero; positive values guarantee that
    FnR g = random_general(2, 999 + static_cast<u64>(i), 1, 9);
    FnR prod = convolve_definitional(ConvKind::lcm, g, inverse(ConvKind::lcm, g));
    for_each_tuple(2, 10, [&](const Tuple& t) { CHECK(prod(t) == d(t)); });
  }
}

TEST_CASE("group closure tags") {
  FnR f = from_one_variable_product({catalog::tau1(), catalog::sigma1()});
  FnR g = from_one_variable_product({catalog::euler_phi(), catalog::dedekind_psi()});
  CHECK(convolve(ConvKind::dirichlet, f, g).fn_class() == FnClass::firmly);
  CHECK(convolve(ConvKind::unitary, f, g).fn_class() == FnClass::firmly);
  CHECK(convolve(ConvKind::binomial, f, g).fn_class() == FnClass::firmly);
  CHECK(at_least_multiplicative(convolve(ConvKind::gcd, f, g).fn_class()));
  // and the gcd convolution of two multiplicative functions is multiplicative in fact
  FnR h = convolve(ConvKind::gcd, catalog::gcd_fn(2), catalog::lcm_fn(2));
  CHECK(check_class(h, 10).is_multiplicative());
}

TEST_CASE("closure classes hold functionally, not only as tags") {
  FnR f = from_one_variable_product({catalog::tau1(), catalog::sigma1()});
  FnR g = from_one_variable_product({catalog::euler_phi(), catalog::dedekind_psi()});
  CHECK(check_class(convolve(ConvKind::dirichlet, f, g), 10).is_firmly());
  CHECK(check_class(convolve(ConvKind::unitary, f, g), 10).is_firmly());
  CHECK(check_class(convolve(ConvKind::binomial, f, g), 10).is_firmly());
  FnR cm = catalog::prod_fn(2);
  CHECK(check_class(convolve(ConvKind::binomial, cm, cm), 10).is_completely());
}

TEST_CASE("one gcd-convolved with one is not firmly multiplicative") {
  FnR h = convolve(ConvKind::gcd, one_fn(2), one_fn(2));
  auto rep = check_class(h, 8);
  CHECK(rep.is_multiplicative());
  CHECK_FALSE(rep.is_firmly());  // 2^{omega(n1 n2)} does not split over components
}
