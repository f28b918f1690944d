#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include "multfun/catalog.hpp"
#include "multfun/convolution.hpp"
#include "oracles.hpp"

using namespace multfun;

TEST_CASE("eval_multiplicative through local factors") {
  FnR g = catalog::gcd_fn(2);
  CHECK(g({1, 1}) == 1);
  CHECK(g({12, 18}) == 6);
  FnR l = catalog::lcm_fn(2);
  CHECK(l({4, 6}) == 12);
  CHECK_THROWS_AS(g({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("from_one_variable_product values and tags") {
  FnR ts = from_one_variable_product({catalog::tau1(), catalog::sigma1()});
  CHECK(ts({4, 4}) == 21);  // tau(4) sigma(4) = 3 * 7
  CHECK(ts.fn_class() == FnClass::firmly);
  FnR il = from_one_variable_product({catalog::id1(), catalog::liouville()});
  CHECK(il({6, 4}) == 6);  // 6 * lambda(4) = 6
  CHECK(il.fn_class() == FnClass::completely);
  // value at the all-ones tuple is the product of the g_i(1)
  FnR mix = from_one_variable_product({catalog::sigma1(), catalog::euler_phi(), catalog::tau1()});
  CHECK(mix({1, 1, 1}) == 1);
}

TEST_CASE("check_class on the standard examples") {
  auto rep = check_class(catalog::gcd_fn(2), 12);
  CHECK(rep.is_multiplicative());
  CHECK_FALSE(rep.is_firmly());
  CHECK_FALSE(rep.is_completely());

  auto prod = check_class(catalog::prod_fn(2), 10);
  CHECK(prod.is_completely());

  FnR tt = from_one_variable_product({catalog::tau1(), catalog::tau1()});
  auto rtt = check_class(tt, 10);
  CHECK(rtt.is_firmly());
  CHECK_FALSE(rtt.is_completely());

  CHECK_THROWS_AS(check_class(catalog::gcd_fn(2), 1), std::invalid_argument);
}

TEST_CASE("check_class(gcd) stays multiplicative through box 30") {
  auto rep = check_class(catalog::gcd_fn(2), 30);
  CHECK(rep.is_multiplicative());
}

TEST_CASE("diagonal") {
  FnR dg = diagonal(catalog::gcd_fn(2));
  CHECK(dg({7}) == 7);  // gcd(n, n) = n
  FnR ds = diagonal(catalog::subgroup_count_fn());
  CHECK(ds({4}) == 15);  // s(4, 4)
  FnR dc = diagonal(catalog::cyclic_count_fn(2));
  CHECK(dc({4}) == 10);  // c(4, 4)
}

TEST_CASE("local evaluation equals definitional evaluation on a box") {
  // multiplicative reconstruction: the local route must match plain definitions
  FnR gcd2 = catalog::gcd_fn(2);
  FnR lcm2f = catalog::lcm_fn(2);
  FnR rho = catalog::rho_fn(2);
  for_each_tuple(2, 30, [&](const Tuple& t) {
    CHECK(gcd2(t) == rat_u64(std::gcd(t[0], t[1])));
    CHECK(lcm2f(t) == rat_u64(t[0] / std::gcd(t[0], t[1]) * t[1]));
    bool copr = std::gcd(t[0], t[1]) == 1;
    CHECK(rho(t) == (copr ? 1 : 0));
  });
}

TEST_CASE("firmly multiplicative functions factor through their margins") {
  // f(n1, n2) = f(n1, 1) f(1, n2) on the box (Prop-style recovery)
  std::vector<FnR> firmlies = {
      from_one_variable_product({catalog::tau1(), catalog::sigma1()}),
      from_one_variable_product({catalog::euler_phi(), catalog::dedekind_psi()}),
      mobius_fn(ConvKind::dirichlet, 2),
  };
  for (const auto& f : firmlies) {
    for_each_tuple(2, 30, [&](const Tuple& t) {
      CHECK(f(t) == f({t[0], 1}) * f({1, t[1]}));
    });
  }
}

TEST_CASE("shared evaluators are safe across threads") {
  FnR f = convolve(ConvKind::dirichlet, catalog::gcd_fn(2), catalog::lcm_fn(2)).memoized();
  Rat expected = f({24, 36});
  std::vector<std::thread> ts;
  std::atomic<int> bad{0};
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&] {
      for (u64 n = 1; n <= 40; ++n)
        if (f({24, 36}) != expected || f({n, n + 1}) != f({n, n + 1})) ++bad;
    });
  for (auto& th : ts) th.join();
  CHECK(bad == 0);
}

TEST_CASE("class tags never replace computation: tagged functions satisfy their class") {
  for (const auto& f : {catalog::gcd_fn(2), catalog::rho_fn(2), catalog::E_fn(2),
                        catalog::A_fn(2), catalog::sigma_r_fn(2)}) {
    auto rep = check_class(f, 8);
    CHECK(rep.is_multiplicative());
  }
}
