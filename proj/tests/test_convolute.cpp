#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "multfun/catalog.hpp"
#include "multfun/convolute.hpp"
#include "multfun/random_fn.hpp"
#include "oracles.hpp"

using namespace multfun;

TEST_CASE("convolute spec values") {
  FnR g2 = convolute(ConvoluteKind::dir, catalog::gcd_fn(2));
  CHECK(g2({4}) == 4);  // gcd(1,4) + gcd(2,2) + gcd(4,1)
  FnR philcm = convolute(ConvoluteKind::lcm, catalog::g_of_gcd(catalog::euler_phi(), 2));
  CHECK(philcm({4}) == 6);  // psi(4)
  // unit and gcd collapse agree at r = 2 but differ at r = 3
  FnR u3 = convolute(ConvoluteKind::unit, one_fn(3));
  FnR n3 = convolute(ConvoluteKind::gcd, one_fn(3));
  CHECK(u3({4}) == 3);
  CHECK(n3({4}) == 6);
  FnR u2 = convolute(ConvoluteKind::unit, one_fn(2));
  FnR n2 = convolute(ConvoluteKind::gcd, one_fn(2));
  for (u64 n = 1; n <= 60; ++n) CHECK(u2({n}) == n2({n}));
  // r = 1 passes through
  FnR idf = catalog::id1();
  CHECK(convolute(ConvoluteKind::dir, idf)({9}) == 9);
}

TEST_CASE("fast multiplicative convolute equals the definitional one") {
  for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                          ConvoluteKind::lcm, ConvoluteKind::binom}) {
    for (const FnR& f : {catalog::gcd_fn(2), catalog::lcm_fn(3), catalog::E_fn(2),
                         random_multiplicative(3, 77)}) {
      FnR fast = convolute(k, f);
      FnR defn = convolute_definitional(k, f);
      for (u64 n = 1; n <= 48; ++n) CHECK(fast({n}) == defn({n}));
    }
  }
}

TEST_CASE("counting functions, closed form vs enumeration") {
  CHECK(tau_r_closed(3)({4}) == 6);
  CHECK(m_r_closed(2)({4}) == 5);
  CHECK(n_r_closed(2)({4}) == 2);   // (1,4), (4,1)
  CHECK(n_r_closed(3)({4}) == 6);   // every composition of 4 into 3 parts has a 1
  CHECK(h_r_closed(3)({4}) == 3);
  CHECK(q_r_closed(3)({4}) == 9);
  for (int r : {2, 3, 4}) {
    FnR one = one_fn(r);
    std::vector<std::pair<FnR, FnR>> pairs = {
        {convolute_definitional(ConvoluteKind::dir, one), tau_r_closed(r)},
        {convolute_definitional(ConvoluteKind::unit, one), h_r_closed(r)},
        {convolute_definitional(ConvoluteKind::gcd, one), n_r_closed(r)},
        {convolute_definitional(ConvoluteKind::lcm, one), m_r_closed(r)},
        {convolute_definitional(ConvoluteKind::binom, one), q_r_closed(r)},
    };
    u64 limit = r == 4 ? 100 : 120;  // the r=4 lcm enumeration walks tau(n)^4 tuples
    for (auto& [enumr, closed] : pairs)
      for (u64 n = 1; n <= limit; ++n) CHECK(enumr({n}) == closed({n}));
  }
}

TEST_CASE("gcd-argument convolute identities") {
  // dir route at hand-checked instances
  auto c1 = check_dir_convolute_of_g_gcd(catalog::id1(), 2, 100);
  CHECK(c1.ok);
  auto c2 = check_dir_convolute_of_g_gcd(catalog::sigma_pow(0), 2, 100);
  CHECK(c2.ok);
  // the sigma_0 instance at n = 12: both routes give 8
  FnR lhs = convolute_definitional(ConvoluteKind::dir, catalog::g_of_gcd(catalog::tau1(), 2));
  CHECK(lhs({12}) == 8);
  // lcm route with g = lambda collapses to the constant 1
  FnR lam = convolute_definitional(ConvoluteKind::lcm, catalog::g_of_gcd(catalog::liouville(), 2));
  CHECK(lam({12}) == 1);
  for (u64 n = 1; n <= 60; ++n) CHECK(lam({n}) == 1);
  auto c3 = check_lcm_convolute_of_g_gcd(catalog::liouville(), 2, 100);
  CHECK(c3.ok);
  auto c4 = check_lcm_convolute_of_g_gcd(catalog::id1(), 3, 60);
  CHECK(c4.ok);
}

TEST_CASE("named convolutes") {
  FnR a = ramanujan_dir_fn(), b = ramanujan_unit_fn(), h = ramanujan_lcm_fn();
  CHECK(a({4}) == 2);
  CHECK(b({12}) == 0);
  CHECK(b({8}) == 1);
  CHECK(h({4}) == 2);
  CHECK(cyclic_diag_fn()({4}) == 10);
  CHECK(ell_r_fn(2)({4}) == 10);
  CHECK(parabolic_fn()({4}) == 3);
  CHECK(g_r_fn(2)({4}) == 4);

  FnR phi = catalog::euler_phi();
  for (u64 n = 1; n <= 2000; ++n) {
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    CHECK(a({n}) == (s * s == n ? rat_u64(s) : rat(0)));
    bool squarefull = true;
    for (auto& [p, e] : oracle::factorize(n))
      if (e < 2) squarefull = false;
    CHECK(b({n}) == (squarefull ? 1 : 0));
    CHECK(h({n}) == phi({n}));
  }
}

TEST_CASE("lcm convolute reduction through the diagonal") {
  // conv_lcm(f) = diag(f * 1_r) * mu, for a few functions; E through its
  // divisor-sum representation (the evaluators agree, see the catalog tests,
  // and the j-loop definition is hopeless at n^2-sized arguments)
  FnR mu = catalog::mobius1();
  for (const FnR& f : {catalog::gcd_fn(2), one_fn(2), catalog::E_representation(2)}) {
    FnR lhs = convolute(ConvoluteKind::lcm, f);
    FnR viadiag = convolve(
        ConvKind::dirichlet, diagonal(convolve(ConvKind::dirichlet, f, one_fn(f.arity()))), mu);
    for (u64 n = 1; n <= 200; ++n) CHECK(lhs({n}) == viadiag({n}));
  }
}

TEST_CASE("convolutes preserve multiplicativity") {
  // coprime argument pairs up to 10^3; A gets a local evaluator built from its
  // representation at prime powers so the products stay tractable
  FnR a_rep = catalog::A_representation(2);
  FnR a_local = FnR::from_local(
      2,
      [a_rep](u64 p, const Exps& e) {
        return a_rep({ipow(p, e[0]), ipow(p, e[1])});
      },
      FnClass::multiplicative, "A");
  std::vector<std::pair<u64, u64>> coprime_pairs;
  for (u64 m = 2; m <= 1000; m += 13)
    for (u64 n = m + 1; n <= 1000; n += 17)
      if (std::gcd(m, n) == 1) coprime_pairs.push_back({m, n});
  for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                          ConvoluteKind::lcm, ConvoluteKind::binom}) {
    for (const FnR& f : {catalog::gcd_fn(2), a_local}) {
      FnR c = convolute(k, f);
      for (auto [m, n] : coprime_pairs) CHECK(c({m * n}) == c({m}) * c({n}));
    }
  }
}

TEST_CASE("binomial convolute of a completely multiplicative function") {
  FnR f = catalog::prod_fn(2);
  FnR c = convolute(ConvoluteKind::binom, f);
  CHECK(c.fn_class() == FnClass::completely);
  for (u64 m = 1; m <= 40; ++m)
    for (u64 n = 1; n <= 40; ++n) CHECK(c({m * n}) == c({m}) * c({n}));
}

TEST_CASE("homomorphism laws") {
  FnR f = catalog::gcd_fn(2), g = catalog::lcm_fn(2);
  CHECK(homomorphism_check(ConvoluteKind::dir, f, g, 24));
  CHECK(homomorphism_check(ConvoluteKind::gcd, random_multiplicative(2, 51),
                           random_multiplicative(2, 52), 24));
  CHECK(homomorphism_check(ConvoluteKind::lcm, f, g, 24));
  CHECK(homomorphism_check(ConvoluteKind::unit, f, g, 24));
  CHECK(homomorphism_check(ConvoluteKind::binom, f, g, 24));
  // identity maps to identity
  for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                          ConvoluteKind::lcm, ConvoluteKind::binom}) {
    CHECK(homomorphism_check(k, identity_fn(2), random_multiplicative(2, 53), 24));
  }
}

TEST_CASE("embedding is a section of every convolute") {
  FnR f = random_general(1, 99);
  for (int r : {2, 3}) {
    FnR lift = embed_first(f, r);
    for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                            ConvoluteKind::lcm, ConvoluteKind::binom}) {
      FnR back = convolute_definitional(k, lift);
      for (u64 n = 1; n <= 60; ++n) CHECK(back({n}) == f({n}));
    }
  }
}

TEST_CASE("convolute against a fully naive enumeration oracle") {
  FnR f = catalog::gcd_fn(3);
  auto of = [&](const oracle::Tuple& t) { return f(t); };
  FnR cd = convolute(ConvoluteKind::dir, f);
  FnR cu = convolute(ConvoluteKind::unit, f);
  FnR cg = convolute(ConvoluteKind::gcd, f);
  for (u64 n = 1; n <= 40; ++n) {
    Rat sd(0), su(0), sg(0);
    oracle::Tuple cur;
    oracle::for_factorizations(n, 3, cur, [&](const oracle::Tuple& d) {
      sd += of(d);
      bool pairwise = true;
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
          if (std::gcd(d[i], d[j]) != 1) pairwise = false;
      if (pairwise) su += of(d);
      if (oracle::gcd_all(d) == 1) sg += of(d);
    });
    CHECK(cd({n}) == sd);
    CHECK(cu({n}) == su);
    CHECK(cg({n}) == sg);
  }
}
