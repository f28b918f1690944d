#include "multfun/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multfun/asymptotics.hpp"
#include "multfun/bell.hpp"
#include "multfun/catalog.hpp"
#include "multfun/convolute.hpp"
#include "multfun/expr.hpp"
#include "multfun/random_fn.hpp"
#include "multfun/zeta.hpp"

namespace multfun::cli {

using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string format = "json";
  int precision = 15;
  int threads = 0;
  u64 primes = 100000;
  int degree = 40;
  u64 box = 20;
};

std::string tuple_str(const Tuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double d = std::stod(item);  // allow 1e6 style
    out.push_back(static_cast<u64>(d));
  }
  return out;
}

std::vector<Real> parse_real_list(const std::string& text) {
  std::vector<Real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Real(item));
  return out;
}

json ep_json(const EulerProductResult& r, int precision) {
  return json{{"value", real_str(r.value, precision)},
              {"cutoff", r.prime_cutoff},
              {"local_degree", r.local_degree},
              {"tail_estimate", real_str(r.tail_estimate, 3)}};
}

// ---------- the identity ledger ----------

bool box_equal(const FnR& a, const FnR& b, int r, u64 box, std::string* cex) {
  bool ok = true;
  for_each_tuple(r, box, [&](const Tuple& t) {
    if (!ok) return;
    if (a(t) != b(t)) {
      ok = false;
      if (cex) *cex = tuple_str(t) + ": " + rat_str(a(t)) + " != " + rat_str(b(t));
    }
  });
  return ok;
}

bool fn1_equal(const FnR& a, const FnR& b, u64 limit, std::string* cex) {
  for (u64 n = 1; n <= limit; ++n) {
    if (a({n}) != b({n})) {
      if (cex) *cex = "n=" + std::to_string(n) + ": " + rat_str(a({n})) + " != " + rat_str(b({n}));
      return false;
    }
  }
  return true;
}

VerifyOutcome outcome_from(bool pass, const std::string& cex) {
  VerifyOutcome o;
  o.pass = pass;
  if (!pass) o.counterexample = cex;
  return o;
}

VerifyOutcome verify_rho_representation(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::rho_fn(2), catalog::rho_representation(2), 2, box, &cex);
  if (ok) ok = box_equal(catalog::rho_fn(3), catalog::rho_representation(3), 3,
                         std::min<u64>(box, 12), &cex);
  return outcome_from(ok, cex);
}

VerifyOutcome verify_rho_mobius_sum(u64 box) {
  // sum_{d_i | n_i} rho(d) = tau(n1...nr)
  std::string cex;
  for (int r : {2, 3}) {
    FnR lhs = convolve_definitional(ConvKind::dirichlet, catalog::rho_fn(r), one_fn(r));
    FnR tau = catalog::tau1();
    FnR rhs(
        r,
        [tau](const Tuple& t) {
          // tau of the product via summed exponents
          std::map<u64, std::uint32_t> exps;
          for (u64 x : t)
            for (const auto& pp : factorize(x).factors) exps[pp.p] += pp.e;
          Rat v(1);
          for (const auto& [p, e] : exps) v *= rat(static_cast<long>(e) + 1);
          return v;
        },
        FnClass::multiplicative, "tau_prod");
    u64 b = r == 2 ? box : std::min<u64>(box, 12);
    if (!box_equal(lhs, rhs, r, b, &cex)) return outcome_from(false, cex);
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_sigma_r_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::sigma_r_fn(2), catalog::sigma_r_representation(2), 2, box, &cex);
  if (ok) ok = box_equal(catalog::sigma_r_fn(3), catalog::sigma_r_representation(3), 3,
                         std::min<u64>(box, 12), &cex);
  return outcome_from(ok, cex);
}

VerifyOutcome verify_s_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::subgroup_count_fn(), catalog::sigma_r_fn(2), 2, box, &cex);
  return outcome_from(ok, cex);
}

// independent group-theory route: cyclic subgroup count through element orders
Rat cyclic_count_orders(const Tuple& t) {
  u64 n = lcm_list(t);
  Rat acc(0);
  FnR phi = catalog::euler_phi();
  for (u64 d : divisors(n)) {
    // elements of order exactly d, by Mobius inversion over gcd counts
    long long cnt = 0;
    for (u64 e : divisors(d)) {
      auto f = factorize(d / e);
      bool sqfree = true;
      for (const auto& pp : f.factors)
        if (pp.e > 1) sqfree = false;
      if (!sqfree) continue;
      long long mu = f.omega() % 2 ? -1 : 1;
      long long gprod = 1;
      for (u64 x : t) gprod *= static_cast<long long>(std::gcd(e, x));
      cnt += mu * gprod;
    }
    acc += rat(static_cast<long>(cnt)) / phi({d});
  }
  return acc;
}

VerifyOutcome verify_c_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::cyclic_count_fn(2), catalog::cyclic_count_gcd_form(), 2, box, &cex);
  if (ok) {
    FnR orders(3, cyclic_count_orders, FnClass::general, "c_orders");
    ok = box_equal(catalog::cyclic_count_fn(3), orders, 3, std::min<u64>(box, 12), &cex);
  }
  return outcome_from(ok, cex);
}

VerifyOutcome verify_E_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::E_fn(2), catalog::E_representation(2), 2, box, &cex);
  if (ok)
    ok = box_equal(catalog::E_fn(3), catalog::E_representation(3), 3, std::min<u64>(box, 12),
                   &cex);
  return outcome_from(ok, cex);
}

VerifyOutcome verify_A_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::A_fn(2), catalog::A_representation(2), 2, box, &cex);
  if (ok)
    ok = box_equal(catalog::A_fn(3), catalog::A_representation(3), 3, std::min<u64>(box, 12),
                   &cex);
  return outcome_from(ok, cex);
}

VerifyOutcome verify_ramanujan_two_route(u64 box) {
  std::string cex;
  bool ok = box_equal(catalog::ramanujan_fn(), catalog::ramanujan_fn_representation(), 2, box,
                      &cex);
  return outcome_from(ok, cex);
}

VerifyOutcome verify_lcm_via_dirichlet(u64 box) {
  std::string cex;
  for (auto [f, g] : {std::pair{one_fn(2), one_fn(2)},
                      std::pair{catalog::gcd_fn(2), catalog::lcm_fn(2)},
                      std::pair{random_multiplicative(2, 11), random_general(2, 12)}}) {
    FnR direct = convolve_definitional(ConvKind::lcm, f, g);
    FnR routed = lcm_via_dirichlet(f, g);
    if (!box_equal(direct, routed, 2, box, &cex)) return outcome_from(false, cex);
  }
  // one-variable von Sterneck instance
  FnR phi = catalog::euler_phi();
  FnR lhs = convolve_definitional(ConvKind::lcm, phi, phi);
  FnR rhs = catalog::jordan_phi(2);
  std::string c1;
  if (!fn1_equal(lhs, rhs, std::min<u64>(box * 3, 60), &c1)) return outcome_from(false, c1);
  return outcome_from(true, "");
}

VerifyOutcome verify_mu_lcm_prime_powers(u64) {
  // computed lcm inverse of 1_r against the closed prime-power formula
  for (int r : {1, 2, 3}) {
    FnR inv = inverse(ConvKind::lcm, one_fn(r));
    FnR closed = mobius_fn(ConvKind::lcm, r);
    for (u64 p : {2ull, 3ull, 5ull}) {
      Exps e(static_cast<size_t>(r), 0);
      while (true) {
        Tuple t(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) t[static_cast<size_t>(i)] = ipow(p, e[static_cast<size_t>(i)]);
        if (inv(t) != closed(t))
          return outcome_from(false, tuple_str(t) + ": " + rat_str(inv(t)) +
                                         " != " + rat_str(closed(t)));
        size_t i = 0;
        while (i < e.size() && e[i] == 4) e[i++] = 0;
        if (i == e.size()) break;
        ++e[i];
      }
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_binomial_isomorphism(u64 box) {
  struct Case {
    FnR f, g;
  };
  std::vector<Case> cases{{one_fn(1), one_fn(1)},
                          {catalog::id1(), catalog::liouville()},
                          {random_multiplicative(1, 21), random_multiplicative(1, 22)},
                          {random_multiplicative(2, 23), random_multiplicative(2, 24)}};
  for (auto& c : cases) {
    if (!binomial_iso_check(c.f, c.g, box))
      return outcome_from(false, "pair " + c.f.name() + ", " + c.g.name());
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_count_functions(u64 limit) {
  for (int r : {2, 3, 4}) {
    FnR one = one_fn(r);
    std::vector<std::pair<FnR, FnR>> pairs = {
        {convolute_definitional(ConvoluteKind::dir, one), tau_r_closed(r)},
        {convolute_definitional(ConvoluteKind::unit, one), h_r_closed(r)},
        {convolute_definitional(ConvoluteKind::gcd, one), n_r_closed(r)},
        {convolute_definitional(ConvoluteKind::lcm, one), m_r_closed(r)},
        {convolute_definitional(ConvoluteKind::binom, one), q_r_closed(r)},
    };
    // M_r also as sum_{ab=n} mu(a) tau(b)^r
    FnR mu = catalog::mobius1();
    FnR tau = catalog::tau1();
    FnR taur(
        1, [tau, r](const Tuple& t) { return rat_pow(tau(t), r); }, FnClass::multiplicative,
        "tau^r");
    pairs.push_back({convolve_definitional(ConvKind::dirichlet, mu, taur), m_r_closed(r)});
    for (auto& [a, b] : pairs) {
      std::string cex;
      if (!fn1_equal(a, b, limit, &cex))
        return outcome_from(false, "r=" + std::to_string(r) + " " + a.name() + ": " + cex);
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_gcd_convolute_identities(u64 limit) {
  // Prop 10, both routes, g in {id, tau (k=0 power), lambda, sigma}
  for (int r : {2, 3}) {
    for (const FnR& g : {catalog::id1(), catalog::tau1(), catalog::liouville(),
                         catalog::sigma1()}) {
      auto dirc = check_dir_convolute_of_g_gcd(g, r, limit);
      if (!dirc.ok)
        return outcome_from(false, "dir route, g=" + g.name() + ", r=" + std::to_string(r) +
                                       ", n=" + std::to_string(dirc.counterexample));
      auto lcmc = check_lcm_convolute_of_g_gcd(g, r, limit);
      if (!lcmc.ok)
        return outcome_from(false, "lcm route, g=" + g.name() + ", r=" + std::to_string(r) +
                                       ", n=" + std::to_string(lcmc.counterexample));
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_lcm_corollaries(u64 limit) {
  FnR phi = catalog::euler_phi();
  FnR tau = catalog::tau1();
  FnR mu = catalog::mobius1();
  FnR psi = catalog::dedekind_psi();
  FnR sigma = catalog::sigma1();
  FnR beta = catalog::beta_alt();
  FnR lambda = catalog::liouville();

  auto lcm_conv_of = [&](const FnR& g, int r) {
    return convolute_definitional(ConvoluteKind::lcm, catalog::g_of_gcd(g, r));
  };
  std::string cex;
  // 1) sum_{lcm=n} gcd = phi * M_r   (r = 2, 3)
  for (int r : {2, 3}) {
    FnR rhs = convolve(ConvKind::dirichlet, phi, m_r_closed(r));
    u64 lim = r == 2 ? limit : std::min<u64>(limit, 120);
    if (!fn1_equal(lcm_conv_of(catalog::id1(), r), rhs, lim, &cex))
      return outcome_from(false, "gcd sum, r=" + std::to_string(r) + ": " + cex);
  }
  // 2) sum_{lcm=n} tau(gcd) = tau(n)^r
  for (int r : {2, 3}) {
    FnR rhs(
        1, [tau, r](const Tuple& t) { return rat_pow(tau(t), r); }, FnClass::multiplicative,
        "tau^r");
    u64 lim = r == 2 ? limit : std::min<u64>(limit, 120);
    if (!fn1_equal(lcm_conv_of(tau, r), rhs, lim, &cex))
      return outcome_from(false, "tau(gcd), r=" + std::to_string(r) + ": " + cex);
  }
  // 3) phi(gcd) -> psi
  if (!fn1_equal(lcm_conv_of(phi, 2), psi, limit, &cex))
    return outcome_from(false, "phi(gcd): " + cex);
  // 4) sigma(gcd) -> tau * psi = phi * tau^2
  FnR rhs4a = convolve(ConvKind::dirichlet, tau, psi);
  FnR tau2(
      1, [tau](const Tuple& t) -> Rat { return Rat(tau(t) * tau(t)); }, FnClass::multiplicative,
      "tau^2");
  FnR rhs4b = convolve(ConvKind::dirichlet, phi, tau2);
  if (!fn1_equal(lcm_conv_of(sigma, 2), rhs4a, limit, &cex))
    return outcome_from(false, "sigma(gcd) vs tau*psi: " + cex);
  if (!fn1_equal(rhs4a, rhs4b, limit, &cex))
    return outcome_from(false, "tau*psi vs phi*tau^2: " + cex);
  // 5) beta(gcd) -> sigma
  if (!fn1_equal(lcm_conv_of(beta, 2), sigma, limit, &cex))
    return outcome_from(false, "beta(gcd): " + cex);
  // 6) mu(gcd) -> mu^2
  FnR mu2(
      1, [mu](const Tuple& t) -> Rat { return Rat(mu(t) * mu(t)); }, FnClass::multiplicative,
      "mu^2");
  if (!fn1_equal(lcm_conv_of(mu, 2), mu2, limit, &cex))
    return outcome_from(false, "mu(gcd): " + cex);
  // 7) lambda(gcd) -> 1
  if (!fn1_equal(lcm_conv_of(lambda, 2), one_fn(1), limit, &cex))
    return outcome_from(false, "lambda(gcd): " + cex);
  return outcome_from(true, "");
}

VerifyOutcome verify_ramanujan_dir_convolute(u64 limit) {
  FnR a = ramanujan_dir_fn();
  for (u64 n = 1; n <= limit; ++n) {
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    Rat expect_a = (s * s == n) ? rat_u64(s) : rat(0);
    if (a({n}) != expect_a)
      return outcome_from(false, "a(" + std::to_string(n) + ") = " + rat_str(a({n})));
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_ramanujan_unit_convolute(u64 limit) {
  FnR b = ramanujan_unit_fn();
  for (u64 n = 1; n <= limit; ++n) {
    bool squarefull = true;
    for (const auto& pp : factorize(n).factors)
      if (pp.e < 2) squarefull = false;
    if (b({n}) != (squarefull ? rat(1) : rat(0)))
      return outcome_from(false, "b(" + std::to_string(n) + ") = " + rat_str(b({n})));
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_ramanujan_lcm_convolute(u64 limit) {
  FnR h = ramanujan_lcm_fn();
  FnR phi = catalog::euler_phi();
  for (u64 n = 1; n <= limit; ++n) {
    if (h({n}) != phi({n}))
      return outcome_from(false, "h(" + std::to_string(n) + ") = " + rat_str(h({n})));
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_ramanujan_convolutes(u64 limit) {
  for (auto fn : {verify_ramanujan_dir_convolute, verify_ramanujan_unit_convolute,
                  verify_ramanujan_lcm_convolute}) {
    auto o = fn(limit);
    if (!o.pass) return o;
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_homomorphisms(u64 limit) {
  for (int i = 0; i < 10; ++i) {
    FnR f = random_multiplicative(2, 100 + static_cast<u64>(i));
    FnR g = random_multiplicative(2, 200 + static_cast<u64>(i));
    for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                            ConvoluteKind::lcm, ConvoluteKind::binom}) {
      u64 cex = 0;
      if (!homomorphism_check(k, f, g, limit, &cex))
        return outcome_from(false, std::string(convolute_kind_name(k)) + " pair " +
                                       std::to_string(i) + " at n=" + std::to_string(cex));
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_unitary_bell_sum(u64) {
  for (auto [f, g] :
       {std::pair{one_fn(1), one_fn(1)}, std::pair{catalog::id1(), catalog::id1()},
        std::pair{identity_fn(1), random_multiplicative_1var(31)},
        std::pair{random_multiplicative_1var(32), random_multiplicative_1var(33)}}) {
    for (u64 p : {2ull, 3ull}) {
      if (!unitary_bell_sum_check(f, g, p, 6))
        return outcome_from(false, f.name() + " x " + g.name() + " at p=" + std::to_string(p));
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_bell_product_rule(u64) {
  for (int i = 0; i < 10; ++i) {
    int r = 1 + i % 3;
    FnR f = random_multiplicative(r, 300 + static_cast<u64>(i));
    FnR g = random_multiplicative(r, 400 + static_cast<u64>(i));
    FnR conv = convolve(ConvKind::dirichlet, f, g);
    for (u64 p : {2ull, 3ull, 5ull}) {
      int deg = r == 1 ? 6 : (r == 2 ? 6 : 4);
      BellSeries lhs = bell_series(conv, p, deg);
      BellSeries rhs = bell_multiply(bell_series(f, p, deg), bell_series(g, p, deg));
      if (lhs.coef != rhs.coef)
        return outcome_from(false, "pair " + std::to_string(i) + " at p=" + std::to_string(p));
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_algebra_axioms(u64 box) {
  // commutativity / associativity / identity on random triples, plus
  // distributivity over pointwise addition for the divisor-type kinds
  int r = 2;
  std::string cex;
  for (int i = 0; i < 30; ++i) {
    FnR f = random_general(r, 500 + static_cast<u64>(3 * i));
    FnR g = random_general(r, 501 + static_cast<u64>(3 * i));
    FnR h = random_general(r, 502 + static_cast<u64>(3 * i));
    for (ConvKind k : {ConvKind::dirichlet, ConvKind::unitary, ConvKind::gcd, ConvKind::lcm,
                       ConvKind::binomial}) {
      FnR fg = convolve_definitional(k, f, g);
      FnR gf = convolve_definitional(k, g, f);
      if (!box_equal(fg, gf, r, box, &cex))
        return outcome_from(false, std::string(conv_kind_name(k)) + " commutativity: " + cex);
      FnR ab = convolve_definitional(k, convolve_definitional(k, f, g), h);
      FnR ba = convolve_definitional(k, f, convolve_definitional(k, g, h));
      if (!box_equal(ab, ba, r, box, &cex))
        return outcome_from(false, std::string(conv_kind_name(k)) + " associativity: " + cex);
      FnR idf = convolve_definitional(k, identity_fn(r), f);
      if (!box_equal(idf, f, r, box, &cex))
        return outcome_from(false, std::string(conv_kind_name(k)) + " identity: " + cex);
      if (k != ConvKind::lcm) {
        FnR lhs = convolve_definitional(k, f, pointwise_add(g, h));
        FnR rhs = pointwise_add(convolve_definitional(k, f, g), convolve_definitional(k, f, h));
        if (!box_equal(lhs, rhs, r, box, &cex))
          return outcome_from(false, std::string(conv_kind_name(k)) + " distributivity: " + cex);
      }
    }
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_dirichlet_inverse_roundtrip(u64 box) {
  std::string cex;
  for (int i = 0; i < 20; ++i) {
    FnR f = random_general(2, 600 + static_cast<u64>(i));
    FnR finv = inverse(ConvKind::dirichlet, f);
    FnR prod = convolve_definitional(ConvKind::dirichlet, f, finv);
    if (!box_equal(prod, identity_fn(2), 2, box, &cex))
      return outcome_from(false, "f#" + std::to_string(i) + ": " + cex);
  }
  return outcome_from(true, "");
}

VerifyOutcome verify_surjectivity_witness(u64 limit) {
  for (int i = 0; i < 10; ++i) {
    FnR f = random_general(1, 700 + static_cast<u64>(i));
    for (int r : {2, 3}) {
      FnR lifted = embed_first(f, r);
      for (ConvoluteKind k : {ConvoluteKind::dir, ConvoluteKind::unit, ConvoluteKind::gcd,
                              ConvoluteKind::lcm, ConvoluteKind::binom}) {
        FnR back = convolute_definitional(k, lifted);
        std::string cex;
        if (!fn1_equal(back, f, limit, &cex))
          return outcome_from(false, std::string(convolute_kind_name(k)) + " r=" +
                                         std::to_string(r) + ": " + cex);
      }
    }
  }
  return outcome_from(true, "");
}

struct IdentityEntry {
  const char* name;
  u64 default_box;
  VerifyOutcome (*fn)(u64);
};

const IdentityEntry kIdentities[] = {
    {"rho-representation", 30, verify_rho_representation},
    {"rho-mobius-sum", 30, verify_rho_mobius_sum},
    {"sigma-r-two-route", 30, verify_sigma_r_two_route},
    {"s-two-route", 30, verify_s_two_route},
    {"c-two-route", 30, verify_c_two_route},
    {"E-two-route", 30, verify_E_two_route},
    {"A-two-route", 30, verify_A_two_route},
    {"ramanujan-two-route", 30, verify_ramanujan_two_route},
    {"lcm-via-dirichlet", 20, verify_lcm_via_dirichlet},
    {"mu-lcm-prime-powers", 0, verify_mu_lcm_prime_powers},
    {"binomial-isomorphism", 16, verify_binomial_isomorphism},
    {"count-functions", 500, verify_count_functions},
    {"gcd-convolute", 300, verify_gcd_convolute_identities},
    {"lcm-corollaries", 300, verify_lcm_corollaries},
    {"ramanujan-convolutes", 10000, verify_ramanujan_convolutes},
    {"ramanujan-dir-convolute", 10000, verify_ramanujan_dir_convolute},
    {"ramanujan-unit-convolute", 10000, verify_ramanujan_unit_convolute},
    {"ramanujan-lcm-convolute", 10000, verify_ramanujan_lcm_convolute},
    {"homomorphisms", 24, verify_homomorphisms},
    {"unitary-bell-sum", 0, verify_unitary_bell_sum},
    {"bell-product-rule", 0, verify_bell_product_rule},
    {"algebra-axioms", 20, verify_algebra_axioms},
    {"dirichlet-inverse-roundtrip", 24, verify_dirichlet_inverse_roundtrip},
    {"surjectivity-witness", 100, verify_surjectivity_witness},
};

}  // namespace

std::vector<std::string> identity_names() {
  std::vector<std::string> out;
  for (const auto& e : kIdentities) out.push_back(e.name);
  return out;
}

VerifyOutcome run_identity(const std::string& name, u64 box) {
  for (const auto& e : kIdentities) {
    if (name == e.name) return e.fn(box ? box : e.default_box);
  }
  throw std::invalid_argument("unknown identity: " + name);
}

namespace {

int cmd_eval(const GlobalOpts& g, const std::string& expr, const std::vector<u64>& tuple,
             int ambient, std::ostream& out) {
  // arity-collapsing operators (diag, conv_*) need the ambient arity spelled out
  if (ambient == 0) ambient = static_cast<int>(tuple.size());
  FnR f = parse_function_expr(expr, ambient);
  if (f.arity() != static_cast<int>(tuple.size()))
    throw std::invalid_argument("expression arity " + std::to_string(f.arity()) +
                                " does not match tuple length " +
                                std::to_string(tuple.size()));
  Rat v = f(tuple);
  if (g.format == "plain") {
    out << rat_str(v) << "\n";
  } else {
    json j{{"expr", expr}, {"tuple", tuple}, {"value", rat_str(v)}};
    out << j.dump() << "\n";
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& name,
               const std::vector<std::string>& exprs, int arity, u64 box, std::ostream& out) {
  VerifyOutcome o;
  std::string label;
  if (!exprs.empty()) {
    if (exprs.size() != 2) throw std::invalid_argument("--exprs takes exactly two expressions");
    FnR a = parse_function_expr(exprs[0], arity);
    FnR b = parse_function_expr(exprs[1], arity);
    if (a.arity() != b.arity()) throw std::invalid_argument("expressions differ in arity");
    label = exprs[0] + " == " + exprs[1];
    std::string cex;
    o = outcome_from(box_equal(a, b, a.arity(), box, &cex), cex);
  } else {
    label = name;
    o = run_identity(name, box);
  }
  if (g.format == "plain") {
    out << label << ": " << (o.pass ? "pass" : "FAIL") << "\n";
    if (!o.pass) out << "counterexample: " << o.counterexample << "\n";
  } else {
    json j{{"identity", label}, {"box", box}, {"pass", o.pass}};
    if (!o.pass) j["counterexample"] = o.counterexample;
    out << j.dump() << "\n";
  }
  return o.pass ? 0 : 1;
}

int cmd_bell(const GlobalOpts& g, const std::string& expr, int r, u64 p, int degree,
             std::ostream& out) {
  FnR f = parse_function_expr(expr, r);
  BellSeries b = bell_series(f, p, degree);
  json coeffs = json::array();
  Exps e(static_cast<size_t>(b.arity), 0);
  while (true) {
    coeffs.push_back(json{{"e", e}, {"v", rat_str(b.at(e))}});
    size_t i = 0;
    while (i < e.size() && e[i] == static_cast<std::uint32_t>(degree)) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
  json j{{"expr", expr}, {"p", p}, {"degree", degree}, {"coefficients", coeffs}};
  out << (g.format == "plain" ? j.dump(2) : j.dump()) << "\n";
  return 0;
}

int cmd_dirichlet(const GlobalOpts& g, const std::string& expr, const std::string& zlist, int r,
                  const std::string& extract, u64 oracle_N, std::ostream& out) {
  auto z = parse_real_list(zlist);
  if (r == 0) r = static_cast<int>(z.size());
  FnR f = parse_function_expr(expr, r);
  EulerOptions opt;
  opt.prime_cutoff = g.primes;
  opt.local_degree = g.degree;
  if (!extract.empty()) {
    std::stringstream ss(extract);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto colon = item.find(':');
      ZetaFactor zf;
      zf.s = Real(item.substr(0, colon));
      zf.mult = colon == std::string::npos ? 1 : std::stoi(item.substr(colon + 1));
      opt.extract.push_back(zf);
    }
  }
  auto res = euler_product_eval(f, z, opt);
  json j{{"expr", expr}, {"z", json::array()}, {"euler_product", ep_json(res, g.precision)}};
  for (const auto& zi : z) j["z"].push_back(real_str(zi, g.precision));
  if (oracle_N) {
    Real ps = dirichlet_partial_sum(f, z, oracle_N);
    j["partial_sum"] = json{{"N", oracle_N}, {"value", real_str(ps, g.precision)}};
  }
  out << j.dump() << "\n";
  return 0;
}

int cmd_density(const GlobalOpts& g, const std::string& pred, int r, u64 box,
                std::ostream& out) {
  auto p = density_predicate_from_name(pred);
  DensityReport rep = density_report(p, r, g.primes, box);
  json j{{"predicate", pred},
         {"r", r},
         {"analytic", ep_json(rep.analytic, g.precision)},
         {"empirical", rat_str(rep.empirical)},
         {"empirical_approx", real_str(to_real(rep.empirical), g.precision)},
         {"box", rep.box},
         {"gap", real_str(rep.gap, 3)}};
  out << j.dump() << "\n";
  return 0;
}

int cmd_mean_value(const GlobalOpts& g, const std::string& expr, int r, bool unitary, u64 box,
                   std::ostream& out) {
  FnR f = parse_function_expr(expr, r);
  json j{{"expr", expr}, {"r", r}};
  if (box) {
    Real w = mean_value_wintner(f, box);
    j["wintner_box"] = json{{"box", box}, {"value", real_str(w, g.precision)}};
  }
  EulerProductResult res = unitary ? mean_value_unitary(f, g.primes, g.degree)
                                   : mean_value_multiplicative(f, g.primes, g.degree);
  j["mean_value"] = ep_json(res, g.precision);
  out << j.dump() << "\n";
  return 0;
}

int cmd_table(const GlobalOpts& g, const std::string& target, const std::string& xs_text, int r,
              std::ostream& out) {
  auto t = table_target_from_name(target);
  auto xs = parse_u64_list(xs_text);
  auto rows = partial_sum_table(t, xs, r);
  out << "x,exact,main_term,rel_dev\n";
  for (const auto& row : rows) {
    out << row.x << "," << rat_str(row.exact) << "," << real_str(row.main_term, g.precision)
        << "," << real_str(row.rel_dev, 6) << "\n";
  }
  return 0;
}

int cmd_search_perfect(const GlobalOpts& g, int r, u64 box, std::ostream& out) {
  auto found = search_perfect_tuples(r, box);
  json arr = json::array();
  for (const auto& t : found) arr.push_back(t);
  json j{{"r", r}, {"box", box}, {"perfect_tuples", arr}};
  out << j.dump() << "\n";
  return 0;
}

int cmd_convolve(const GlobalOpts& g, const std::string& kind, const std::string& e1,
                 const std::string& e2, const std::vector<u64>& at, std::ostream& out) {
  int r = static_cast<int>(at.size());
  FnR f = parse_function_expr(e1, r);
  FnR h = parse_function_expr(e2, r);
  ConvKind k;
  if (kind == "dir") k = ConvKind::dirichlet;
  else if (kind == "unit") k = ConvKind::unitary;
  else if (kind == "gcd") k = ConvKind::gcd;
  else if (kind == "lcm") k = ConvKind::lcm;
  else if (kind == "binom") k = ConvKind::binomial;
  else throw std::invalid_argument("unknown convolution kind: " + kind);
  Rat v = convolve(k, f, h)(at);
  json j{{"kind", kind}, {"at", at}, {"value", rat_str(v)}};
  out << (g.format == "plain" ? rat_str(v) : j.dump()) << "\n";
  return 0;
}

int cmd_convolute_cli(const GlobalOpts& g, const std::string& kind, const std::string& e1, int r,
                      u64 at, std::ostream& out) {
  FnR f = parse_function_expr(e1, r);
  ConvoluteKind k;
  if (kind == "dir") k = ConvoluteKind::dir;
  else if (kind == "unit") k = ConvoluteKind::unit;
  else if (kind == "gcd") k = ConvoluteKind::gcd;
  else if (kind == "lcm") k = ConvoluteKind::lcm;
  else if (kind == "binom") k = ConvoluteKind::binom;
  else throw std::invalid_argument("unknown convolute kind: " + kind);
  Rat v = convolute(k, f)({at});
  json j{{"kind", kind}, {"n", at}, {"value", rat_str(v)}};
  out << (g.format == "plain" ? rat_str(v) : j.dump()) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact algebra of multiplicative arithmetic functions of several variables"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOpts g;
  app.add_option("--format", g.format, "json|csv|plain")->capture_default_str();
  app.add_option("--precision", g.precision, "printed significant digits")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = library default)");
  app.add_option_function<std::string>(
         "--primes,-P",
         [&g](const std::string& s) { g.primes = static_cast<u64>(std::stod(s)); },
         "prime cutoff for Euler products (accepts 1e6 style)")
      ->default_str("100000");
  app.add_option("--degree", g.degree, "local degree cutoff")->capture_default_str();

  // eval
  std::string expr;
  std::vector<u64> tuple;
  int eval_r = 0;
  auto* eval = app.add_subcommand("eval", "evaluate an expression at a tuple");
  eval->add_option("expr", expr)->required();
  eval->add_option("tuple", tuple, "positive integers")->required();
  eval->add_option("-r", eval_r, "ambient arity (defaults to the tuple length)");

  // verify
  std::string identity;
  std::vector<std::string> exprs;
  u64 vbox = 0;
  int varity = 1;
  auto* verify = app.add_subcommand("verify", "check a named identity or two expressions");
  verify->add_option("identity", identity, "identity name (see --list)");
  verify->add_option("--exprs", exprs, "two expressions to compare")->expected(2);
  verify->add_option("--box", vbox, "box bound");
  verify->add_option("--arity,-r", varity, "arity for --exprs");
  bool list_identities = false;
  verify->add_flag("--list", list_identities, "list identity names");

  // convolve / convolute
  std::string kind, expr2;
  std::vector<u64> at;
  auto* conv = app.add_subcommand("convolve", "convolve two expressions and evaluate");
  conv->add_option("--kind", kind)->required();
  conv->add_option("f", expr)->required();
  conv->add_option("g", expr2)->required();
  conv->add_option("--at", at, "tuple")->required();

  std::string cvkind;
  u64 cv_at = 1;
  int cv_r = 2;
  auto* cvt = app.add_subcommand("convolute", "collapse to one variable and evaluate");
  cvt->add_option("--kind", cvkind)->required();
  cvt->add_option("f", expr)->required();
  cvt->add_option("-r", cv_r, "arity of f")->capture_default_str();
  cvt->add_option("--at", cv_at, "argument")->required();

  // bell
  u64 bell_p = 2;
  int bell_r = 1, bell_deg = 6;
  auto* bell = app.add_subcommand("bell", "Bell series coefficient dump");
  bell->add_option("expr", expr)->required();
  bell->add_option("-p", bell_p, "prime base")->capture_default_str();
  bell->add_option("-r", bell_r, "arity")->capture_default_str();
  bell->add_option("-D,--degree-bell", bell_deg, "truncation degree")->capture_default_str();

  // dirichlet
  std::string zlist, extract;
  int dz_r = 0;
  u64 oracle_N = 0;
  auto* dir = app.add_subcommand("dirichlet", "Euler-product evaluation of a Dirichlet series");
  dir->add_option("expr", expr)->required();
  dir->add_option("-z", zlist, "exponents, comma separated")->required();
  dir->add_option("-r", dz_r, "arity (defaults to #z)");
  dir->add_option("--extract", extract, "zeta factors s:mult, comma separated");
  dir->add_option("--oracle", oracle_N, "also compute the direct partial sum to N");

  // density
  std::string pred;
  int den_r = 2;
  u64 den_box = 1000;
  auto* den = app.add_subcommand("density", "asymptotic density, analytic and empirical");
  den->add_option("predicate", pred)->required();
  den->add_option("-r", den_r)->capture_default_str();
  den->add_option("-B,--box-size", den_box)->capture_default_str();

  // mean-value
  int mv_r = 2;
  bool mv_unitary = false;
  u64 mv_box = 0;
  auto* mv = app.add_subcommand("mean-value", "Wintner-type mean value");
  mv->add_option("expr", expr)->required();
  mv->add_option("-r", mv_r)->capture_default_str();
  mv->add_flag("--unitary", mv_unitary, "unitary-convolution form");
  mv->add_option("--box", mv_box, "also compute the direct box sum");

  // table
  std::string target, xs_text;
  int tb_r = 3;
  auto* tb = app.add_subcommand("table", "partial sums against main terms (CSV)");
  tb->add_option("target", target)->required();
  tb->add_option("--xs", xs_text, "comma-separated x values")->required();
  tb->add_option("-r", tb_r, "r for gcdr")->capture_default_str();

  // search-perfect
  int sp_r = 2;
  u64 sp_box = 10;
  auto* sp = app.add_subcommand("search-perfect", "perfect r-tuples in a box");
  sp->add_option("-r", sp_r)->capture_default_str();
  sp->add_option("-B,--box-size", sp_box)->capture_default_str();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    if (*eval) return cmd_eval(g, expr, tuple, eval_r, out);
    if (*verify) {
      if (list_identities) {
        json j = identity_names();
        out << j.dump() << "\n";
        return 0;
      }
      if (identity.empty() && exprs.empty())
        throw std::invalid_argument("verify: give an identity name or --exprs");
      return cmd_verify(g, identity, exprs, varity, vbox, out);
    }
    if (*conv) return cmd_convolve(g, kind, expr, expr2, at, out);
    if (*cvt) return cmd_convolute_cli(g, cvkind, expr, cv_r, cv_at, out);
    if (*bell) return cmd_bell(g, expr, bell_r, bell_p, bell_deg, out);
    if (*dir) return cmd_dirichlet(g, expr, zlist, dz_r, extract, oracle_N, out);
    if (*den) return cmd_density(g, pred, den_r, den_box, out);
    if (*mv) return cmd_mean_value(g, expr, mv_r, mv_unitary, mv_box, out);
    if (*tb) return cmd_table(g, target, xs_text, tb_r, out);
    if (*sp) return cmd_search_perfect(g, sp_r, sp_box, out);
  } catch (const DivergenceError& e) {
    err << "numeric divergence: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace multfun::cli
