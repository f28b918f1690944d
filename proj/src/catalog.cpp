#include "multfun/catalog.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "multfun/convolution.hpp"

namespace multfun {
namespace catalog {

namespace {

Rat p_pow(u64 p, long e) {
  if (e >= 0) {
    Rat q;
    mpz_ui_pow_ui(q.get_num_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    mpz_set_ui(q.get_den_mpz_t(), 1);
    return q;
  }
  Rat q;
  mpz_set_ui(q.get_num_mpz_t(), 1);
  mpz_ui_pow_ui(q.get_den_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(-e));
  return q;
}

}  // namespace

FnR delta1() { return identity_fn(1); }

FnR id1() {
  return FnR::from_local(
      1, [](u64 p, const Exps& e) { return p_pow(p, e[0]); }, FnClass::completely, "id");
}

FnR id_pow(long k) {
  return FnR::from_local(
      1, [k](u64 p, const Exps& e) { return p_pow(p, k * static_cast<long>(e[0])); },
      FnClass::completely, "id_" + std::to_string(k));
}

FnR euler_phi() { return jordan_phi(1).with_name("phi"); }

FnR jordan_phi(long k) {
  // phi_k(p^e) = p^{ke} - p^{k(e-1)}
  return FnR::from_local(
      1,
      [k](u64 p, const Exps& e) -> Rat {
        if (e[0] == 0) return rat(1);
        return p_pow(p, k * static_cast<long>(e[0])) -
               p_pow(p, k * (static_cast<long>(e[0]) - 1));
      },
      FnClass::multiplicative, "phi_" + std::to_string(k));
}

FnR dedekind_psi() {
  // psi(p^e) = p^e + p^{e-1}
  return FnR::from_local(
      1,
      [](u64 p, const Exps& e) -> Rat {
        if (e[0] == 0) return rat(1);
        return p_pow(p, e[0]) + p_pow(p, static_cast<long>(e[0]) - 1);
      },
      FnClass::multiplicative, "psi");
}

FnR mobius1() {
  return FnR::from_local(
      1,
      [](u64, const Exps& e) {
        if (e[0] >= 2) return rat(0);
        return e[0] == 1 ? rat(-1) : rat(1);
      },
      FnClass::multiplicative, "mu");
}

FnR mobius_unitary1() {
  return FnR::from_local(
      1, [](u64, const Exps& e) { return e[0] >= 1 ? rat(-1) : rat(1); },
      FnClass::multiplicative, "mu_unit");
}

FnR tau1() { return tau_piltz(2).with_name("tau"); }

FnR tau_piltz(long k) {
  if (k < 1) throw std::invalid_argument("tau_k: k must be >= 1");
  return FnR::from_local(
      1,
      [k](u64, const Exps& e) {
        return Rat(binomial_int(e[0] + static_cast<unsigned long>(k) - 1,
                                static_cast<unsigned long>(k) - 1));
      },
      FnClass::multiplicative, "tau_" + std::to_string(k));
}

FnR sigma1() { return sigma_pow(1).with_name("sigma"); }

FnR sigma_pow(long k) {
  return FnR::from_local(
      1,
      [k](u64 p, const Exps& e) {
        Rat s(0);
        for (long j = 0; j <= static_cast<long>(e[0]); ++j) s += p_pow(p, k * j);
        return s;
      },
      FnClass::multiplicative, "sigma_" + std::to_string(k));
}

FnR omega_fn() {
  return FnR(
      1, [](const Tuple& t) { return rat(static_cast<long>(factorize(t[0]).omega())); },
      FnClass::general, "omega");
}

FnR big_omega_fn() {
  return FnR(
      1, [](const Tuple& t) { return rat(static_cast<long>(factorize(t[0]).big_omega())); },
      FnClass::general, "bigomega");
}

FnR liouville() {
  return FnR::from_local(
      1, [](u64, const Exps& e) { return e[0] % 2 ? rat(-1) : rat(1); }, FnClass::completely,
      "lambda");
}

FnR xi1() { return xi_r_fn(1).with_name("xi"); }

FnR beta_alt() {
  // (id * lambda)(p^e) = p^e - p^{e-1} + p^{e-2} - ...
  return FnR::from_local(
      1,
      [](u64 p, const Exps& e) {
        Rat s(0);
        for (long j = static_cast<long>(e[0]); j >= 0; j -= 2) s += p_pow(p, j);
        for (long j = static_cast<long>(e[0]) - 1; j >= 0; j -= 2) s -= p_pow(p, j);
        return s;
      },
      FnClass::multiplicative, "beta");
}

namespace {
std::mutex ram_mutex;
std::map<std::pair<u64, u64>, long long> ram_memo;
}  // namespace

long long ramanujan_sum(u64 n, u64 k) {
  std::pair<u64, u64> key{n, k % std::max<u64>(n, 1)};
  {
    std::lock_guard lk(ram_mutex);
    auto it = ram_memo.find(key);
    if (it != ram_memo.end()) return it->second;
  }
  u64 g = std::gcd(n, k);
  long long acc = 0;
  for (u64 d : divisors(g)) {
    u64 m = n / d;
    auto f = factorize(m);
    bool sqfree = true;
    for (const auto& pp : f.factors)
      if (pp.e > 1) sqfree = false;
    if (!sqfree) continue;
    long long mu = f.omega() % 2 ? -1 : 1;
    acc += mu * static_cast<long long>(d);
  }
  std::lock_guard lk(ram_mutex);
  ram_memo.emplace(key, acc);
  return acc;
}

FnR ramanujan_fn() {
  // (k, n) -> c_n(k); multiplicative as a function of two variables
  return FnR(
      2, [](const Tuple& t) { return rat(ramanujan_sum(t[1], t[0])); }, FnClass::multiplicative,
      "ramanujan");
}

FnR ramanujan_fn_representation() {
  // c_n(k) = (f * g)(k, n) with f(m,n) = m [m = n], g(m,n) = mu(n)
  FnR f(
      2,
      [](const Tuple& t) {
        return t[0] == t[1] ? rat_u64(t[0]) : rat(0);
      },
      FnClass::multiplicative, "diag_id");
  FnR mu = mobius1();
  FnR g(
      2, [mu](const Tuple& t) { return mu({t[1]}); }, FnClass::multiplicative, "mu_snd");
  return convolve_definitional(ConvKind::dirichlet, f, g)
      .with_name("ramanujan_rep");
}

FnR gcd_fn(int r) {
  return FnR::from_local(
      r,
      [](u64 p, const Exps& e) {
        std::uint32_t m = e[0];
        for (auto x : e) m = std::min(m, x);
        return p_pow(p, m);
      },
      FnClass::multiplicative, "gcd");
}

FnR lcm_fn(int r) {
  return FnR::from_local(
      r,
      [](u64 p, const Exps& e) {
        std::uint32_t m = 0;
        for (auto x : e) m = std::max(m, x);
        return p_pow(p, m);
      },
      FnClass::multiplicative, "lcm");
}

FnR prod_fn(int r) {
  return FnR::from_local(
      r,
      [](u64 p, const Exps& e) {
        long s = 0;
        for (auto x : e) s += x;
        return p_pow(p, s);
      },
      FnClass::completely, "prod");
}

FnR g_of_gcd(const FnR& g, int r) {
  if (g.arity() != 1) throw std::invalid_argument("g_of_gcd: g must have arity 1");
  FnClass cls = at_least_multiplicative(g.fn_class()) ? FnClass::multiplicative : FnClass::general;
  std::string nm = "of_gcd(" + g.name() + ")";
  if (g.has_local() && cls == FnClass::multiplicative) {
    return FnR::from_local(
        r,
        [g](u64 p, const Exps& e) {
          std::uint32_t m = e[0];
          for (auto x : e) m = std::min(m, x);
          return g.local(p, Exps{m});
        },
        cls, nm);
  }
  return FnR(
      r,
      [g](const Tuple& t) { return g({gcd_list(t)}); }, cls, nm);
}

FnR g_of_lcm(const FnR& g, int r) {
  if (g.arity() != 1) throw std::invalid_argument("g_of_lcm: g must have arity 1");
  FnClass cls = at_least_multiplicative(g.fn_class()) ? FnClass::multiplicative : FnClass::general;
  std::string nm = "of_lcm(" + g.name() + ")";
  if (g.has_local() && cls == FnClass::multiplicative) {
    return FnR::from_local(
        r,
        [g](u64 p, const Exps& e) {
          std::uint32_t m = 0;
          for (auto x : e) m = std::max(m, x);
          return g.local(p, Exps{m});
        },
        cls, nm);
  }
  return FnR(
      r, [g](const Tuple& t) { return g({lcm_list(t)}); }, cls, nm);
}

FnR rho_fn(int r) {
  if (r < 2) throw std::invalid_argument("rho: needs r >= 2");
  return FnR::from_local(
      r,
      [](u64, const Exps& e) {
        int pos = 0;
        for (auto x : e)
          if (x >= 1) ++pos;
        return pos <= 1 ? rat(1) : rat(0);
      },
      FnClass::multiplicative, "rho");
}

FnR rho_representation(int r) {
  if (r < 2) throw std::invalid_argument("rho_representation: needs r >= 2");
  FnR mu = mobius1();
  return FnR(
      r,
      [r, mu](const Tuple& t) {
        // sum over divisor tuples of tau(d1...dr) mu(n1/d1)...mu(nr/dr);
        // tau of the product through summed exponent vectors to dodge overflow
        std::vector<const std::vector<u64>*> divs(r);
        for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
        std::vector<size_t> idx(r, 0);
        Rat acc(0);
        while (true) {
          Rat w(1);
          bool zero = false;
          std::map<u64, std::uint32_t> exps;
          for (int i = 0; i < r && !zero; ++i) {
            u64 d = (*divs[i])[idx[i]];
            Rat m = mu({t[i] / d});
            if (m == 0) {
              zero = true;
              break;
            }
            w *= m;
            for (const auto& pp : factorize(d).factors) exps[pp.p] += pp.e;
          }
          if (!zero) {
            Rat tprod(1);
            for (const auto& [p, e] : exps) tprod *= rat(static_cast<long>(e) + 1);
            acc += tprod * w;
          }
          int i = 0;
          while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      },
      FnClass::multiplicative, "rho_rep");
}

FnR rho_unitary_fn(int r) {
  if (r < 2) throw std::invalid_argument("rho_unitary: needs r >= 2");
  return FnR::from_local(
      r,
      [](u64, const Exps& e) {
        // no two equal positive exponents at any prime
        std::vector<std::uint32_t> pos;
        for (auto x : e)
          if (x >= 1) pos.push_back(x);
        std::sort(pos.begin(), pos.end());
        for (size_t i = 1; i < pos.size(); ++i)
          if (pos[i] == pos[i - 1]) return rat(0);
        return rat(1);
      },
      FnClass::multiplicative, "rho_unit");
}

FnR sigma_r_fn(int r) {
  FnR g = gcd_fn(r);
  return FnR(
      r,
      [r, g](const Tuple& t) {
        std::vector<const std::vector<u64>*> divs(r);
        for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
        std::vector<size_t> idx(r, 0);
        Tuple d(r);
        Rat acc(0);
        while (true) {
          for (int i = 0; i < r; ++i) d[i] = (*divs[i])[idx[i]];
          acc += rat_u64(gcd_list(d));
          int i = 0;
          while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      },
      FnClass::multiplicative, "sigma_r");
}

FnR sigma_r_representation(int r) {
  FnR phi = euler_phi();
  FnR tau = tau1();
  return FnR(
      r,
      [r, phi, tau](const Tuple& t) {
        Rat acc(0);
        for (u64 d : divisors(gcd_list(t))) {
          Rat w = phi({d});
          for (int i = 0; i < r; ++i) w *= tau({t[i] / d});
          acc += w;
        }
        return acc;
      },
      FnClass::multiplicative, "sigma_r_rep");
}

FnR subgroup_count_fn() {
  return FnR(
      2,
      [](const Tuple& t) {
        Rat acc(0);
        for (u64 a : divisors(t[0]))
          for (u64 b : divisors(t[1])) acc += rat_u64(std::gcd(a, b));
        return acc;
      },
      FnClass::multiplicative, "s");
}

FnR cyclic_count_fn(int r) {
  FnR phi = euler_phi();
  return FnR(
      r,
      [r, phi](const Tuple& t) {
        std::vector<const std::vector<u64>*> divs(r);
        for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
        std::vector<size_t> idx(r, 0);
        Tuple d(r);
        Rat acc(0);
        while (true) {
          for (int i = 0; i < r; ++i) d[i] = (*divs[i])[idx[i]];
          Rat w(1);
          for (int i = 0; i < r; ++i) w *= phi({d[i]});
          acc += w / phi({lcm_list(d)});
          int i = 0;
          while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      },
      FnClass::multiplicative, "c");
}

FnR cyclic_count_gcd_form() {
  FnR phi = euler_phi();
  return FnR(
      2,
      [phi](const Tuple& t) {
        Rat acc(0);
        for (u64 a : divisors(t[0]))
          for (u64 b : divisors(t[1])) acc += phi({std::gcd(a, b)});
        return acc;
      },
      FnClass::multiplicative, "c_gcd_form");
}

FnR E_fn(int r) {
  return FnR(
      r,
      [r](const Tuple& t) {
        u64 n = lcm_list(t);
        long long acc = 0;
        for (u64 j = 1; j <= n; ++j) {
          long long term = 1;
          for (int i = 0; i < r; ++i) term *= ramanujan_sum(t[i], j);
          acc += term;
        }
        Rat q(static_cast<long>(acc), static_cast<long>(n));
        q.canonicalize();
        return q;
      },
      FnClass::multiplicative, "E");
}

FnR E_representation(int r) {
  FnR mu = mobius1();
  return FnR(
      r,
      [r, mu](const Tuple& t) {
        std::vector<const std::vector<u64>*> divs(r);
        for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
        std::vector<size_t> idx(r, 0);
        Tuple d(r);
        Rat acc(0);
        while (true) {
          for (int i = 0; i < r; ++i) d[i] = (*divs[i])[idx[i]];
          Rat w(1);
          for (int i = 0; i < r; ++i) w *= rat_u64(d[i]) * mu({t[i] / d[i]});
          if (w != 0) acc += w / rat_u64(lcm_list(d));
          int i = 0;
          while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      },
      FnClass::multiplicative, "E_rep");
}

FnR A_fn(int r) {
  return FnR(
      r,
      [r](const Tuple& t) {
        u64 n = lcm_list(t);
        Rat acc(0);
        for (u64 k = 1; k <= n; ++k) {
          u64 term = 1;
          for (int i = 0; i < r; ++i) term *= std::gcd(k, t[i]);
          acc += rat_u64(term);
        }
        return Rat(acc / rat_u64(n));
      },
      FnClass::multiplicative, "A");
}

FnR A_representation(int r) {
  FnR phi = euler_phi();
  return FnR(
      r,
      [r, phi](const Tuple& t) {
        std::vector<const std::vector<u64>*> divs(r);
        for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
        std::vector<size_t> idx(r, 0);
        Tuple d(r);
        Rat acc(0);
        while (true) {
          for (int i = 0; i < r; ++i) d[i] = (*divs[i])[idx[i]];
          Rat w(1);
          for (int i = 0; i < r; ++i) w *= phi({d[i]});
          acc += w / rat_u64(lcm_list(d));
          int i = 0;
          while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      },
      FnClass::multiplicative, "A_rep");
}

bool is_perfect_tuple(const Tuple& t) {
  // the representation route is the cheap one; r = 1 reduces to sigma
  FnR s = sigma_r_representation(static_cast<int>(t.size()));
  return s(t) == 2 * rat_u64(gcd_list(t));
}

FnR by_name(const std::string& name, int r, bool* needs_param) {
  if (needs_param) *needs_param = false;
  if (name == "delta") return identity_fn(r);
  if (name == "one") return one_fn(r);
  if (name == "gcd") return gcd_fn(r);
  if (name == "lcm") return lcm_fn(r);
  if (name == "prod") return prod_fn(r);
  if (name == "rho") return rho_fn(r);
  if (name == "rho_unit") return rho_unitary_fn(r);
  if (name == "sigma_r") return sigma_r_fn(r);
  if (name == "s") return subgroup_count_fn();
  if (name == "c") return cyclic_count_fn(r);
  if (name == "E") return E_fn(r);
  if (name == "A") return A_fn(r);
  if (name == "ramanujan") return ramanujan_fn();
  if (name == "mu_r") return mobius_fn(ConvKind::dirichlet, r);
  if (name == "mu_unit_r") return mobius_fn(ConvKind::unitary, r);
  if (name == "mu_gcd_r") return mobius_fn(ConvKind::gcd, r);
  if (name == "mu_lcm_r") return mobius_fn(ConvKind::lcm, r);
  if (name == "lambda_r") return mobius_fn(ConvKind::binomial, r);
  if (name == "xi_r") return xi_r_fn(r);
  if (name == "id") return id1();
  if (name == "phi") return euler_phi();
  if (name == "psi") return dedekind_psi();
  if (name == "mu") return mobius1();
  if (name == "mu_unit") return mobius_unitary1();
  if (name == "tau") return tau1();
  if (name == "sigma") return sigma1();
  if (name == "lambda") return liouville();
  if (name == "xi") return xi1();
  if (name == "beta") return beta_alt();
  if (name == "omega") return omega_fn();
  if (name == "bigomega") return big_omega_fn();
  if (name == "id_k" || name == "phi_k" || name == "tau_k" || name == "sigma_k") {
    if (needs_param) *needs_param = true;
    return FnR();
  }
  return FnR();
}

FnR by_name_param(const std::string& name, long k, int r) {
  (void)r;
  if (name == "id") return id_pow(k);
  if (name == "phi") return jordan_phi(k);
  if (name == "tau") return tau_piltz(k);
  if (name == "sigma") return sigma_pow(k);
  return FnR();
}

std::vector<std::string> names() {
  return {"delta", "one",   "gcd",     "lcm",      "prod",     "rho",     "rho_unit",
          "sigma_r", "s",   "c",       "E",        "A",        "ramanujan", "mu_r",
          "mu_unit_r", "mu_gcd_r", "mu_lcm_r", "lambda_r", "xi_r",     "id",      "phi",
          "psi",     "mu",  "mu_unit", "tau",      "sigma",    "lambda",  "xi",
          "beta",    "omega", "bigomega", "id_K",  "phi_K",    "tau_K",   "sigma_K"};
}

}  // namespace catalog
}  // namespace multfun
