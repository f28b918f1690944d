#include "multfun/convolute.hpp"

#include <numeric>

#include "multfun/catalog.hpp"

namespace multfun {

const char* convolute_kind_name(ConvoluteKind k) {
  switch (k) {
    case ConvoluteKind::dir: return "dir";
    case ConvoluteKind::unit: return "unit";
    case ConvoluteKind::gcd: return "gcd";
    case ConvoluteKind::lcm: return "lcm";
    case ConvoluteKind::binom: return "binom";
  }
  return "?";
}

namespace {

// ordered factorizations d1...dr = n
void ordered_factorizations(u64 n, int slots, Tuple& cur,
                            const std::function<void(const Tuple&)>& cb) {
  if (slots == 1) {
    cur.push_back(n);
    cb(cur);
    cur.pop_back();
    return;
  }
  for (u64 d : divisors(n)) {
    cur.push_back(d);
    ordered_factorizations(n / d, slots - 1, cur, cb);
    cur.pop_back();
  }
}

// compositions e1+...+er = s with callback
void compositions(std::uint32_t s, int slots, Exps& cur,
                  const std::function<void(const Exps&)>& cb) {
  if (slots == 1) {
    cur.push_back(s);
    cb(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t e = 0; e <= s; ++e) {
    cur.push_back(e);
    compositions(s - e, slots - 1, cur, cb);
    cur.pop_back();
  }
}

Rat multinomial(std::uint32_t n, const Exps& parts) {
  Int w = factorial_int(n);
  Int den(1);
  for (auto e : parts) den *= factorial_int(e);
  return Rat(w) / Rat(den);
}

LocalEval convolute_local(ConvoluteKind k, const FnR& f, int r) {
  switch (k) {
    case ConvoluteKind::dir:
      return [f, r](u64 p, const Exps& nu) {
        Rat acc(0);
        Exps cur;
        compositions(nu[0], r, cur, [&](const Exps& e) { acc += f.local(p, e); });
        return acc;
      };
    case ConvoluteKind::unit:
      return [f, r](u64 p, const Exps& nu) {
        if (nu[0] == 0) return f.local(p, Exps(r, 0));
        Rat acc(0);
        Exps e(r, 0);
        for (int i = 0; i < r; ++i) {
          e[i] = nu[0];
          acc += f.local(p, e);
          e[i] = 0;
        }
        return acc;
      };
    case ConvoluteKind::gcd:
      return [f, r](u64 p, const Exps& nu) {
        Rat acc(0);
        Exps cur;
        compositions(nu[0], r, cur, [&](const Exps& e) {
          std::uint32_t mn = e[0];
          for (auto x : e) mn = std::min(mn, x);
          if (mn == 0 || nu[0] == 0) acc += f.local(p, e);
        });
        return acc;
      };
    case ConvoluteKind::lcm:
      return [f, r](u64 p, const Exps& nu) {
        Rat acc(0);
        Exps e(r, 0);
        // all e in [0, nu]^r with max = nu
        while (true) {
          std::uint32_t mx = 0;
          for (auto x : e) mx = std::max(mx, x);
          if (mx == nu[0]) acc += f.local(p, e);
          int i = 0;
          while (i < r && e[i] == nu[0]) e[i++] = 0;
          if (i == r) break;
          ++e[i];
        }
        return acc;
      };
    case ConvoluteKind::binom:
      return [f, r](u64 p, const Exps& nu) {
        Rat acc(0);
        Exps cur;
        compositions(nu[0], r, cur,
                     [&](const Exps& e) { acc += multinomial(nu[0], e) * f.local(p, e); });
        return acc;
      };
  }
  throw std::logic_error("convolute_local: bad kind");
}

}  // namespace

FnR convolute_definitional(ConvoluteKind k, const FnR& f) {
  int r = f.arity();
  if (r == 1) return f;
  std::string nm = std::string("conv_") + convolute_kind_name(k) + "(" + f.name() + ")";
  auto eval = [k, f, r](const Tuple& t) {
    u64 n = t[0];
    Rat acc(0);
    if (k == ConvoluteKind::lcm) {
      const auto& ds = divisors(n);
      std::vector<size_t> idx(r, 0);
      Tuple d(r);
      while (true) {
        for (int i = 0; i < r; ++i) d[i] = ds[idx[i]];
        if (lcm_list(d) == n) acc += f(d);
        int i = 0;
        while (i < r && ++idx[i] == ds.size()) idx[i++] = 0;
        if (i == r) break;
      }
      return acc;
    }
    Tuple cur;
    auto fac = factorize(n);
    ordered_factorizations(n, r, cur, [&](const Tuple& d) {
      switch (k) {
        case ConvoluteKind::dir:
          acc += f(d);
          break;
        case ConvoluteKind::unit: {
          for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
              if (std::gcd(d[i], d[j]) != 1) return;
          acc += f(d);
          break;
        }
        case ConvoluteKind::gcd: {
          if (gcd_list(d) != 1) return;
          acc += f(d);
          break;
        }
        case ConvoluteKind::binom: {
          Rat w(1);
          for (const auto& pp : fac.factors) {
            Exps parts(r);
            for (int i = 0; i < r; ++i) parts[i] = factorize(d[i]).exponent_of(pp.p);
            w *= multinomial(pp.e, parts);
          }
          acc += w * f(d);
          break;
        }
        case ConvoluteKind::lcm:
          break;
      }
    });
    return acc;
  };
  return FnR(1, eval, FnClass::general, nm).memoized();
}

FnR convolute(ConvoluteKind k, const FnR& f) {
  int r = f.arity();
  if (r == 1) return f;
  if (f.has_local() && at_least_multiplicative(f.fn_class())) {
    std::string nm = std::string("conv_") + convolute_kind_name(k) + "(" + f.name() + ")";
    FnClass cls = FnClass::multiplicative;
    if (k == ConvoluteKind::binom && f.fn_class() == FnClass::completely)
      cls = FnClass::completely;
    return FnR::from_local(1, convolute_local(k, f, r), cls, nm);
  }
  return convolute_definitional(k, f);
}

FnR tau_r_closed(int r) {
  return FnR::from_local(
      1,
      [r](u64, const Exps& e) {
        return Rat(binomial_int(e[0] + r - 1, r - 1));
      },
      FnClass::multiplicative, "tau_" + std::to_string(r) + "_closed");
}

FnR h_r_closed(int r) {
  return FnR::from_local(
      1, [r](u64, const Exps& e) { return e[0] ? rat(r) : rat(1); }, FnClass::multiplicative,
      "H_" + std::to_string(r));
}

FnR n_r_closed(int r) {
  return FnR::from_local(
      1,
      [r](u64, const Exps& e) {
        Int a = binomial_int(e[0] + r - 1, r - 1);
        Int b = e[0] >= 1 ? binomial_int(e[0] - 1, r - 1) : Int(0);
        return Rat(a - b);
      },
      FnClass::multiplicative, "N_" + std::to_string(r));
}

FnR m_r_closed(int r) {
  return FnR::from_local(
      1,
      [r](u64, const Exps& e) {
        Int a(1), b(1);
        for (int i = 0; i < r; ++i) {
          a *= static_cast<unsigned long>(e[0]) + 1;
          b *= static_cast<unsigned long>(e[0]);
        }
        return Rat(a - b);
      },
      FnClass::multiplicative, "M_" + std::to_string(r));
}

FnR q_r_closed(int r) {
  return FnR::from_local(
      1,
      [r](u64, const Exps& e) {
        Int v(1);
        for (std::uint32_t i = 0; i < e[0]; ++i) v *= r;
        return Rat(v);
      },
      FnClass::completely, "Q_" + std::to_string(r));
}

FnR g_r_fn(int r) { return convolute(ConvoluteKind::dir, catalog::gcd_fn(r)); }
FnR ell_r_fn(int r) { return convolute(ConvoluteKind::dir, catalog::lcm_fn(r)); }

FnR parabolic_fn() {
  FnR phi = catalog::euler_phi();
  return FnR(
      1,
      [phi](const Tuple& t) {
        Rat acc(0);
        for (u64 d : divisors(t[0])) acc += phi({std::gcd(d, t[0] / d)});
        return acc;
      },
      FnClass::multiplicative, "parab");
}

FnR cyclic_diag_fn() { return convolute(ConvoluteKind::lcm, catalog::gcd_fn(2)).with_name("ccyc"); }

FnR ramanujan_dir_fn() {
  return FnR(
      1,
      [](const Tuple& t) {
        long long acc = 0;
        for (u64 d : divisors(t[0])) acc += catalog::ramanujan_sum(d, t[0] / d);
        return rat(static_cast<long>(acc));
      },
      FnClass::multiplicative, "a_ram");
}

FnR ramanujan_unit_fn() {
  return FnR(
      1,
      [](const Tuple& t) {
        long long acc = 0;
        for (u64 d : divisors(t[0])) {
          u64 e = t[0] / d;
          if (std::gcd(d, e) != 1) continue;
          acc += catalog::ramanujan_sum(d, e);
        }
        return rat(static_cast<long>(acc));
      },
      FnClass::multiplicative, "b_ram");
}

FnR ramanujan_lcm_fn() {
  return FnR(
      1,
      [](const Tuple& t) {
        u64 n = t[0];
        long long acc = 0;
        for (u64 d : divisors(n))
          for (u64 e : divisors(n))
            if (lcm2(d, e) == n) acc += catalog::ramanujan_sum(d, e);
        return rat(static_cast<long>(acc));
      },
      FnClass::multiplicative, "h_ram");
}

FnR embed_first(const FnR& f, int r) {
  if (f.arity() != 1) throw std::invalid_argument("embed_first: f must have arity 1");
  auto eval = [f](const Tuple& t) {
    for (size_t i = 1; i < t.size(); ++i)
      if (t[i] != 1) return rat(0);
    return f({t[0]});
  };
  FnClass cls = FnClass::general;
  if (at_least_multiplicative(f.fn_class())) cls = FnClass::multiplicative;
  return FnR(r, eval, cls, "embed(" + f.name() + ")");
}

IdentityCheck check_dir_convolute_of_g_gcd(const FnR& g, int r, u64 limit) {
  FnR f = catalog::g_of_gcd(g, r);
  FnR lhs = convolute_definitional(ConvoluteKind::dir, f);
  FnR mu = catalog::mobius1();
  FnR mug = convolve(ConvKind::dirichlet, mu, g).memoized();
  FnR taur = tau_r_closed(r);
  IdentityCheck out;
  for (u64 n = 1; n <= limit; ++n) {
    Rat rhs(0);
    for (u64 a = 1;; ++a) {
      u64 ar = ipow(a, static_cast<std::uint32_t>(r));
      if (ar > n) break;
      if (n % ar) continue;
      rhs += mug({a}) * taur({n / ar});
    }
    Rat l = lhs({n});
    if (l != rhs) {
      out.ok = false;
      out.counterexample = n;
      out.lhs = l;
      out.rhs = rhs;
      return out;
    }
  }
  return out;
}

IdentityCheck check_lcm_convolute_of_g_gcd(const FnR& g, int r, u64 limit) {
  FnR f = catalog::g_of_gcd(g, r);
  FnR lhs = convolute_definitional(ConvoluteKind::lcm, f);
  // g * mu * mu * tau^r
  FnR mu = catalog::mobius1();
  FnR tau = catalog::tau1();
  FnR taur(
      1,
      [tau, r](const Tuple& t) { return rat_pow(tau(t), r); }, FnClass::multiplicative,
      "tau^r");
  FnR rhs = convolve(ConvKind::dirichlet,
                     convolve(ConvKind::dirichlet, convolve(ConvKind::dirichlet, g, mu), mu),
                     taur)
                .memoized();
  IdentityCheck out;
  for (u64 n = 1; n <= limit; ++n) {
    Rat l = lhs({n}), rr = rhs({n});
    if (l != rr) {
      out.ok = false;
      out.counterexample = n;
      out.lhs = l;
      out.rhs = rr;
      return out;
    }
  }
  return out;
}

bool homomorphism_check(ConvoluteKind k, const FnR& f, const FnR& g, u64 limit,
                        u64* counterexample) {
  FnR lhs, rhs;
  switch (k) {
    case ConvoluteKind::dir:
      lhs = convolute(k, convolve(ConvKind::dirichlet, f, g));
      rhs = convolve(ConvKind::dirichlet, convolute(k, f), convolute(k, g));
      break;
    case ConvoluteKind::unit:
      lhs = convolute(k, convolve(ConvKind::unitary, f, g));
      rhs = convolve(ConvKind::unitary, convolute(k, f), convolute(k, g));
      break;
    case ConvoluteKind::gcd:
      // the gcd convolute carries the gcd convolution to the unitary one
      lhs = convolute(k, convolve(ConvKind::gcd, f, g));
      rhs = convolve(ConvKind::unitary, convolute(k, f), convolute(k, g));
      break;
    case ConvoluteKind::lcm:
      lhs = convolute(k, convolve(ConvKind::lcm, f, g));
      rhs = convolve(ConvKind::lcm, convolute(k, f), convolute(k, g));
      break;
    case ConvoluteKind::binom:
      lhs = convolute(k, convolve(ConvKind::binomial, f, g));
      rhs = convolve(ConvKind::binomial, convolute(k, f), convolute(k, g));
      break;
  }
  for (u64 n = 1; n <= limit; ++n) {
    if (lhs({n}) != rhs({n})) {
      if (counterexample) *counterexample = n;
      return false;
    }
  }
  return true;
}

}  // namespace multfun
