#include "multfun/convolution.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace multfun {

const char* conv_kind_name(ConvKind k) {
  switch (k) {
    case ConvKind::dirichlet: return "dir";
    case ConvKind::unitary: return "unit";
    case ConvKind::gcd: return "gcd";
    case ConvKind::lcm: return "lcm";
    case ConvKind::binomial: return "binom";
  }
  return "?";
}

FnR identity_fn(int r) {
  return FnR::from_local(
      r,
      [](u64, const Exps& e) {
        for (auto x : e)
          if (x) return rat(0);
        return rat(1);
      },
      FnClass::completely, "delta");
}

FnR one_fn(int r) {
  return FnR::from_local(
      r, [](u64, const Exps&) { return rat(1); }, FnClass::completely, "one");
}

namespace {

// weight prod_p C(nu_p(n), nu_p(d)) of one coordinate in the binomial convolution
Rat binom_weight(u64 n, u64 d) {
  Int w(1);
  for (const auto& pp : factorize(n).factors) {
    std::uint32_t ed = factorize(d).exponent_of(pp.p);
    w *= binomial_int(pp.e, ed);
  }
  return Rat(w);
}

void for_each_exps_below(const Exps& bound, const std::function<void(const Exps&)>& fn) {
  Exps e(bound.size(), 0);
  while (true) {
    fn(e);
    size_t i = 0;
    while (i < e.size() && e[i] == bound[i]) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
}

bool all_zero(const Exps& e) {
  for (auto x : e)
    if (x) return false;
  return true;
}

// per-prime composition rules for the five convolutions
LocalEval combined_local(ConvKind k, const FnR& f, const FnR& g) {
  switch (k) {
    case ConvKind::dirichlet:
      return [f, g](u64 p, const Exps& nu) -> Rat {
        Rat acc(0);
        for_each_exps_below(nu, [&](const Exps& e) {
          Exps c(nu.size());
          for (size_t i = 0; i < nu.size(); ++i) c[i] = nu[i] - e[i];
          acc += f.local(p, e) * g.local(p, c);
        });
        return acc;
      };
    case ConvKind::unitary:
      return [f, g](u64 p, const Exps& nu) {
        Rat acc(0);
        size_t r = nu.size();
        for (u64 mask = 0; mask < (u64(1) << r); ++mask) {
          Exps e(r, 0), c(r, 0);
          bool skip = false;
          for (size_t i = 0; i < r; ++i) {
            if (mask >> i & 1) {
              if (nu[i] == 0) { skip = true; break; }
              e[i] = nu[i];
            } else {
              c[i] = nu[i];
            }
          }
          if (skip) continue;
          acc += f.local(p, e) * g.local(p, c);
        }
        return acc;
      };
    case ConvKind::gcd:
      // at a single prime the cross-coprimality forces one side to take it all
      return [f, g](u64 p, const Exps& nu) -> Rat {
        if (all_zero(nu)) return Rat(f.local(p, nu) * g.local(p, nu));
        Exps zero(nu.size(), 0);
        return Rat(f.local(p, nu) * g.local(p, zero) + f.local(p, zero) * g.local(p, nu));
      };
    case ConvKind::lcm:
      return [f, g](u64 p, const Exps& nu) {
        // pairs (a, b) <= nu componentwise with max(a_i, b_i) = nu_i
        size_t r = nu.size();
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> choices(r);
        for (size_t i = 0; i < r; ++i) {
          for (std::uint32_t b = 0; b <= nu[i]; ++b) choices[i].push_back({nu[i], b});
          for (std::uint32_t a = 0; a < nu[i]; ++a) choices[i].push_back({a, nu[i]});
        }
        Rat acc(0);
        std::vector<size_t> idx(r, 0);
        Exps a(r), b(r);
        while (true) {
          for (size_t i = 0; i < r; ++i) {
            a[i] = choices[i][idx[i]].first;
            b[i] = choices[i][idx[i]].second;
          }
          acc += f.local(p, a) * g.local(p, b);
          size_t i = 0;
          while (i < r && ++idx[i] == choices[i].size()) idx[i++] = 0;
          if (i == r) break;
        }
        return acc;
      };
    case ConvKind::binomial:
      return [f, g](u64 p, const Exps& nu) {
        Rat acc(0);
        for_each_exps_below(nu, [&](const Exps& e) {
          Exps c(nu.size());
          Int w(1);
          for (size_t i = 0; i < nu.size(); ++i) {
            c[i] = nu[i] - e[i];
            w *= binomial_int(nu[i], e[i]);
          }
          acc += Rat(w) * f.local(p, e) * g.local(p, c);
        });
        return acc;
      };
  }
  throw std::logic_error("combined_local: bad kind");
}

FnClass result_class(ConvKind k, FnClass a, FnClass b) {
  if (!at_least_multiplicative(a) || !at_least_multiplicative(b)) return FnClass::general;
  bool both_firm = (a == FnClass::firmly || a == FnClass::completely) &&
                   (b == FnClass::firmly || b == FnClass::completely);
  switch (k) {
    case ConvKind::dirichlet:
    case ConvKind::unitary:
      return both_firm ? FnClass::firmly : FnClass::multiplicative;
    case ConvKind::binomial:
      if (a == FnClass::completely && b == FnClass::completely) return FnClass::completely;
      return both_firm ? FnClass::firmly : FnClass::multiplicative;
    case ConvKind::gcd:
    case ConvKind::lcm:
      return FnClass::multiplicative;
  }
  return FnClass::multiplicative;
}

void check_same_arity(const FnR& f, const FnR& g) {
  if (f.arity() != g.arity())
    throw std::invalid_argument("convolve: arity mismatch between " + f.name() + " and " +
                                g.name());
}

}  // namespace

FnR convolve_definitional(ConvKind k, const FnR& f, const FnR& g) {
  check_same_arity(f, g);
  int r = f.arity();
  std::string nm = std::string(conv_kind_name(k)) + "(" + f.name() + "," + g.name() + ")";
  FnClass cls = result_class(k, f.fn_class(), g.fn_class());
  auto eval = [k, f, g, r](const Tuple& t) {
    Rat acc(0);
    if (k == ConvKind::lcm) {
      // per coordinate, all (d, e) with lcm(d, e) = t_i
      std::vector<std::vector<std::pair<u64, u64>>> choices(r);
      for (int i = 0; i < r; ++i) {
        for (u64 d : divisors(t[i]))
          for (u64 e : divisors(t[i]))
            if (lcm2(d, e) == t[i]) choices[i].push_back({d, e});
      }
      std::vector<size_t> idx(r, 0);
      Tuple d(r), e(r);
      while (true) {
        for (int i = 0; i < r; ++i) {
          d[i] = choices[i][idx[i]].first;
          e[i] = choices[i][idx[i]].second;
        }
        acc += f(d) * g(e);
        int i = 0;
        while (i < r && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == r) break;
      }
      return acc;
    }
    std::vector<const std::vector<u64>*> divs(r);
    for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
    std::vector<size_t> idx(r, 0);
    Tuple d(r), e(r);
    while (true) {
      bool ok = true;
      for (int i = 0; i < r; ++i) {
        d[i] = (*divs[i])[idx[i]];
        e[i] = t[i] / d[i];
      }
      Rat w(1);
      switch (k) {
        case ConvKind::dirichlet:
          break;
        case ConvKind::unitary:
          for (int i = 0; i < r && ok; ++i)
            if (std::gcd(d[i], e[i]) != 1) ok = false;
          break;
        case ConvKind::gcd:
          // gcd(d1..dr, e1..er) = 1 iff every cross pair is coprime
          for (int i = 0; i < r && ok; ++i)
            for (int j = 0; j < r && ok; ++j)
              if (std::gcd(d[i], e[j]) != 1) ok = false;
          break;
        case ConvKind::binomial:
          for (int i = 0; i < r; ++i) w *= binom_weight(t[i], d[i]);
          break;
        case ConvKind::lcm:
          break;
      }
      if (ok) acc += w * f(d) * g(e);
      int i = 0;
      while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
      if (i == r) break;
    }
    return acc;
  };
  return FnR(r, eval, cls, nm).memoized();
}

FnR convolve(ConvKind k, const FnR& f, const FnR& g) {
  check_same_arity(f, g);
  if (f.has_local() && g.has_local() && at_least_multiplicative(f.fn_class()) &&
      at_least_multiplicative(g.fn_class())) {
    std::string nm = std::string(conv_kind_name(k)) + "(" + f.name() + "," + g.name() + ")";
    return FnR::from_local(f.arity(), combined_local(k, f, g),
                           result_class(k, f.fn_class(), g.fn_class()), nm);
  }
  return convolve_definitional(k, f, g);
}

namespace {

// local inverse solved per prime by recursion on exponent tuples
class LocalInverse {
 public:
  LocalInverse(ConvKind k, FnR f) : kind_(k), f_(std::move(f)) {}

  Rat operator()(u64 p, const Exps& nu) {
    if (all_zero(nu)) return rat(1);
    std::pair<u64, Exps> key{p, nu};
    {
      std::lock_guard lk(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Rat v = solve(p, nu);
    std::lock_guard lk(mutex_);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  Rat solve(u64 p, const Exps& nu) {
    size_t r = nu.size();
    Rat acc(0);
    switch (kind_) {
      case ConvKind::dirichlet: {
        for_each_exps_below(nu, [&](const Exps& e) {
          if (e == nu) return;
          Exps c(r);
          for (size_t i = 0; i < r; ++i) c[i] = nu[i] - e[i];
          acc += f_.local(p, c) * (*this)(p, e);
        });
        return -acc;
      }
      case ConvKind::unitary: {
        for (u64 mask = 0; mask < (u64(1) << r); ++mask) {
          Exps e(r, 0), c(r, 0);
          bool skip = false;
          for (size_t i = 0; i < r; ++i) {
            if (mask >> i & 1) {
              if (nu[i] == 0) { skip = true; break; }
              e[i] = nu[i];
            } else {
              c[i] = nu[i];
            }
          }
          if (skip || e == nu) continue;
          acc += f_.local(p, c) * (*this)(p, e);
        }
        return -acc;
      }
      case ConvKind::gcd:
        // g(nu) = -f(nu) at every prime power block
        return -f_.local(p, nu);
      case ConvKind::binomial: {
        for_each_exps_below(nu, [&](const Exps& e) {
          if (e == nu) return;
          Exps c(r);
          Int w(1);
          for (size_t i = 0; i < r; ++i) {
            c[i] = nu[i] - e[i];
            w *= binomial_int(nu[i], e[i]);
          }
          acc += Rat(w) * f_.local(p, c) * (*this)(p, e);
        });
        return -acc;
      }
      case ConvKind::lcm:
        throw std::logic_error("LocalInverse: lcm handled separately");
    }
    throw std::logic_error("LocalInverse: bad kind");
  }

  ConvKind kind_;
  FnR f_;
  std::mutex mutex_;
  std::map<std::pair<u64, Exps>, Rat> memo_;
};

// global recursive solve for functions without local data
class GlobalInverse {
 public:
  GlobalInverse(ConvKind k, FnR f) : kind_(k), f_(std::move(f)) {
    f1_ = f_(Tuple(f_.arity(), 1));
    if (f1_ == 0) throw NotInvertibleError(Tuple(f_.arity(), 1));
  }

  Rat operator()(const Tuple& t) {
    bool unit = true;
    for (u64 x : t)
      if (x != 1) unit = false;
    if (unit) return 1 / f1_;
    {
      std::lock_guard lk(mutex_);
      auto it = memo_.find(t);
      if (it != memo_.end()) return it->second;
    }
    Rat v = solve(t);
    std::lock_guard lk(mutex_);
    memo_.emplace(t, v);
    return v;
  }

 private:
  Rat solve(const Tuple& t) {
    int r = f_.arity();
    std::vector<const std::vector<u64>*> divs(r);
    for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
    std::vector<size_t> idx(r, 0);
    Tuple d(r), e(r);
    Rat acc(0);
    while (true) {
      for (int i = 0; i < r; ++i) {
        d[i] = (*divs[i])[idx[i]];
        e[i] = t[i] / d[i];
      }
      bool self = d == t;
      bool ok = !self;
      Rat w(1);
      if (ok) switch (kind_) {
          case ConvKind::dirichlet:
            break;
          case ConvKind::unitary:
            for (int i = 0; i < r && ok; ++i)
              if (std::gcd(d[i], e[i]) != 1) ok = false;
            break;
          case ConvKind::gcd:
            for (int i = 0; i < r && ok; ++i)
              for (int j = 0; j < r && ok; ++j)
                if (std::gcd(d[i], e[j]) != 1) ok = false;
            break;
          case ConvKind::binomial:
            for (int i = 0; i < r; ++i) w *= binom_weight(t[i], d[i]);
            break;
          case ConvKind::lcm:
            throw std::logic_error("GlobalInverse: lcm handled separately");
        }
      if (ok) acc += w * f_(e) * (*this)(d);
      int i = 0;
      while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
      if (i == r) break;
    }
    return -acc / f1_;
  }

  ConvKind kind_;
  FnR f_;
  Rat f1_;
  std::mutex mutex_;
  std::map<Tuple, Rat> memo_;
};

FnR mu_r_fn(int r);

FnR inverse_lcm(const FnR& f) {
  // Prop 4 reduction: (f (+) g = delta) iff (g * 1_r) = 1/(f * 1_r) pointwise
  int r = f.arity();
  FnR conv1 = convolve(ConvKind::dirichlet, f, one_fn(r)).memoized();
  FnR mu = mu_r_fn(r);
  FnClass cls =
      at_least_multiplicative(f.fn_class()) ? FnClass::multiplicative : FnClass::general;
  auto eval = [conv1, mu, r](const Tuple& t) {
    Rat acc(0);
    std::vector<const std::vector<u64>*> divs(r);
    for (int i = 0; i < r; ++i) divs[i] = &divisors(t[i]);
    std::vector<size_t> idx(r, 0);
    Tuple d(r), e(r);
    while (true) {
      for (int i = 0; i < r; ++i) {
        d[i] = (*divs[i])[idx[i]];
        e[i] = t[i] / d[i];
      }
      Rat c1 = conv1(d);
      if (c1 == 0) throw NotInvertibleError(d);
      acc += mu(e) / c1;
      int i = 0;
      while (i < r && ++idx[i] == divs[i]->size()) idx[i++] = 0;
      if (i == r) break;
    }
    return acc;
  };
  return FnR(r, eval, cls, "inv_lcm(" + f.name() + ")").memoized();
}

FnR mu_r_fn(int r) {
  return FnR::from_local(
      r,
      [](u64, const Exps& e) {
        Rat v(1);
        for (auto x : e) {
          if (x >= 2) return rat(0);
          if (x == 1) v = -v;
        }
        return v;
      },
      FnClass::firmly, "mu_r");
}

}  // namespace

FnR inverse(ConvKind k, const FnR& f) {
  int r = f.arity();
  if (k == ConvKind::lcm) return inverse_lcm(f);
  if (f(Tuple(r, 1)) == 0) throw NotInvertibleError(Tuple(r, 1));
  std::string nm = std::string("inv_") + conv_kind_name(k) + "(" + f.name() + ")";
  if (f.has_local() && at_least_multiplicative(f.fn_class())) {
    auto inv = std::make_shared<LocalInverse>(k, f);
    FnClass cls = f.fn_class();
    if (k != ConvKind::binomial && cls == FnClass::completely) cls = FnClass::firmly;
    if (k == ConvKind::gcd) cls = FnClass::multiplicative;
    return FnR::from_local(
        r, [inv](u64 p, const Exps& e) { return (*inv)(p, e); }, cls, nm);
  }
  auto inv = std::make_shared<GlobalInverse>(k, f);
  return FnR(
      r, [inv](const Tuple& t) { return (*inv)(t); },
      at_least_multiplicative(f.fn_class()) ? FnClass::multiplicative : FnClass::general, nm);
}

FnR lcm_via_dirichlet(const FnR& f, const FnR& g) {
  check_same_arity(f, g);
  int r = f.arity();
  FnR one = one_fn(r);
  FnR h = pointwise_mul(convolve(ConvKind::dirichlet, f, one),
                        convolve(ConvKind::dirichlet, g, one));
  FnR out = convolve(ConvKind::dirichlet, h, mobius_fn(ConvKind::dirichlet, r));
  return out.with_name("lcm_via_dir(" + f.name() + "," + g.name() + ")");
}

bool binomial_iso_check(const FnR& f, const FnR& g, u64 box) {
  check_same_arity(f, g);
  int r = f.arity();
  FnR xi = xi_r_fn(r);
  FnR lhs = convolve_definitional(ConvKind::binomial, f, g);
  auto over_xi = [&](const FnR& h) {
    return FnR(
        r, [h, xi](const Tuple& t) -> Rat { return Rat(h(t) / xi(t)); }, FnClass::general,
        h.name() + "/xi");
  };
  FnR rhs_core = convolve_definitional(ConvKind::dirichlet, over_xi(f), over_xi(g));
  bool ok = true;
  for_each_tuple(r, box, [&](const Tuple& t) {
    if (!ok) return;
    if (lhs(t) != xi(t) * rhs_core(t)) ok = false;
  });
  return ok;
}

FnR mobius_fn(ConvKind k, int r) {
  switch (k) {
    case ConvKind::dirichlet:
      return mu_r_fn(r);
    case ConvKind::unitary:
      // (-1)^{omega(n1)+...+omega(nr)}
      return FnR::from_local(
          r,
          [](u64, const Exps& e) {
            Rat v(1);
            for (auto x : e)
              if (x >= 1) v = -v;
            return v;
          },
          FnClass::firmly, "mu_unit_r");
    case ConvKind::gcd:
      // (-1)^{omega(n1...nr)}
      return FnR::from_local(
          r,
          [](u64, const Exps& e) {
            for (auto x : e)
              if (x >= 1) return rat(-1);
            return rat(1);
          },
          FnClass::multiplicative, "mu_gcd_r");
    case ConvKind::lcm:
      // prod over nu_i >= 1 of -1/(nu_i (nu_i + 1)); the computed inverse of 1_r
      return FnR::from_local(
          r,
          [](u64, const Exps& e) {
            Rat v(1);
            for (auto x : e)
              if (x >= 1) v *= rat(-1, static_cast<long>(x) * (x + 1));
            return v;
          },
          FnClass::multiplicative, "mu_lcm_r");
    case ConvKind::binomial:
      // lambda_r = (-1)^{Omega(n1)+...+Omega(nr)}
      return FnR::from_local(
          r,
          [](u64, const Exps& e) {
            std::uint64_t s = 0;
            for (auto x : e) s += x;
            return s % 2 ? rat(-1) : rat(1);
          },
          FnClass::completely, "lambda_r");
  }
  throw std::logic_error("mobius_fn: bad kind");
}

FnR pointwise_mul(const FnR& f, const FnR& g) {
  check_same_arity(f, g);
  FnClass cls = FnClass::general;
  if (at_least_multiplicative(f.fn_class()) && at_least_multiplicative(g.fn_class()))
    cls = FnClass::multiplicative;
  std::string nm = "mul(" + f.name() + "," + g.name() + ")";
  if (f.has_local() && g.has_local() && cls == FnClass::multiplicative) {
    return FnR::from_local(
        f.arity(), [f, g](u64 p, const Exps& e) -> Rat { return Rat(f.local(p, e) * g.local(p, e)); },
        cls, nm);
  }
  return FnR(
      f.arity(), [f, g](const Tuple& t) -> Rat { return Rat(f(t) * g(t)); }, cls, nm);
}

FnR pointwise_add(const FnR& f, const FnR& g) {
  check_same_arity(f, g);
  return FnR(
      f.arity(), [f, g](const Tuple& t) -> Rat { return Rat(f(t) + g(t)); }, FnClass::general,
      "add(" + f.name() + "," + g.name() + ")");
}

FnR xi_r_fn(int r) {
  return FnR::from_local(
      r,
      [](u64, const Exps& e) {
        Int v(1);
        for (auto x : e) v *= factorial_int(x);
        return Rat(v);
      },
      FnClass::firmly, "xi_r");
}

}  // namespace multfun
