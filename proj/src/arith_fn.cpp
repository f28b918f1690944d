#include "multfun/arith_fn.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace multfun {

struct FnR::Impl {
  int arity = 1;
  Eval eval;
  FnClass cls = FnClass::general;
  std::string name;
  LocalEval local;  // empty unless built from local data
  mutable std::mutex memo_mutex;
  mutable std::map<Tuple, Rat> memo;
  bool use_memo = false;
};

FnR::FnR(int arity, Eval eval, FnClass cls, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->arity = arity;
  impl->eval = std::move(eval);
  impl->cls = cls;
  impl->name = std::move(name);
  impl_ = std::move(impl);
}

FnR FnR::from_local(int arity, LocalEval local, FnClass cls, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->arity = arity;
  impl->cls = cls == FnClass::general ? FnClass::multiplicative : cls;
  impl->name = std::move(name);
  impl->local = local;
  impl->eval = [arity, local](const Tuple& t) { return eval_multiplicative(arity, local, t); };
  FnR f;
  f.impl_ = std::move(impl);
  return f;
}

int FnR::arity() const { return impl_->arity; }
FnClass FnR::fn_class() const { return impl_->cls; }
const std::string& FnR::name() const { return impl_->name; }
bool FnR::has_local() const { return static_cast<bool>(impl_->local); }

Rat FnR::local(u64 p, const Exps& e) const {
  if (!impl_->local) throw std::logic_error("FnR: no local data for " + impl_->name);
  return impl_->local(p, e);
}

Rat FnR::operator()(const Tuple& t) const {
  if (static_cast<int>(t.size()) != impl_->arity)
    throw std::invalid_argument("FnR: arity mismatch in " + impl_->name);
  if (!impl_->use_memo) return impl_->eval(t);
  {
    std::lock_guard lk(impl_->memo_mutex);
    auto it = impl_->memo.find(t);
    if (it != impl_->memo.end()) return it->second;
  }
  Rat v = impl_->eval(t);
  std::lock_guard lk(impl_->memo_mutex);
  impl_->memo.emplace(t, v);
  return v;
}

Rat FnR::operator()(std::initializer_list<u64> t) const { return (*this)(Tuple(t)); }

FnR FnR::memoized() const {
  auto impl = std::make_shared<Impl>();
  impl->arity = impl_->arity;
  impl->eval = impl_->eval;
  impl->cls = impl_->cls;
  impl->name = impl_->name;
  impl->local = impl_->local;
  impl->use_memo = true;
  FnR f;
  f.impl_ = std::move(impl);
  return f;
}

FnR FnR::with_class(FnClass cls) const {
  auto impl = std::make_shared<Impl>();
  impl->arity = impl_->arity;
  impl->eval = impl_->eval;
  impl->cls = cls;
  impl->name = impl_->name;
  impl->local = impl_->local;
  impl->use_memo = impl_->use_memo;
  FnR f;
  f.impl_ = std::move(impl);
  return f;
}

FnR FnR::with_name(std::string name) const {
  auto impl = std::make_shared<Impl>();
  impl->arity = impl_->arity;
  impl->eval = impl_->eval;
  impl->cls = impl_->cls;
  impl->name = std::move(name);
  impl->local = impl_->local;
  impl->use_memo = impl_->use_memo;
  FnR f;
  f.impl_ = std::move(impl);
  return f;
}

Rat eval_multiplicative(int arity, const LocalEval& local, const Tuple& t) {
  if (static_cast<int>(t.size()) != arity)
    throw std::invalid_argument("eval_multiplicative: arity mismatch");
  std::vector<Factorization> fs;
  fs.reserve(t.size());
  for (u64 n : t) fs.push_back(factorize(n));
  std::vector<u64> primes;
  for (const auto& f : fs)
    for (const auto& pp : f.factors) primes.push_back(pp.p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  Rat out(1);
  Exps e(t.size());
  for (u64 p : primes) {
    for (size_t i = 0; i < t.size(); ++i) e[i] = fs[i].exponent_of(p);
    out *= local(p, e);
  }
  return out;
}

FnR from_one_variable_product(const std::vector<FnR>& gs) {
  if (gs.empty()) throw std::invalid_argument("from_one_variable_product: no factors");
  for (const auto& g : gs)
    if (g.arity() != 1)
      throw std::invalid_argument("from_one_variable_product: factors must have arity 1");
  int r = static_cast<int>(gs.size());
  bool all_mult = true, all_compl = true;
  bool all_local = true;
  for (const auto& g : gs) {
    all_mult &= at_least_multiplicative(g.fn_class());
    all_compl &= g.fn_class() == FnClass::completely;
    all_local &= g.has_local();
  }
  FnClass cls = all_compl ? FnClass::completely : (all_mult ? FnClass::firmly : FnClass::general);
  std::string nm = "lift(";
  for (int i = 0; i < r; ++i) nm += (i ? "," : "") + gs[i].name();
  nm += ")";
  if (all_mult && all_local) {
    auto gs_copy = gs;
    return FnR::from_local(
        r,
        [gs_copy](u64 p, const Exps& e) {
          Rat v(1);
          for (size_t i = 0; i < gs_copy.size(); ++i) v *= gs_copy[i].local(p, Exps{e[i]});
          return v;
        },
        cls, nm);
  }
  auto gs_copy = gs;
  return FnR(
      r,
      [gs_copy](const Tuple& t) {
        Rat v(1);
        for (size_t i = 0; i < gs_copy.size(); ++i) v *= gs_copy[i]({t[i]});
        return v;
      },
      cls, nm);
}

FnR diagonal(const FnR& f) {
  int r = f.arity();
  FnClass cls = at_least_multiplicative(f.fn_class()) ? FnClass::multiplicative : FnClass::general;
  std::string nm = "diag(" + f.name() + ")";
  if (f.has_local() && at_least_multiplicative(f.fn_class())) {
    return FnR::from_local(
        1,
        [f, r](u64 p, const Exps& e) { return f.local(p, Exps(r, e[0])); },
        cls, nm);
  }
  return FnR(
      1, [f, r](const Tuple& t) { return f(Tuple(r, t[0])); }, cls, nm);
}

void for_each_tuple(int r, u64 box, const std::function<void(const Tuple&)>& fn) {
  Tuple t(r, 1);
  while (true) {
    fn(t);
    int i = r - 1;
    while (i >= 0 && t[i] == box) t[i--] = 1;
    if (i < 0) break;
    ++t[i];
  }
}

namespace {

u64 tuple_prod(const Tuple& t) {
  u64 v = 1;
  for (u64 x : t) v *= x;
  return v;
}

}  // namespace

ClassReport check_class(const FnR& f, u64 box) {
  if (box < 2) throw std::invalid_argument("check_class: box must be >= 2");
  int r = f.arity();
  FnR g = f.memoized();  // products m_i n_i repeat heavily across pairs
  ClassReport rep;
  rep.box = box;
  std::vector<Tuple> ts;
  for_each_tuple(r, box, [&](const Tuple& t) { ts.push_back(t); });
  std::map<Tuple, Rat> val;
  for (const auto& t : ts) val.emplace(t, g(t));
  for (const auto& m : ts) {
    for (const auto& n : ts) {
      Tuple mn(r);
      for (int i = 0; i < r; ++i) mn[i] = m[i] * n[i];
      Rat lhs = g(mn);
      Rat rhs = val.at(m) * val.at(n);
      bool eq = lhs == rhs;
      if (eq) continue;
      if (!rep.completely) rep.completely = ClassCounterexample{m, n};
      if (!rep.firmly) {
        bool comp_coprime = true;
        for (int i = 0; i < r; ++i)
          if (std::gcd(m[i], n[i]) != 1) comp_coprime = false;
        if (comp_coprime) rep.firmly = ClassCounterexample{m, n};
      }
      if (!rep.multiplicative) {
        if (std::gcd(tuple_prod(m), tuple_prod(n)) == 1)
          rep.multiplicative = ClassCounterexample{m, n};
      }
      if (rep.multiplicative && rep.firmly && rep.completely) return rep;
    }
  }
  return rep;
}

}  // namespace multfun
