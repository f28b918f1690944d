#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "multfun/numbers.hpp"
#include "multfun/rational.hpp"

namespace multfun {

using Tuple = std::vector<u64>;           // components >= 1
using Exps = std::vector<std::uint32_t>;  // exponent tuple at one prime

enum class FnClass { general, multiplicative, firmly, completely };

inline bool at_least_multiplicative(FnClass c) { return c != FnClass::general; }

// local data of a multiplicative function: (p; e1..er) -> f(p^e1,..,p^er); value 1 at e = 0
using LocalEval = std::function<Rat(u64 p, const Exps&)>;

// An arithmetic function of r variables with exact rational values. Immutable value
// type; copies share the underlying evaluator. Functions built from local data keep
// it so series/asymptotics can work prime-locally without forming huge arguments.
class FnR {
 public:
  using Eval = std::function<Rat(const Tuple&)>;

  FnR() = default;
  FnR(int arity, Eval eval, FnClass cls = FnClass::general, std::string name = {});

  static FnR from_local(int arity, LocalEval local, FnClass cls, std::string name = {});

  int arity() const;
  FnClass fn_class() const;
  const std::string& name() const;

  Rat operator()(const Tuple& t) const;
  Rat operator()(std::initializer_list<u64> t) const;

  bool has_local() const;
  Rat local(u64 p, const Exps& e) const;  // throws if no local data

  FnR memoized() const;
  FnR with_class(FnClass cls) const;
  FnR with_name(std::string name) const;

  explicit operator bool() const { return impl_ != nullptr; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// product over primes of local values, per the multiplicative determination
Rat eval_multiplicative(int arity, const LocalEval& local, const Tuple& t);

// f(n1,..,nr) = g1(n1)...gr(nr); firmly when every gi is multiplicative,
// completely when every gi is completely multiplicative
FnR from_one_variable_product(const std::vector<FnR>& gs);

FnR diagonal(const FnR& f);  // n -> f(n,..,n)

struct ClassCounterexample {
  Tuple m, n;
};

struct ClassReport {
  std::optional<ClassCounterexample> multiplicative;  // first counterexample, if any
  std::optional<ClassCounterexample> firmly;
  std::optional<ClassCounterexample> completely;
  u64 box = 0;
  bool is_multiplicative() const { return !multiplicative.has_value(); }
  bool is_firmly() const { return !firmly.has_value(); }
  bool is_completely() const { return !completely.has_value(); }
};

// bounded refutation search over pairs (m, n) in ([1,B]^r)^2; not a proof
ClassReport check_class(const FnR& f, u64 box);

// odometer over [1,B]^r, ascending lexicographically
void for_each_tuple(int r, u64 box, const std::function<void(const Tuple&)>& fn);

}  // namespace multfun
