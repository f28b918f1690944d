#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "multfun/rational.hpp"

namespace multfun::cli {

// exit codes: 0 ok/pass, 1 verification failed, 2 usage error, 3 numeric divergence
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOutcome {
  bool pass = true;
  std::string counterexample;  // empty when pass
  std::string detail;
};

// the named-identity ledger behind `verify`; box semantics are per identity
std::vector<std::string> identity_names();
VerifyOutcome run_identity(const std::string& name, u64 box);

}  // namespace multfun::cli
