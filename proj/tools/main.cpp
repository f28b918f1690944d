#include <iostream>
#include <vector>

#include "multfun/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return multfun::cli::run(args, std::cout, std::cerr);
}
