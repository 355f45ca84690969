#include <iostream>
#include <string>
#include <vector>

#include "qsl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qsl::cli::run(args, std::cout, std::cerr);
}
