#include <iostream>

#include "vegraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vegraph::cli::run(args, std::cout, std::cerr);
}
