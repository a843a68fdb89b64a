#include <iostream>
#include <string>
#include <vector>

#include "rgg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rgg::cli::run(args, std::cout, std::cerr);
}
