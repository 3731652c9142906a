#include <iostream>
#include <string>
#include <vector>

#include "secpur/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return secpur::cli::run(args, std::cout, std::cerr);
}
