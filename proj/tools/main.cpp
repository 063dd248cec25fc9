#include <iostream>
#include <string>
#include <vector>

#include "infmax/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return infmax::cli::run(std::move(args), std::cout, std::cerr);
}
