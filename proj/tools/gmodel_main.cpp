#include <iostream>
#include <string>
#include <vector>

#include "gmodel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmodel::run_cli(args, std::cout, std::cerr);
}
