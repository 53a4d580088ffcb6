#include <iostream>
#include <string>
#include <vector>

#include "milnor/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return milnor::run_cli(args, std::cout, std::cerr);
}
