#include <iostream>
#include <string>
#include <vector>

#include "ucov/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ucov::runMain(args, std::cout, std::cerr);
}
