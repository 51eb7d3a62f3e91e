#include <iostream>
#include <string>
#include <vector>

#include "lvie/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return lvie::run_cli(args, std::cout, std::cerr);
}
