#include <iostream>

#include "k4forms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return k4::run_cli(args, std::cout, std::cerr);
}
