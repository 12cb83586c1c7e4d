#include <iostream>

#include "rdk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rdk::run_cli(args, std::cout, std::cerr);
}
