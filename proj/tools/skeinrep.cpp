#include <iostream>

#include "skein/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return skein::run_cli(args, std::cout, std::cerr);
}
