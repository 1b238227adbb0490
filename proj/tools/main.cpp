#include <iostream>
#include <string>
#include <vector>

#include "aesq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return aesq::run_cli(args, std::cout, std::cerr);
}
