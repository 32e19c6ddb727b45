#include <iostream>
#include <string>
#include <vector>

#include "bose/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bose::cli::run(args, std::cout, std::cerr);
}
