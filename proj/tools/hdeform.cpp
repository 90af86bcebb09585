#include <iostream>

#include "hdeform/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hdeform::cli::run(args, std::cout, std::cerr);
}
