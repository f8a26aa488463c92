#include <iostream>
#include <string>
#include <vector>

#include "corrkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return corrkit::cli::run(args, std::cout, std::cerr);
}
