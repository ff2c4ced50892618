#include <iostream>
#include <string>
#include <vector>

#include "qroof/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qroof::cli::run(args, std::cout, std::cerr);
}
