#include <iostream>
#include <vector>

#include "aic/cli.hpp"

int main(int argc, char** argv) {
  return aic::cli::run(std::vector<std::string>(argv + 1, argv + argc),
                       std::cout, std::cerr);
}
