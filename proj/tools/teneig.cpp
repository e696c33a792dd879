#include <iostream>

#include "teneig/cli.hpp"

int main(int argc, char** argv) {
  return teneig::cli_main(argc, argv, std::cout, std::cerr);
}
