#include <iostream>

#include "factorlab/cli.hpp"

int main(int argc, char** argv) {
  return factorlab::run_cli(argc, argv, std::cout, std::cerr);
}
