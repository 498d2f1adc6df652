#include <iostream>

#include "qpg/cli.hpp"

int main(int argc, char** argv) {
  return qpg::cli::run_cli(argc, argv, std::cout, std::cerr);
}
