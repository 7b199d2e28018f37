#include <iostream>

#include "solitonlab/cli.hpp"

int main(int argc, char** argv) {
  return solitonlab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
