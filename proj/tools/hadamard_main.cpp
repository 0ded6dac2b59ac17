#include <iostream>
#include <string>
#include <vector>

#include "hadamard/cli.hpp"

int main(int argc, char** argv) {
  return hadamard::cli::main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
