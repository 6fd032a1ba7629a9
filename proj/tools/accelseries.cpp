#include <iostream>

#include "accelseries/cli.hpp"

int main(int argc, char** argv) {
  return accel::cli::main_entry(argc, argv, std::cout, std::cerr);
}
