#include <iostream>

#include "ctfuse/cli.hpp"

int main(int argc, char** argv) {
  return ctfuse::cli::run(argc, argv, std::cout, std::cerr);
}
