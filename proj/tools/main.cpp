#include <iostream>

#include "quadseq/cli.hpp"

int main(int argc, char** argv) {
  return quadseq::cli::run(argc, argv, std::cout, std::cerr);
}
