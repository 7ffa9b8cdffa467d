#include <iostream>

#include "seriesroot/cli.hpp"

int main(int argc, char** argv) {
  return seriesroot::cli::run(argc, argv, std::cout, std::cerr);
}
