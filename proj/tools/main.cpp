#include <iostream>

#include "svgscatter/cli.hpp"

int main(int argc, char** argv) {
  return svgscatter::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
