#include <unistd.h>

#include <iostream>

#include "condorcet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return condorcet::cli::dispatch(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
