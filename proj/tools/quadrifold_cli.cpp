#include <iostream>
#include <vector>

#include "quadrifold/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string report;
  int code = quadrifold::cli_run(args, &report);
  std::cout << report;
  return code;
}
