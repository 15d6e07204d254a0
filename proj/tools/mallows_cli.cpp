#include <iostream>
#include <string>
#include <vector>

#include <mallows/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mallows::cli::run_cli(std::move(args), std::cout, std::cerr);
}
