#include <iostream>

#include "demazure/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  auto res = dmz::cli::run_cli(args);
  std::cout << res.out;
  std::cerr << res.err;
  return res.code;
}
