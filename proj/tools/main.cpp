#include <iostream>
#include <string>
#include <vector>

#include "k3cusps/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  k3cusps::CommandResult res = k3cusps::run_command(args);
  std::cout << res.output;
  return res.exit_code;
}
