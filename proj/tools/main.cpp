#include <iostream>

#include "rumin/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rumin::run_command(args, std::cout, std::cerr);
}
