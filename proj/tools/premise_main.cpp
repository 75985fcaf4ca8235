#include <string>
#include <vector>

#include "premise/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return premise::cli::run(args);
}
