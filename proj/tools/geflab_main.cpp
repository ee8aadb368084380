#include <string>
#include <vector>

#include "geflab/cli.hpp"

int main(int argc, char** argv) {
  return geflab::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
