#pragma once

#include <string>
#include <vector>

namespace geflab::cli {

/// Parses and executes one command. `args` excludes the program name.
/// Returns 0 on success, 1 on runtime/convergence errors, 2 on usage errors.
int run(const std::vector<std::string>& args);

}  // namespace geflab::cli
