#pragma once

#include <string>
#include <vector>

namespace k3cusps {

// Exit codes: 0 for any clean run (mathematical verdicts live in the
// report), 1 for internal assertion failures, 2 for malformed input.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

CommandResult run_command(const std::vector<std::string>& args);

}  // namespace k3cusps
