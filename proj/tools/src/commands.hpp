#pragma once

#include <CLI11.hpp>

namespace infoflow::cli {

// Registers every subcommand on `app`. A subcommand's callback stores its
// exit code in `exit_code`.
void add_commands(CLI::App& app, int& exit_code);

}  // namespace infoflow::cli
