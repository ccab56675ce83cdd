#pragma once

#include <string>
#include <vector>

namespace mms {

/// Command-line entry point. Subcommands: source, solve, study-grid,
/// study-increment, export-deck, export-field.
/// Exit codes: 0 success/PASS, 1 acceptance-band FAIL, 2 usage error,
/// 3 solver or I/O error.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

}  // namespace mms
