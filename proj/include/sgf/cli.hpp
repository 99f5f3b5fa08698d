#pragma once

#include <iosfwd>

namespace sgf {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_holds = 0,    ///< property holds / object found
    exit_fails = 1,    ///< property fails / not found / search exhausted
    exit_usage = 2,    ///< usage, input or contract error
    exit_resource = 3, ///< size guard tripped
};

/// Entry point of the `sgf` tool; results go to `out` as JSON, diagnostics to `err`.
auto cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) -> int;

} // namespace sgf
