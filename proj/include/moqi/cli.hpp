#ifndef MOQI_CLI_HPP
#define MOQI_CLI_HPP

namespace moqi {

/// Complete command-line entry point: parses argv, dispatches subcommands
/// (front, indicators, run, timing, trace) and maps failures to exit codes
/// (0 success, 1 data error, 2 usage error). Lives in the library so tests
/// can invoke it in-process; tools/moqi.cpp forwards main() here.
int cli_main(int argc, const char* const* argv);

}  // namespace moqi

#endif  // MOQI_CLI_HPP
