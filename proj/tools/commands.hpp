#pragma once

namespace kitaev::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIllDefined = 3;

/// Parses the command line, runs one command, returns the exit code.
int run(int argc, char** argv);

}  // namespace kitaev::cli
