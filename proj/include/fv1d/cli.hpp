#pragma once

#include <iosfwd>

namespace fv1d {

inline constexpr const char* kVersion = "1.0.0";

namespace cli {

/// Exit codes of the command-line front end.
enum Exit : int {
    Ok = 0,
    BadInput = 2,
    SolverFailure = 3,
    LevelMissing = 4,
    OracleGap = 5,
};

/// Parses argv, runs one command and returns its exit code. Results go to `out`
/// (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace fv1d
