#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cogatr/errors.hpp"

namespace cogatr::cli {

class UsageError : public Error {
public:
    using Error::Error;
};

/// --help was requested; the message is the help text.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct CliCommand {
    std::string verb;
    std::string config_path;
    std::string out_dir;
    std::vector<std::pair<std::string, std::string>> overrides;
};

const std::vector<std::string>& verbs();

/// `cogatr <verb> --config <path> --out <dir> [--set key=value ...]`.
/// Throws UsageError.
CliCommand parse_args(const std::vector<std::string>& argv);

/// Runs the command; returns 0, 1 on runtime error (diagnostic on `err`).
int execute(const CliCommand& cmd, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit code 2 on usage errors (0 for --help).
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cogatr::cli
