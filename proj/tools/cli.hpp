#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace holo::cli {

enum ExitCode { ok = 0, usage = 1, cap_exceeded = 2, verification_failed = 3 };

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path);

/// Runs one command line. Output goes to out, errors as a JSON object to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holo::cli
