#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace coversys::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2 };

/// `args` excludes the program name. JSON goes to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace coversys::cli
