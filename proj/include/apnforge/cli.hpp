#pragma once

#include <iosfwd>
#include <string>

#include "apnforge/scan.hpp"

namespace apnforge {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitConfig = 2, kExitIo = 3 };

// "a:b" or "a". Throws DomainError.
Range parse_range(const std::string& text);

// Entry point of the apnforge tool; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apnforge
