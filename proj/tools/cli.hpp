#pragma once

#include <iosfwd>

namespace eigensurf::cli {

/// Exit codes: 0 success, 1 numerical failure, 2 input or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace eigensurf::cli
