#pragma once

#include <iosfwd>

namespace dioph {

/// Exit codes: 0 pass, 1 failure or survivor, 2 incomplete, 3 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dioph
