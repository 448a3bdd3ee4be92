#pragma once

#include <iosfwd>

namespace edifice::cli {

/// Entry point shared by the binary and the tests.  Exit codes: 0 success,
/// 2 input/parse error, 3 infeasible or empty result.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edifice::cli
