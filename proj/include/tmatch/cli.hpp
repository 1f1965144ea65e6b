#pragma once

#include <iosfwd>

namespace tmatch {

/// Runs the command-line tool. Exit codes: 0 success, 1 property violation,
/// 2 input error, 3 inconclusive (budget exhausted).
int cli_dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tmatch
