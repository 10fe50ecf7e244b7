#pragma once

#include <iosfwd>

namespace htwist::cli {

/// Exit status: 0 residuals zero or computation done, 1 validation failure, 2 malformed input or usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace htwist::cli
