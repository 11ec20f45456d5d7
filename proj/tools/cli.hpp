#pragma once

#include <ostream>

namespace dlap::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kDomain = 3,
  kUnsupported = 4,
  kUnknownCheck = 5,
};

/// Entry point shared by the executable and the golden tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dlap::cli
