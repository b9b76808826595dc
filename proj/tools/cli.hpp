#pragma once

#include <ostream>

namespace lieseq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,  // Jacobi or weight failure, malformed input
  kVerifyFail = 3,
  kIo = 4,
};

// Entry point of the lieseq tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lieseq::cli
