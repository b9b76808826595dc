// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "lieseq/verify.hpp"

int main() {
  const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  int failures = 0;
  for (int k = 1; k <= lieseq::verify::kCriteria; ++k) {
    const auto v = lieseq::verify::criterion(k, threads);
    std::cout << "criterion " << k << ": " << lieseq::verify::render_line(v, true) << std::endl;
    if (!v.pass) ++failures;
  }
  std::cout << (lieseq::verify::kCriteria - failures) << "/" << lieseq::verify::kCriteria << " criteria passed\n";
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
