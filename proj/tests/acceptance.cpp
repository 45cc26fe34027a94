// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance [desk|quick]

#include <cstring>
#include <iomanip>
#include <iostream>

#include <sys/resource.h>

#include "homcount/acceptance.hpp"

namespace {

long peak_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss / 1024;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace homcount::acceptance;
  const bool quick = argc > 1 && std::strcmp(argv[1], "quick") == 0;
  Suite suite(quick ? Config::quick() : Config::desk());
  int failed = 0;
  suite.run_all([&](const Outcome& o) {
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << o.id << ": " << o.title << "  ["
              << std::fixed << std::setprecision(1) << o.seconds << "s, peak " << peak_mib() << " MiB]  " << o.detail << std::endl;
  });
  std::cout << (failed ? "FAILED " : "all passed ") << "(" << 8 - failed << "/8)" << std::endl;
  return failed ? 1 : 0;
}
