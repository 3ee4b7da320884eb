// Acceptance run: one PASS/FAIL line per criterion with measured values and wall time.
#include <cstdio>
#include <string>

#include "painleve/suite.hpp"

int main() {
  using namespace painleve;
  suite::Options opt;
  suite::Notes notes;
  const auto results = suite::run_all(opt, &notes);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-52s %7.2fs (budget %gs)  %s\n", r.passed() ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.budget, r.detail.c_str());
    if (r.id == 1) std::printf("       info: %s\n", notes.rotation.c_str());
    if (r.id == 5) std::printf("       info: %s\n", notes.exponent.c_str());
    failed += r.passed() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
