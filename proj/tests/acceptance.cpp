// One line per acceptance criterion: verdict, failed configurations, wall time
// against the runtime bound. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "tamegal/report.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 0;
  constexpr double kSuiteBudget = 300.0;
  bool all = true;
  double total = 0;
  for (const auto& c : tamegal::report::acceptance_criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t failed = 0, count = 0;
    std::string error;
    try {
      for (const auto& o : c.run(seed)) {
        ++count;
        if (!o.pass) {
          if (failed == 0) error = o.name + " " + o.detail.dump();
          ++failed;
        }
      }
    } catch (const std::exception& ex) {
      error = std::string("exception: ") + ex.what();
      ++failed;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += dt;
    const bool in_time = !c.budget_seconds || dt < *c.budget_seconds;
    const bool ok = failed == 0 && in_time;
    all = all && ok;
    std::printf("criterion %d (%s): %s  configurations=%zu failed=%zu time=%.2fs", c.id, c.name.c_str(),
                ok ? "PASS" : "FAIL", count, failed, dt);
    if (c.budget_seconds) std::printf(" bound=%.0fs", *c.budget_seconds);
    std::printf("\n");
    if (!error.empty()) std::printf("  first failure: %s\n", error.c_str());
    std::fflush(stdout);
  }
  const bool suite_ok = total < kSuiteBudget;
  std::printf("total: %s  time=%.2fs bound=%.0fs\n", all && suite_ok ? "PASS" : "FAIL", total, kSuiteBudget);
  return all && suite_ok ? 0 : 1;
}
