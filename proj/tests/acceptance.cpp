// One line per acceptance criterion; exit status 0 iff every criterion passes.
// --report-only: exit 0 once every criterion has run and printed its line, whatever the verdicts.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "planchgrow/parallel.hpp"
#include "planchgrow/verify.hpp"

using namespace pg;

int main(int argc, char **argv) {
  VerifyOptions opts;
  opts.threads = default_threads();
  int only = 0;
  bool report_only = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opts.quick = true;
    else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (a == "--report-only") report_only = true;
  }
  int failed = 0;
  for (int id = 1; id <= kCriteria; ++id) {
    if (only && id != only) continue;
    const CriterionResult r = run_criterion(id, opts);
    std::string detail;
    for (const auto &c : r.checks) {
      char buf[256];
      if (c.reported) std::snprintf(buf, sizeof buf, "%s = %.6g", c.check.c_str(), c.value);
      else std::snprintf(buf, sizeof buf, "%s = %.3g (%s %.3g)", c.check.c_str(), c.value, c.upper ? "<=" : ">=", c.tolerance);
      detail += (detail.empty() ? "" : "; ") + std::string(buf);
    }
    std::printf("criterion %2d %s  %s [%.1fs]: %s\n", id, r.pass() ? "PASS" : "FAIL", r.title.c_str(), r.seconds, detail.c_str());
    std::fflush(stdout);
    failed += !r.pass();
  }
  std::printf("%d of %d criteria failed\n", failed, only ? 1 : kCriteria);
  return failed == 0 || report_only ? 0 : 1;
}
