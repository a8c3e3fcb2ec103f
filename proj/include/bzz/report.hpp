#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bzz/bimod.hpp"

namespace bzz {

struct CheckResult {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  Status status;
  std::string detail;
  double ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;  // sorted by name
  bool all_passed() const;
  int count(CheckResult::Status s) const;
};

// A named check running against a per-worker module context.  Workers share
// the (immutable) algebra but each owns its caches, so suites parallelize
// without locking.
struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>(ModuleContext&)> fn;
  bool skip = false;
  std::string skip_reason;
};

SuiteReport run_suite(const std::string& suite, Algebra::Ptr alg,
                      const std::vector<Check>& checks, int jobs);

// Deterministic for fixed (suite, config, seed): timings are included only
// when with_timings is set.
std::string report_json(const SuiteReport& rep, bool with_timings);
std::string report_text(const SuiteReport& rep);

}  // namespace bzz
