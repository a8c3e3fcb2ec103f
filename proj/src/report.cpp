#include "bzz/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace bzz {

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckResult::Status::Fail) return false;
  return true;
}

int SuiteReport::count(CheckResult::Status s) const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == s) ++n;
  return n;
}

SuiteReport run_suite(const std::string& suite, Algebra::Ptr alg,
                      const std::vector<Check>& checks, int jobs) {
  SuiteReport rep;
  rep.suite = suite;
  rep.checks.resize(checks.size());
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    ModuleContext ctx(alg);
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= checks.size()) break;
      const Check& c = checks[i];
      CheckResult r;
      r.name = c.name;
      if (c.skip) {
        r.status = CheckResult::Status::Skip;
        r.detail = c.skip_reason;
        rep.checks[i] = std::move(r);
        continue;
      }
      auto t0 = std::chrono::steady_clock::now();
      try {
        auto [ok, detail] = c.fn(ctx);
        r.status = ok ? CheckResult::Status::Pass : CheckResult::Status::Fail;
        r.detail = detail;
      } catch (const std::exception& e) {
        r.status = CheckResult::Status::Fail;
        r.detail = std::string("exception: ") + e.what();
      }
      auto t1 = std::chrono::steady_clock::now();
      r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      rep.checks[i] = std::move(r);
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return rep;
}

namespace {
const char* status_str(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass: return "pass";
    case CheckResult::Status::Fail: return "FAIL";
    case CheckResult::Status::Skip: return "skip";
  }
  return "?";
}
}  // namespace

std::string report_json(const SuiteReport& rep, bool with_timings) {
  nlohmann::json j;
  j["suite"] = rep.suite;
  j["passed"] = rep.count(CheckResult::Status::Pass);
  j["failed"] = rep.count(CheckResult::Status::Fail);
  j["skipped"] = rep.count(CheckResult::Status::Skip);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["status"] = status_str(c.status);
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (with_timings) cj["ms"] = c.ms;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return j.dump(2);
}

std::string report_text(const SuiteReport& rep) {
  std::string out = "suite " + rep.suite + "\n";
  char buf[64];
  for (const auto& c : rep.checks) {
    snprintf(buf, sizeof(buf), "%8.1f ms  ", c.ms);
    out += std::string("[") + status_str(c.status) + "] " +
           (c.status == CheckResult::Status::Skip ? std::string("            ")
                                                  : std::string(buf)) +
           c.name;
    if (!c.detail.empty()) out += "  -- " + c.detail;
    out += "\n";
  }
  out += std::to_string(rep.count(CheckResult::Status::Pass)) + " passed, " +
         std::to_string(rep.count(CheckResult::Status::Fail)) + " failed, " +
         std::to_string(rep.count(CheckResult::Status::Skip)) + " skipped\n";
  return out;
}

}  // namespace bzz
