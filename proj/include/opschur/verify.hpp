#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opschur {

// One verification criterion: a deterministic battery with pinned sizes,
// seeds, and tolerances.  `details` carries the measured extrema in a fixed
// format so that reports are byte-reproducible; wall-clock time is kept
// separate and never enters a report.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct VerifyConfig {
  std::uint64_t seed = 0xC0FFEE;
  int threads = 1;
};

std::vector<int> criterion_ids();
std::string criterion_name(int id);

// Resolve a suite selector ("all", a criterion name, or a comma list of
// names/ids) to criterion ids; throws std::out_of_range on unknown names.
std::vector<int> resolve_suite(const std::string& selector);

CriterionResult run_criterion(int id, const VerifyConfig& config);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids,
                                          const VerifyConfig& config);

// Canonical textual report (one line per criterion, no timings).
std::string render_report(const std::vector<CriterionResult>& results);
// CSV / JSON renderings for --out files; also timing-free.
std::string report_csv(const std::vector<CriterionResult>& results);
std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace opschur
