#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opschur/block_matrix.hpp"

namespace opschur {

// One checked metric of a gallery example: a computed value against its
// reference value with a tolerance.  `source` records where the reference
// comes from ("exact" closed form, "formula" evaluated reference, "oracle"
// independently computed bound).
struct MetricResult {
  std::string metric;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  std::string source;
  bool pass() const { return std::abs(computed - expected) <= tol; }
};

struct GalleryParams {
  // 0 picks the per-example default
  int d = 0;
  int n = 0;
  int m = 0;
  int grid = 0;
  std::uint64_t seed = 0xC0FFEE;
};

struct GalleryReport {
  std::string name;
  GalleryParams params;
  std::vector<MetricResult> metrics;
  bool pass() const {
    for (const auto& m : metrics)
      if (!m.pass()) return false;
    return true;
  }
};

std::vector<std::string> gallery_names();

GalleryReport run_example(const std::string& name, const GalleryParams& params = {});

// Block matrix realizing an example, where one exists (diag_rank_one,
// row_rank_one); used by the CLI export path.
std::optional<OpMatrix> gallery_matrix(const std::string& name, const GalleryParams& params = {});

nlohmann::json report_to_json(const GalleryReport& report);
std::string report_to_csv(const GalleryReport& report, bool header);

}  // namespace opschur
