#pragma once

#include <string>
#include <vector>

#include "hecke/report.hpp"

namespace hecke {

struct SuiteResult {
  std::string suite;
  std::vector<CheckLine> checks;
  bool pass = true;
  long long wall_ms = 0;
};

// Suites mirror the acceptance criteria one for one, in order.
std::vector<std::string> verify_suite_names();
SuiteResult run_suite(const std::string& name, const WorkspaceConfig& cfg);

// named catalog fusion pairs (ambient group, Sylow prime)
struct CatalogFusion {
  std::string group;
  int prime;
};
std::vector<CatalogFusion> catalog_fusion_pairs();

}  // namespace hecke
