// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <string>
#include <vector>

#include "hecke/verify.hpp"

using namespace hecke;

int main() {
  struct Criterion {
    int number;
    std::string suite;
    long long budget_ms;  // <= 0: no stated budget
  };
  const std::vector<Criterion> criteria = {
      {1, "mackey-oracle", 120000}, {2, "scalar-oracle", 60000},
      {3, "algebra-laws", 0},       {4, "small-idempotent", 10000},
      {5, "d8-idempotent-essentials", 300000}, {6, "automizer-counts", 0},
      {7, "stable-elements", 0},    {8, "basic-elements", 0},
      {9, "group-hecke", 60000},    {10, "stable-structure", 0},
  };
  WorkspaceConfig cfg;
  cfg.apply_guards();
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    bool pass = false;
    std::string detail;
    long long ms = 0;
    try {
      SuiteResult r = run_suite(c.suite, cfg);
      ms = r.wall_ms;
      pass = r.pass;
      if (c.budget_ms > 0 && ms > c.budget_ms) {
        pass = false;
        detail = "over time budget";
      }
      if (!r.pass)
        for (const CheckLine& line : r.checks)
          if (!line.pass) detail += (detail.empty() ? "" : "; ") + line.name;
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    std::printf("criterion %2d (%s): %s  [%lld ms]%s%s\n", c.number, c.suite.c_str(),
                pass ? "PASS" : "FAIL", ms, detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
