#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/group.hpp"

namespace hecke {

struct WorkspaceConfig {
  int max_group_order = 384;
  int max_product_order = 4096;
  std::string cache_dir;  // empty = disabled
  unsigned long long seed = 20240801;
  bool timings = false;
  bool verify_cache = false;

  static WorkspaceConfig from_json_text(const std::string& text);
  void apply_guards() const;
};

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  unsigned long long seed = 0;
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<CheckLine> checks;
  long long wall_ms = -1;

  bool all_pass() const;
  // deterministic unless timings are requested
  std::string to_json(bool with_timings) const;
};

// Content-addressed JSON store; a corrupt entry is reported and recomputed.
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> get(const std::string& desc) const;
  void put(const std::string& desc, const nlohmann::json& value) const;

 private:
  std::string dir_;
};

std::string content_digest(const std::string& text);

// Serialize / reinstall a subgroup lattice through the cache; on a hit the
// enumeration is skipped, and with verify_cache set the entry is recomputed
// and compared bit for bit.
nlohmann::json lattice_to_json(const SubgroupLattice& lat);
void prepare_lattice(const GroupPtr& g, const std::string& group_desc, const Cache& cache,
                     bool verify_cache);

}  // namespace hecke
