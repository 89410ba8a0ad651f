#include "hecke/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hecke/errors.hpp"

namespace hecke {

WorkspaceConfig WorkspaceConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("config parse error: ") + e.what());
  }
  WorkspaceConfig cfg;
  if (j.contains("max_group_order")) cfg.max_group_order = j["max_group_order"].get<int>();
  if (j.contains("max_product_order")) cfg.max_product_order = j["max_product_order"].get<int>();
  if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
  if (j.contains("timings")) cfg.timings = j["timings"].get<bool>();
  if (j.contains("verify_cache")) cfg.verify_cache = j["verify_cache"].get<bool>();
  if (cfg.max_group_order <= 0 || cfg.max_product_order <= 0)
    throw input_error("guard limits must be positive");
  return cfg;
}

void WorkspaceConfig::apply_guards() const {
  guards().max_group_order = max_group_order;
  guards().max_product_order = max_product_order;
}

bool RunReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string RunReport::to_json(bool with_timings) const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["seed"] = std::to_string(seed);
  j["outputs"] = outputs;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json line;
    line["name"] = c.name;
    line["pass"] = c.pass;
    if (!c.detail.empty()) line["detail"] = c.detail;
    arr.push_back(line);
  }
  j["checks"] = arr;
  if (with_timings && wall_ms >= 0) j["wall_ms"] = wall_ms;
  return j.dump(2);
}

std::string content_digest(const std::string& text) {
  // two FNV-1a passes with distinct offsets, hex encoded
  unsigned long long h1 = 1469598103934665603ull, h2 = 1099511628211ull ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char ch : text) {
    h1 = (h1 ^ ch) * 1099511628211ull;
    h2 = (h2 ^ (ch + 0x9eull)) * 1099511628211ull;
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", h1, h2);
  return buf;
}

std::optional<nlohmann::json> Cache::get(const std::string& desc) const {
  if (!enabled()) return std::nullopt;
  std::filesystem::path path = std::filesystem::path(dir_) / (content_digest(desc) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("desc").get<std::string>() != desc) throw input_error("key collision");
    std::string vd = j.at("value_digest").get<std::string>();
    if (content_digest(j.at("value").dump()) != vd) throw input_error("digest mismatch");
    return j.at("value");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: corrupt cache entry %s (%s); recomputing\n",
                 path.string().c_str(), e.what());
    return std::nullopt;
  }
}

void Cache::put(const std::string& desc, const nlohmann::json& value) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  nlohmann::json j;
  j["desc"] = desc;
  j["value"] = value;
  j["value_digest"] = content_digest(value.dump());
  std::filesystem::path path = std::filesystem::path(dir_) / (content_digest(desc) + ".json");
  std::ofstream out(path);
  out << j.dump();
}

nlohmann::json lattice_to_json(const SubgroupLattice& lat) {
  nlohmann::json j;
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : lat.subgroups) {
    nlohmann::json m = nlohmann::json::array();
    for (eid e : s.members) m.push_back((int)e);
    subs.push_back(m);
  }
  j["subgroups"] = subs;
  j["classes"] = lat.classes;
  j["class_of"] = lat.class_of;
  return j;
}

void prepare_lattice(const GroupPtr& g, const std::string& group_desc, const Cache& cache,
                     bool verify_cache) {
  if (!cache.enabled()) {
    g->lattice();
    return;
  }
  std::string desc = "lattice:" + group_desc;
  auto hit = cache.get(desc);
  if (hit && verify_cache) {
    // bypass the hit, recompute, and require bit-identical serialization
    const SubgroupLattice& lat = g->lattice();
    if (lattice_to_json(lat).dump() != hit->dump())
      throw defect_error("cache verification failed: lattice differs from recomputation");
    return;
  }
  if (hit && !g->lattice_ready()) {
    try {
      SubgroupLattice lat;
      for (const auto& m : hit->at("subgroups")) {
        Subgroup s;
        for (int e : m) s.members.push_back((eid)e);
        lat.subgroups.push_back(std::move(s));
      }
      lat.classes = hit->at("classes").get<std::vector<std::vector<int>>>();
      lat.class_of = hit->at("class_of").get<std::vector<int>>();
      g->install_lattice(std::move(lat));
      return;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "warning: rejected cached lattice (%s); recomputing\n", e.what());
    }
  }
  cache.put(desc, lattice_to_json(g->lattice()));
}

}  // namespace hecke
