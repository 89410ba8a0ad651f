#include "hecke/catalog.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

std::vector<int> cycle(int n) {
  std::vector<int> v((std::size_t)n);
  for (int i = 0; i < n; ++i) v[(std::size_t)i] = (i + 1) % n;
  return v;
}

GroupPtr make_q8() {
  // elements (s, a): s in {+,-}, a in {1,i,j,k}; id = s*4 + a
  auto mul_axis = [](int a, int b, int& sign) -> int {
    // 0=1, 1=i, 2=j, 3=k
    if (a == 0) { sign = 1; return b; }
    if (b == 0) { sign = 1; return a; }
    if (a == b) { sign = -1; return 0; }
    static const int tab[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
    sign = sgn[a][b];
    return tab[a][b];
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int sx = x < 4 ? 1 : -1, ax = x % 4;
      int sy = y < 4 ? 1 : -1, ay = y % 4;
      int s = 0;
      int az = mul_axis(ax, ay, s);
      int sz = sx * sy * s;
      t[(std::size_t)x][(std::size_t)y] = (sz > 0 ? 0 : 4) + az;
    }
  return FiniteGroup::from_table("Q8", t, 2);
}

GroupPtr build(const std::string& name) {
  if (name == "C2") return FiniteGroup::from_perm_gens("C2", 2, {cycle(2)}, 2);
  if (name == "C3") return FiniteGroup::from_perm_gens("C3", 3, {cycle(3)}, 3);
  if (name == "C4") return FiniteGroup::from_perm_gens("C4", 4, {cycle(4)}, 2);
  if (name == "V4") return FiniteGroup::from_perm_gens("V4", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}, 2);
  if (name == "C2xC4")
    return FiniteGroup::from_perm_gens("C2xC4", 6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 4, 5, 2}}, 2);
  if (name == "D8") return FiniteGroup::from_perm_gens("D8", 4, {{1, 2, 3, 0}, {2, 1, 0, 3}}, 2);
  if (name == "Q8") return make_q8();
  if (name == "S3") return FiniteGroup::from_perm_gens("S3", 3, {{1, 2, 0}, {1, 0, 2}});
  if (name == "S4") return FiniteGroup::from_perm_gens("S4", 4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  if (name == "A4") return FiniteGroup::from_perm_gens("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  throw input_error("unknown catalog group: " + name);
}

}  // namespace

bool catalog_has(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

std::vector<std::string> catalog_names() {
  return {"C2", "C3", "C4", "V4", "C2xC4", "D8", "Q8", "S3", "S4", "A4"};
}

GroupPtr catalog_group(const std::string& name) {
  static std::mutex mx;
  static auto& cache = *new std::map<std::string, GroupPtr>();
  std::lock_guard<std::mutex> lock(mx);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  GroupPtr g = build(name);
  cache[name] = g;
  return g;
}

GroupPtr group_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("group JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name")) throw input_error("group JSON needs a name");
  std::string name = j["name"].get<std::string>();
  std::optional<int> p;
  if (j.contains("p")) p = j["p"].get<int>();
  try {
    if (j.contains("table"))
      return FiniteGroup::from_table(name, j["table"].get<std::vector<std::vector<int>>>(), p);
    if (j.contains("generators") && j.contains("degree"))
      return FiniteGroup::from_perm_gens(name, j["degree"].get<int>(),
                                         j["generators"].get<std::vector<std::vector<int>>>(), p);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("group JSON shape error: ") + e.what());
  }
  throw input_error("group JSON needs either a table or degree+generators");
}

GroupPtr resolve_group(const std::string& spec) {
  if (!spec.empty() && spec[0] == '{') return group_from_json(spec);
  return catalog_group(spec);
}

}  // namespace hecke
