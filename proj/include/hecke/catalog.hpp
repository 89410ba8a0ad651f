#pragma once

#include <string>
#include <vector>

#include "hecke/group.hpp"

namespace hecke {

// Built-in groups: C2, C3, C4, V4, C2xC4, D8, Q8, S3, S4, A4.
bool catalog_has(const std::string& name);
GroupPtr catalog_group(const std::string& name);
std::vector<std::string> catalog_names();

// Group ingestion from JSON text:
//   {"name": str, "degree": n, "generators": [[images of 0..n-1], ...]}
//   {"name": str, "table": [[...], ...]}
GroupPtr group_from_json(const std::string& text);

// Catalog name or inline JSON (text starting with '{').
GroupPtr resolve_group(const std::string& spec);

}  // namespace hecke
