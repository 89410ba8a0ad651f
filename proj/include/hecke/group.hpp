#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

using eid = std::uint16_t;  // element id; stable total order = index order

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Enumeration guards. Read-mostly; the CLI may adjust them at startup before
// any computation runs.
struct Guards {
  int max_group_order = 384;     // plain groups
  int max_product_order = 4096;  // direct products
  long long max_hom_search = 10'000'000;
};
Guards& guards();

struct Subgroup {
  GroupPtr parent;
  std::vector<eid> members;  // sorted, contains the identity

  int order() const { return (int)members.size(); }
  bool contains(eid e) const;
  bool contains(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator<(const Subgroup& o) const {
    if (members.size() != o.members.size()) return members.size() < o.members.size();
    return members < o.members;
  }
};

// Group homomorphism from a subgroup into a (possibly different) group,
// stored extensionally: img[i] is the image of source.members[i].
struct Hom {
  Subgroup source;
  GroupPtr target;
  std::vector<eid> img;

  eid apply(eid e) const;
  bool is_injective() const;
  Subgroup image() const;
  bool operator==(const Hom& o) const {
    return source.members == o.source.members && img == o.img;
  }
  bool operator<(const Hom& o) const {
    if (source.members != o.source.members) return source.members < o.source.members;
    return img < o.img;
  }
};

struct SubgroupLattice {
  std::vector<Subgroup> subgroups;        // sorted by (order, members)
  std::vector<std::vector<int>> classes;  // conjugacy classes (indices), sorted by min index
  std::vector<int> class_of;              // subgroup index -> class index
  int index_of(const Subgroup& s) const;  // -1 if absent
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  // Explicit Cayley table; associativity, identity and inverses are checked.
  static GroupPtr from_table(const std::string& name, const std::vector<std::vector<int>>& table,
                             std::optional<int> p = std::nullopt);
  // Closure of permutation generators acting on 0..degree-1.
  static GroupPtr from_perm_gens(const std::string& name, int degree,
                                 const std::vector<std::vector<int>>& gens,
                                 std::optional<int> p = std::nullopt);
  // Direct product; instances are cached so repeated requests share one table.
  static GroupPtr product(const GroupPtr& a, const GroupPtr& b);

  int order() const { return n_; }
  unsigned long long uid() const { return uid_; }  // process-unique, for cache keys
  eid mul(eid a, eid b) const { return mul_[(std::size_t)a * n_ + b]; }
  eid inv(eid a) const { return inv_[a]; }
  eid identity() const { return id_; }
  eid conj(eid g, eid x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int element_order(eid a) const;
  const std::string& name() const { return name_; }
  std::optional<int> declared_prime() const { return prime_; }

  bool is_product() const { return (bool)left_; }
  const GroupPtr& left_factor() const { return left_; }
  const GroupPtr& right_factor() const { return right_; }
  eid pair(eid a, eid b) const { return (eid)((int)a * right_->order() + b); }
  std::pair<eid, eid> unpair(eid e) const {
    int m = right_->order();
    return {(eid)(e / m), (eid)(e % m)};
  }

  Subgroup whole() const;
  Subgroup trivial() const;

  // Exhaustive subgroup lattice with conjugacy classes; built once, then
  // read-only. Throws guard_error past the configured limits.
  const SubgroupLattice& lattice() const;
  bool lattice_ready() const;
  // Install a precomputed lattice (from the persistent cache); validated
  // against the group, ignored when one is already present.
  void install_lattice(SubgroupLattice lat) const;

 private:
  FiniteGroup() = default;
  void finish_tables();
  std::unique_ptr<SubgroupLattice> compute_lattice() const;

  std::string name_;
  int n_ = 0;
  unsigned long long uid_ = 0;
  std::vector<eid> mul_, inv_;
  eid id_ = 0;
  std::optional<int> prime_;
  GroupPtr left_, right_;

  mutable std::mutex lattice_mx_;
  mutable std::unique_ptr<SubgroupLattice> lattice_;
};

// ---- free operations -------------------------------------------------------

Subgroup subgroup_from_members(const GroupPtr& g, std::vector<eid> members);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<eid>& gens);
Subgroup conjugate_subgroup(const Subgroup& s, eid g);    // {g x g^-1}
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const Subgroup& inside, const Subgroup& q);
Subgroup centralizer(const Subgroup& inside, const Subgroup& q);
Subgroup normalizer(const GroupPtr& g, const Subgroup& q);
Subgroup centralizer(const GroupPtr& g, const Subgroup& q);
Subgroup center(const GroupPtr& g);

// One representative per double coset H\G/K, minimal element id in its coset.
std::vector<eid> double_coset_reps(const GroupPtr& g, const Subgroup& h, const Subgroup& k);
// Minimal representatives of the double cosets of h, k inside the subgroup s.
std::vector<eid> double_coset_reps_in(const Subgroup& s, const Subgroup& h, const Subgroup& k);
std::vector<eid> left_coset_reps(const GroupPtr& g, const Subgroup& h);

// u -> g u g^-1 restricted to Q; lands in the parent group of Q.
Hom conj_hom(eid g, const Subgroup& q);
Hom inclusion_hom(const Subgroup& q);
Hom identity_hom(const GroupPtr& g);
Hom compose(const Hom& outer, const Hom& inner);  // outer(inner(x))
Hom restrict_hom(const Hom& h, const Subgroup& smaller);
Hom inverse_iso(const Hom& h);  // inverse of the induced iso onto image()
// All injective homomorphisms Q -> P in deterministic order (guarded search).
std::vector<Hom> injective_homs(const Subgroup& q, const GroupPtr& p);
// All isomorphisms Q -> R (as homs into R's parent with image exactly R).
std::vector<Hom> isomorphisms_onto(const Subgroup& q, const Subgroup& r);

// Generating set: greedy, deterministic.
std::vector<eid> generators_of(const Subgroup& s);

// Re-index a subgroup as a standalone group.
struct AsGroup {
  GroupPtr grp;
  std::vector<eid> to_parent;   // small id -> parent id
  std::vector<int> from_parent; // parent id -> small id or -1
};
AsGroup subgroup_as_group(const Subgroup& s, const std::string& name);
// Cached reindexing keyed by (parent, members); repeated calls share one
// group instance, so classes built over it compare.
const AsGroup& small_group_of(const Subgroup& s);

// Largest p-power-order subgroups; deterministic first one.
Subgroup sylow_subgroup(const GroupPtr& g, int p);
bool is_pgroup(const GroupPtr& g, int p);

}  // namespace hecke
