#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hecke/group.hpp"
#include "hecke/rational.hpp"

namespace hecke {

// Canonical class of an indecomposable biset between a group pair: a
// conjugacy class of subgroups D of left x right, stored as the
// lexicographically minimal conjugate member set.
struct BisetClass {
  GroupPtr left, right;  // functor right-sets -> left-sets
  GroupPtr pair;         // product group left x right
  std::vector<eid> rep;  // canonical member set of D <= left x right
  bool bifree = false;   // rep = graph of an injective hom ("pp" flag)

  int rep_order() const { return (int)rep.size(); }
  Subgroup rep_subgroup() const { return Subgroup{pair, rep}; }
  bool operator==(const BisetClass& o) const { return pair == o.pair && rep == o.rep; }
  bool operator<(const BisetClass& o) const { return rep < o.rep; }

  // bifree classes only: D = {(phi(u), u) : u in Q}, Q <= right, phi: Q -> left
  Subgroup graph_source() const;   // Q
  Hom graph_hom() const;           // phi
};

// D from a pair (Q, phi): the twisted diagonal {(phi(u), u)}.
BisetClass biset_class_of_hom(const GroupPtr& left, const GroupPtr& right, const Hom& phi);
// D from a pair of homs with common source (the two-sided twisted diagonal
// {(phi(u), phi'(u))}); both must land in `left` resp. `right`.
BisetClass biset_class_of_pair(const GroupPtr& left, const GroupPtr& right, const Hom& phi,
                               const Hom& phi_prime);
// D an explicit subgroup of the product of (left, right).
BisetClass biset_class_of_subgroup(const GroupPtr& left, const GroupPtr& right,
                                   const std::vector<eid>& members);

BisetClass identity_class(const GroupPtr& p);                       // class of the diagonal
BisetClass restriction_class(const Hom& alpha);                     // res_alpha: over (Q', P)
BisetClass induction_class(const Hom& alpha);                       // ind_alpha: over (P, Q')

// Exact-rational linear combination of classes over a fixed group pair.
class VirtualBiset {
 public:
  VirtualBiset() = default;
  VirtualBiset(GroupPtr left, GroupPtr right) : left_(std::move(left)), right_(std::move(right)) {}
  static VirtualBiset single(const BisetClass& c, const Rational& coeff = 1);

  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  const std::map<BisetClass, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_integral() const;
  bool is_p_local(int p) const;
  bool all_bifree() const;
  Rational coeff(const BisetClass& c) const;

  void add(const BisetClass& c, const Rational& r);
  VirtualBiset& operator+=(const VirtualBiset& o);
  VirtualBiset& operator-=(const VirtualBiset& o);
  VirtualBiset& operator*=(const Rational& r);
  friend VirtualBiset operator+(VirtualBiset a, const VirtualBiset& b) { return a += b; }
  friend VirtualBiset operator-(VirtualBiset a, const VirtualBiset& b) { return a -= b; }
  friend VirtualBiset operator*(const Rational& r, VirtualBiset a) { return a *= r; }
  bool operator==(const VirtualBiset& o) const { return coeffs_ == o.coeffs_; }

  std::string to_json() const;
  static VirtualBiset from_json(const GroupPtr& left, const GroupPtr& right,
                                const std::string& text);

 private:
  GroupPtr left_, right_;
  std::map<BisetClass, Rational> coeffs_;
};

// Element of the Burnside ring of P: rational combination of subgroup
// conjugacy classes (s_Q = class of P/Q), indexed by class index in the
// lattice of P.
class PSet {
 public:
  PSet() = default;
  explicit PSet(GroupPtr p) : group_(std::move(p)) {}
  static PSet basis(const GroupPtr& p, int class_index, const Rational& c = 1);
  static PSet of_subgroup(const Subgroup& q, const Rational& c = 1);  // s_Q
  static PSet unit(const GroupPtr& p);                                // s_P
  const GroupPtr& group() const { return group_; }
  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  void add(int class_index, const Rational& r);
  PSet& operator+=(const PSet& o);
  PSet& operator-=(const PSet& o);
  PSet& operator*=(const Rational& r);
  friend PSet operator+(PSet a, const PSet& b) { return a += b; }
  friend PSet operator-(PSet a, const PSet& b) { return a -= b; }
  friend PSet operator*(const Rational& r, PSet a) { return a *= r; }
  bool operator==(const PSet& o) const { return coeffs_ == o.coeffs_; }

 private:
  GroupPtr group_;
  std::map<int, Rational> coeffs_;
};

// Partially defined scalar product value.
struct Scalar {
  std::optional<Rational> value;  // empty = undefined (zero denominator case)
  bool defined() const { return value.has_value(); }
  Rational get() const;
  bool operator==(const Scalar& o) const { return value == o.value; }
};

// ---- operations ------------------------------------------------------------

// #{cosets of E in left x right fixed by D} = |Nat(f_D, f_E)|; memoized.
long long fixed_point_count(const GroupPtr& pair, const std::vector<eid>& d_members,
                            const std::vector<eid>& e_members);
long long fixed_point_count(const Subgroup& d, const BisetClass& e);

// Independent oracle: count equivariant maps (pair)/D -> (pair)/E by explicit
// verification of every candidate assignment.
long long equivariant_map_count_oracle(const GroupPtr& pair, const std::vector<eid>& d_members,
                                       const std::vector<eid>& e_members);

// Bilinear Mackey composition; pp fast path for bifree pairs, explicit orbit
// path otherwise. Middle groups must match.
VirtualBiset compose(const VirtualBiset& f, const VirtualBiset& g);
std::vector<BisetClass> compose_classes(const BisetClass& f, const BisetClass& g);
// Explicit-orbit composition of two single classes (oracle for the fast path).
std::vector<BisetClass> compose_classes_by_orbits(const BisetClass& f, const BisetClass& g);

VirtualBiset opposite(const VirtualBiset& f);
BisetClass opposite_class(const BisetClass& c);

// Linear extension of length [P : Q]; all classes must be bifree.
Rational length(const VirtualBiset& f);

// Partially defined scalar product (first argument must be integral).
Scalar scalar_product(const VirtualBiset& f, const VirtualBiset& g);

// Both sides of the induction/restriction adjunction for alpha: P' -> P,
// f over (P'', P'), h over (P'', P).
struct AdjunctionCheck {
  Scalar lhs, rhs;
  bool equal;
};
AdjunctionCheck adjunction_check(const Hom& alpha, const VirtualBiset& f, const VirtualBiset& h);

// Ring map B_P -> B_{PxP}: s_Q -> class of the diagonal of Q.
VirtualBiset m_of_pset(const PSet& s);

// Action of bifree elements on B_P.
PSet act(const VirtualBiset& f, const PSet& s);
PSet act_class(const BisetClass& c, int class_index_of_sQ);

// Burnside ring product via double cosets.
PSet burnside_multiply(const PSet& a, const PSet& b);

// Mark homomorphism: fixed points of every subgroup class on s.
std::vector<Rational> marks(const PSet& s);

// Restriction along phi: Q -> P of Burnside elements: B_P -> B_Q, where
// B_Q lives on the reindexed group of Q.
PSet res_pset(const Hom& phi, const AsGroup& q_as_group, const PSet& s);

// Every bifree class over (P, P), canonical order.
std::vector<BisetClass> all_bifree_classes(const GroupPtr& p);

}  // namespace hecke
