#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hecke/burnside.hpp"
#include "hecke/fusion.hpp"

namespace hecke {

// Canonical basis of the Hecke algebra of a fusion system: for each graded
// representative subgroup Q (fully normalized, one per iso class) the
// two-sided twisted diagonals of pairs of morphisms Q -> P up to the
// diagonal action of the automizer, with the inclusion pair first.
struct HeckeBasisEntry {
  int s_index;     // index into HeckeBasis::reps
  Hom phi, phi_prime;
  BisetClass cls;
  long long nbar;  // |N_{PxP}(Delta_{phi,phi'}(Q))| / |Delta|
  bool is_inclusion_pair;
};

class HeckeBasis {
 public:
  explicit HeckeBasis(FusionSystem f);

  const FusionSystem& fusion() const { return fusion_; }
  const GroupPtr& base() const { return fusion_.base(); }
  int prime() const { return fusion_.prime(); }
  const std::vector<Subgroup>& reps() const { return reps_; }  // large to small
  const std::vector<HeckeBasisEntry>& entries() const { return entries_; }
  int rank() const { return (int)entries_.size(); }
  // entries of grade s (share reps()[s])
  std::vector<int> entries_of_rep(int s_index) const;
  int inclusion_entry_of_rep(int s_index) const;

  // canonical class -> basis index, -1 when the class is not in the algebra
  int index_of_class(const BisetClass& c) const;
  int rep_index_of_subgroup_class(const Subgroup& q) const;  // via iso class

 private:
  FusionSystem fusion_;
  std::vector<Subgroup> reps_;
  std::vector<HeckeBasisEntry> entries_;
  std::map<std::vector<eid>, int> by_rep_;
  std::vector<int> rep_of_iso_class_;
};

// Element in the canonical basis.
class HeckeElt {
 public:
  HeckeElt() = default;
  explicit HeckeElt(const HeckeBasis* basis)
      : basis_(basis), coeffs_((std::size_t)basis->rank(), Rational(0)) {}
  static HeckeElt unit(const HeckeBasis* basis);  // class of the full diagonal

  const HeckeBasis* basis() const { return basis_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational& operator[](int i) { return coeffs_[(std::size_t)i]; }
  const Rational& operator[](int i) const { return coeffs_[(std::size_t)i]; }
  bool is_zero() const;
  bool is_p_local() const;

  VirtualBiset to_virtual() const;
  // re-expression; throws defect_error when a class falls outside the basis
  static HeckeElt from_virtual(const HeckeBasis* basis, const VirtualBiset& v);

  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  HeckeElt& operator*=(const Rational& r);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const Rational& r, HeckeElt a) { return a *= r; }
  bool operator==(const HeckeElt& o) const { return coeffs_ == o.coeffs_; }

 private:
  const HeckeBasis* basis_ = nullptr;
  std::vector<Rational> coeffs_;
};

// Element of B_P/F: coefficients on the iso classes of subgroups, indexed by
// the basis rep index (graded large to small).
struct PSetModF {
  const HeckeBasis* basis = nullptr;
  std::vector<Rational> coeffs;  // size = reps().size()
  bool operator==(const PSetModF& o) const { return coeffs == o.coeffs; }
};

// membership of a virtual element in the Hecke algebra of f
bool hecke_membership(const FusionSystem& f, const VirtualBiset& v);
// the closure property: any indecomposable with nonzero product against the
// algebra lies in it (checked over all bifree classes of the base)
bool hecke_closure_property(const HeckeBasis& basis);

HeckeElt hecke_multiply(const HeckeElt& a, const HeckeElt& b);

PSet evaluate(const HeckeElt& f);          // f(1) in B_P
PSetModF evaluate_mod_f(const HeckeElt& f);
PSetModF pset_mod_f(const HeckeBasis& basis, const PSet& s);

// kernel basis elements of the evaluation map: f_{iota,phi} - m_{s_Q}
std::vector<HeckeElt> evaluation_kernel_basis(const HeckeBasis& basis);

bool is_stable(const HeckeElt& f);

// constructive stable element with prescribed image in B_P/F;
// denominators stay prime to p, every division must be p-locally exact
HeckeElt stable_element_for(const HeckeBasis& basis, const PSetModF& target);
// stable basis: one stable element per rep, image = that rep's class
std::vector<HeckeElt> stable_basis(const HeckeBasis& basis);

struct IdempotentReport {
  HeckeElt omega;
  bool squares_exactly = false;
  bool self_opposite = false;
  bool stable = false;
  bool p_local = false;
  Rational len;
  bool unique_nonzero = false;  // among p-local idempotents of the stable algebra
  int hensel_precision = 0;     // p-adic precision used by the lift
};
IdempotentReport characteristic_idempotent(const HeckeBasis& basis);

// maximalization along n_phi extensions (needs a selfcentralizing source)
struct MaximalizeResult {
  BisetClass maximal;
  std::vector<Hom> chain;  // successive extensions, inner to outer
  bool unique = true;
};
bool is_selfcentralizing(const FusionSystem& f, const Subgroup& q);
bool class_in_n_ideal(const HeckeBasis& basis, int entry_index);  // not selfcentralizing
MaximalizeResult maximalize(const HeckeBasis& basis, int entry_index);

// retraction killing the non-selfcentralizing ideal
HeckeElt e_f_retraction(const HeckeElt& x);

// the divisible system F^f determined by the restriction equalities of a
// symmetric bifree element
FusionSystem fusion_from_element(const GroupPtr& p, int prime, const VirtualBiset& f);

// minimal Hecke algebra containing f: class set + its fusion system
struct MinimalHecke {
  std::vector<BisetClass> classes;
  FusionSystem fusion;
};
MinimalHecke minimal_hecke_of(const GroupPtr& p, int prime, const VirtualBiset& f);

bool frobenius_condition(const GroupPtr& p, const VirtualBiset& f);

struct BasicReport {
  bool basic = false;
  bool length_prime_to_p = false;
  bool self_opposite = false;
  bool frobenius = false;
  bool fusion_match = false;       // F^f == F_{H_f} extensionally
  bool product_identity = false;   // |f_{i,phi},f||f_{i,phi'},f| = |f_{phi',phi},f||f_{i,phi'},f|
};
BasicReport is_basic(const GroupPtr& p, int prime, const VirtualBiset& f);

}  // namespace hecke
