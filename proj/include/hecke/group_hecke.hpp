#pragma once

#include <map>
#include <vector>

#include "hecke/group.hpp"
#include "hecke/rational.hpp"

namespace hecke {

// The double-coset algebra of (G, P): basis h_D, one symbol per double coset
// P\G/P keyed by the minimal element of the coset; h_D is (1/|P|) times the
// coset sum inside the rational group algebra.
class GroupHeckeAlgebra {
 public:
  GroupHeckeAlgebra(GroupPtr g, Subgroup p);

  const GroupPtr& group() const { return g_; }
  const Subgroup& sylow() const { return p_; }
  const std::vector<eid>& coset_reps() const { return reps_; }
  int rank() const { return (int)reps_.size(); }
  int symbol_of(eid g) const;  // index of the double coset containing g

  // product of two basis symbols, expanded in the basis; coefficients are
  // nonnegative integers by double-coset counting
  std::vector<long long> multiply_symbols(int a, int b) const;

 private:
  GroupPtr g_;
  Subgroup p_;
  std::vector<eid> reps_;
  std::vector<int> coset_of_;  // element -> symbol index
};

// rational combination of double-coset symbols
struct GroupHeckeElt {
  const GroupHeckeAlgebra* alg = nullptr;
  std::vector<Rational> coeffs;
  bool operator==(const GroupHeckeElt& o) const { return coeffs == o.coeffs; }
};
GroupHeckeElt group_hecke_multiply(const GroupHeckeElt& a, const GroupHeckeElt& b);

// Indecomposable transporter object: a subgroup Q of P with two transporter
// morphisms into P, i.e. x, x' in G with Q^x-conjugates inside P; stored up
// to object isomorphism by the minimal (Q^s, P x s, P x' s) tuple.
struct TransporterObj {
  Subgroup q;  // subgroup of G contained in P
  eid x, x2;   // coset-minimal transporter representatives
  bool operator==(const TransporterObj& o) const {
    return q.members == o.q.members && x == o.x && x2 == o.x2;
  }
  bool operator<(const TransporterObj& o) const {
    if (q.members != o.q.members) return q.members < o.q.members;
    if (x != o.x) return x < o.x;
    return x2 < o.x2;
  }
};
TransporterObj transporter_object(const GroupHeckeAlgebra& alg, const Subgroup& q, eid x,
                                  eid x2);
TransporterObj transporter_unit(const GroupHeckeAlgebra& alg);

// tensor expansion over the double cosets of the middle subgroups; the
// result has exactly |W| terms
std::vector<TransporterObj> ht_product(const GroupHeckeAlgebra& alg, const TransporterObj& t,
                                       const TransporterObj& t2);

// retraction onto the maximal objects: iterated normalizer growth keeping
// the transporter pair; the scale is the index ratio of the bases
struct RetractionResult {
  TransporterObj maximal;
  Rational coeff;
};
RetractionResult e_t_retraction(const GroupHeckeAlgebra& alg, const TransporterObj& t);
bool transporter_maximal(const GroupHeckeAlgebra& alg, const TransporterObj& t);

// comparison map onto the double-coset symbol of x x2^-1
int d_g_symbol(const GroupHeckeAlgebra& alg, const TransporterObj& t);

// the maximal objects, one per double coset, in symbol order
std::vector<TransporterObj> maximal_objects(const GroupHeckeAlgebra& alg);

// structure constants through the transporter category: ht_product followed
// by the retraction and the symbol map, entrywise against the group-algebra
// product
struct ComparisonVerdict {
  bool structure_constants_match = true;
  bool retraction_idempotent = true;
  bool symbols_invariant = true;  // d_G constant under the retraction's object map
};
ComparisonVerdict compare_structure_constants(const GroupHeckeAlgebra& alg);

}  // namespace hecke
