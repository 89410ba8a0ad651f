#pragma once

#include <optional>
#include <vector>

#include "hecke/hecke_algebra.hpp"

namespace hecke {

// The automorphisms of Q inside the system modulo inner ones, materialized
// as an abstract group; reps[i] realizes abstract element i.
struct AutomizerGroup {
  GroupPtr grp;
  std::vector<Hom> reps;
  Subgroup q;
  int index_of(const Hom& h) const;  // -1 when h is not an automorphism mod inner
};
AutomizerGroup automizer_group(const FusionSystem& f, const Subgroup& q);

// Maximal-by-order proper subgroup M with p | |M| and p not dividing
// |M n M^t| for every t outside M; empty when none exists.
std::optional<Subgroup> strongly_p_embedded(const GroupPtr& h, int p);

struct EssentialReport {
  Subgroup q;  // fully normalized class representative
  bool selfcentralizing = false;
  AutomizerGroup automizer;
  std::optional<Subgroup> witness;        // maximal strongly p-embedded subgroup
  std::optional<Subgroup> distinguished;  // the one containing the P-automizer image
  bool essential = false;
};
// one report per proper-subgroup iso class, ordered like the Hecke grades
std::vector<EssentialReport> essential_subgroups(const FusionSystem& f);

// criterion for one-sided classes f_{Q,phi}: phi an F-morphism out of Q
bool is_irreducible(const FusionSystem& f, const Hom& phi);
// exhaustive oracle: no product of strictly-larger-subgroup classes admits a
// natural map from the class of phi
bool is_irreducible_by_search(const FusionSystem& f, const Hom& phi);

// second argument an automizer twist tau of phi's source
bool are_exchangeable(const FusionSystem& f, const Hom& phi, const Hom& tau);
// structural criterion: a group isomorphism theta between the sources making
// both mixed classes reducible
bool are_exchangeable_structural(const FusionSystem& f, const Hom& phi, const Hom& phi2);

// deterministic transversal of the exchangeability classes of irreducible
// one-sided classes: minimal canonical class per equivalence class
std::vector<BisetClass> exchangeability_transversal(const FusionSystem& f);

struct ChainStep {
  Subgroup q;       // Q_i
  Hom phi;          // phi_i: Q_i -> P
  BisetClass cls;   // class of Delta_{phi_i}(Q_i)
  Hom tracker;      // psi_i: Q -> Q_i, found by the exterior search
};
struct AlperinChain {
  std::vector<ChainStep> steps;  // index 0 applied first (rightmost factor)
  bool chain_equalities = false; // the exterior chain equalities hold verbatim
  bool natural_map = false;      // |f, composition| != 0
  // normal form: one automorphism prefix and a family from the transversal
  Hom sigma;
  std::vector<BisetClass> family;
  bool normalized_ok = false;    // family lies in the transversal and the
                                 // scalar check passes
};
AlperinChain alperin_decompose(const FusionSystem& f, const Hom& phi);

}  // namespace hecke
