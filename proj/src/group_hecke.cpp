#include "hecke/group_hecke.hpp"

#include <algorithm>
#include <set>

namespace hecke {

GroupHeckeAlgebra::GroupHeckeAlgebra(GroupPtr g, Subgroup p) : g_(std::move(g)), p_(std::move(p)) {
  // |P| must be the full p-part of |G| for a prime dividing |P|
  int n = p_.order();
  long long gn = g_->order();
  bool sylow = false;
  for (int prime : {2, 3, 5, 7}) {
    long long ppart = 1;
    long long m = gn;
    while (m % prime == 0) { m /= prime; ppart *= prime; }
    if (ppart == n && n % prime == 0) sylow = true;
  }
  if (n == 1 && gn == 1) sylow = true;
  if (!sylow) throw input_error("P is not a Sylow subgroup of G");
  coset_of_.assign((std::size_t)g_->order(), -1);
  for (int e = 0; e < g_->order(); ++e) {
    if (coset_of_[(std::size_t)e] >= 0) continue;
    int idx = (int)reps_.size();
    reps_.push_back((eid)e);
    for (eid a : p_.members)
      for (eid b : p_.members) coset_of_[g_->mul(g_->mul(a, (eid)e), b)] = idx;
  }
}

int GroupHeckeAlgebra::symbol_of(eid g) const { return coset_of_[g]; }

std::vector<long long> GroupHeckeAlgebra::multiply_symbols(int a, int b) const {
  // h_D h_E = (1/|P|^2) sum_{x in D, y in E} xy; regroup and divide
  std::vector<long long> elem((std::size_t)g_->order(), 0);
  for (int x = 0; x < g_->order(); ++x) {
    if (coset_of_[(std::size_t)x] != a) continue;
    for (int y = 0; y < g_->order(); ++y) {
      if (coset_of_[(std::size_t)y] != b) continue;
      ++elem[g_->mul((eid)x, (eid)y)];
    }
  }
  // result = sum_z elem[z]/|P|^2 * z must be constant on double cosets and a
  // multiple of (1/|P|) there
  std::vector<long long> out(reps_.size(), 0);
  long long pn = p_.order();
  for (std::size_t s = 0; s < reps_.size(); ++s) {
    long long v = elem[reps_[s]];
    for (int z = 0; z < g_->order(); ++z)
      if (coset_of_[(std::size_t)z] == (int)s && elem[(std::size_t)z] != v)
        throw defect_error("product not constant on double cosets");
    if (v % pn != 0) throw defect_error("product coefficient not integral");
    out[s] = v / pn;
  }
  return out;
}

GroupHeckeElt group_hecke_multiply(const GroupHeckeElt& a, const GroupHeckeElt& b) {
  const GroupHeckeAlgebra& alg = *a.alg;
  GroupHeckeElt out{&alg, std::vector<Rational>((std::size_t)alg.rank(), Rational(0))};
  for (int i = 0; i < alg.rank(); ++i) {
    if (a.coeffs[(std::size_t)i].is_zero()) continue;
    for (int j = 0; j < alg.rank(); ++j) {
      if (b.coeffs[(std::size_t)j].is_zero()) continue;
      std::vector<long long> prod = alg.multiply_symbols(i, j);
      for (int k = 0; k < alg.rank(); ++k)
        out.coeffs[(std::size_t)k] +=
            a.coeffs[(std::size_t)i] * b.coeffs[(std::size_t)j] * Rational(prod[(std::size_t)k]);
    }
  }
  return out;
}

TransporterObj transporter_object(const GroupHeckeAlgebra& alg, const Subgroup& q, eid x,
                                  eid x2) {
  const GroupPtr& g = alg.group();
  const Subgroup& p = alg.sylow();
  auto check = [&](eid z) {
    for (eid u : q.members)
      if (!p.contains(g->conj(z, u))) return false;
    return true;
  };
  if (!check(x) || !check(x2)) throw input_error("not a transporter pair");
  // canonical form: minimize (members(Q^s), min(P x s), min(P x' s)) over s
  auto coset_min = [&](eid z) {
    eid best = g->mul(p.members[0], z);
    for (eid u : p.members) best = std::min(best, g->mul(u, z));
    return best;
  };
  TransporterObj best;
  bool first = true;
  for (int s = 0; s < g->order(); ++s) {
    Subgroup qs = conjugate_subgroup(q, g->inv((eid)s));  // (Q)^s = s^-1 Q s
    bool inside = true;
    for (eid u : qs.members)
      if (!p.contains(u)) { inside = false; break; }
    if (!inside) continue;
    TransporterObj cand{qs, coset_min(g->mul(x, (eid)s)), coset_min(g->mul(x2, (eid)s))};
    if (first || cand < best) { best = cand; first = false; }
  }
  if (first) throw defect_error("no conjugate of the base inside P");
  return best;
}

TransporterObj transporter_unit(const GroupHeckeAlgebra& alg) {
  Subgroup p = alg.sylow();
  return transporter_object(alg, p, alg.group()->identity(), alg.group()->identity());
}

std::vector<TransporterObj> ht_product(const GroupHeckeAlgebra& alg, const TransporterObj& t,
                                       const TransporterObj& t2) {
  const GroupPtr& g = alg.group();
  const Subgroup& p = alg.sylow();
  // W = double cosets of x'Q x'^-1 \ P / y R y^-1 inside P; term over
  // U_w = x'Qx'^-1 n (wy) R (wy)^-1 with pair (x x'^-1, y' y^-1 w^-1)
  Subgroup xq = conjugate_subgroup(t.q, t.x2);
  Subgroup yr = conjugate_subgroup(t2.q, t2.x);
  std::vector<TransporterObj> out;
  for (eid w : double_coset_reps_in(p, xq, yr)) {
    Subgroup u = intersect(xq, conjugate_subgroup(t2.q, g->mul(w, t2.x)));
    eid first = g->mul(t.x, g->inv(t.x2));
    eid second = g->mul(t2.x2, g->inv(g->mul(w, t2.x)));
    out.push_back(transporter_object(alg, u, first, second));
  }
  return out;
}

bool transporter_maximal(const GroupHeckeAlgebra& alg, const TransporterObj& t) {
  const GroupPtr& g = alg.group();
  Subgroup px = conjugate_subgroup(alg.sylow(), g->inv(t.x));   // P^x
  Subgroup px2 = conjugate_subgroup(alg.sylow(), g->inv(t.x2));
  Subgroup n = normalizer(intersect(px, px2), t.q);
  return n.members == t.q.members;
}

RetractionResult e_t_retraction(const GroupHeckeAlgebra& alg, const TransporterObj& t) {
  const GroupPtr& g = alg.group();
  Subgroup q = t.q;
  while (true) {
    Subgroup px = conjugate_subgroup(alg.sylow(), g->inv(t.x));
    Subgroup px2 = conjugate_subgroup(alg.sylow(), g->inv(t.x2));
    Subgroup n = normalizer(intersect(px, px2), q);
    if (n.members == q.members) break;
    q = n;
  }
  RetractionResult out{transporter_object(alg, q, t.x, t.x2),
                       Rational(q.order(), t.q.order())};
  return out;
}

int d_g_symbol(const GroupHeckeAlgebra& alg, const TransporterObj& t) {
  return alg.symbol_of(alg.group()->mul(t.x, alg.group()->inv(t.x2)));
}

std::vector<TransporterObj> maximal_objects(const GroupHeckeAlgebra& alg) {
  std::vector<TransporterObj> out;
  const GroupPtr& g = alg.group();
  const Subgroup& p = alg.sylow();
  for (eid rep : alg.coset_reps()) {
    // base P^g n P with the pair (g, 1)
    Subgroup base = intersect(conjugate_subgroup(p, g->inv(rep)), p);
    // the object needs its base inside P after conjugation by x = rep:
    // rep (P^rep n P) rep^-1 = P n rep P rep^-1 <= P
    out.push_back(transporter_object(alg, base, rep, g->identity()));
  }
  return out;
}

ComparisonVerdict compare_structure_constants(const GroupHeckeAlgebra& alg) {
  ComparisonVerdict v;
  std::vector<TransporterObj> maxes = maximal_objects(alg);
  for (const TransporterObj& m : maxes) {
    if (!transporter_maximal(alg, m)) v.retraction_idempotent = false;
    RetractionResult r = e_t_retraction(alg, m);
    if (!(r.maximal == m) || r.coeff != Rational(1)) v.retraction_idempotent = false;
  }
  for (int i = 0; i < alg.rank(); ++i)
    for (int j = 0; j < alg.rank(); ++j) {
      std::vector<long long> direct = alg.multiply_symbols(i, j);
      std::vector<Rational> via(direct.size(), Rational(0));
      for (const TransporterObj& term :
           ht_product(alg, maxes[(std::size_t)i], maxes[(std::size_t)j])) {
        RetractionResult r = e_t_retraction(alg, term);
        if (d_g_symbol(alg, r.maximal) != d_g_symbol(alg, term)) v.symbols_invariant = false;
        via[(std::size_t)d_g_symbol(alg, r.maximal)] += r.coeff;
      }
      for (std::size_t k = 0; k < direct.size(); ++k)
        if (via[k] != Rational(direct[k])) v.structure_constants_match = false;
    }
  return v;
}

}  // namespace hecke
