#include "hecke/alperin.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hecke {

namespace {

bool exterior_is_inclusion(const Hom& phi) {
  return exterior_equal(inclusion_hom(phi.source), phi, phi.target->whole());
}

// image of the P-automizer of phi(Q) transported through phi^{-1}, as a
// subgroup of the automizer group of Q
std::vector<eid> transported_p_automizer(const FusionSystem& f, const AutomizerGroup& aut,
                                         const Hom& phi) {
  const GroupPtr& p = f.base();
  Subgroup img = phi.image();
  Hom phi_star = inverse_iso(phi);
  std::set<eid> members;
  for (eid v : normalizer(p, img).members) {
    // phi^* . kappa_v . phi as an automorphism of Q
    Hom kv = restrict_hom(conj_hom(v, img), img);
    Hom a = compose(phi_star, compose(kv, phi));
    int idx = aut.index_of(a);
    if (idx < 0) throw defect_error("transported automizer escaped the automizer group");
    members.insert((eid)idx);
  }
  return std::vector<eid>(members.begin(), members.end());
}

}  // namespace

int AutomizerGroup::index_of(const Hom& h) const {
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (exterior_equal(reps[i], h, q)) return (int)i;
  return -1;
}

AutomizerGroup automizer_group(const FusionSystem& f, const Subgroup& q) {
  AutomizerGroup out;
  out.q = q;
  std::vector<ExtClass> classes = exterior_classes(f, q, q);
  for (const ExtClass& c : classes) out.reps.push_back(c.rep);
  int n = (int)out.reps.size();
  std::vector<std::vector<int>> table((std::size_t)n, std::vector<int>((std::size_t)n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Hom prod = compose(out.reps[(std::size_t)i], out.reps[(std::size_t)j]);
      int k = out.index_of(prod);
      if (k < 0) throw defect_error("automizer classes not closed under composition");
      table[(std::size_t)i][(std::size_t)j] = k;
    }
  out.grp = FiniteGroup::from_table("automizer", table);
  return out;
}

std::optional<Subgroup> strongly_p_embedded(const GroupPtr& h, int p) {
  std::optional<Subgroup> best;
  for (const Subgroup& m : h->lattice().subgroups) {
    if (m.order() == h->order()) continue;
    if (m.order() % p != 0) continue;
    bool ok = true;
    for (int t = 0; t < h->order() && ok; ++t) {
      if (m.contains((eid)t)) continue;
      Subgroup conj = conjugate_subgroup(m, (eid)t);
      if (intersect(m, conj).order() % p == 0) ok = false;
    }
    if (ok && (!best || m.order() > best->order())) best = m;
  }
  return best;
}

std::vector<EssentialReport> essential_subgroups(const FusionSystem& f) {
  std::vector<EssentialReport> out;
  // fully normalized minimal rep per proper iso class, large to small
  std::vector<Subgroup> reps;
  for (const auto& cls : f.iso_classes()) {
    if (f.subgroups()[(std::size_t)cls[0]].order() == f.base()->order()) continue;
    for (int si : cls) {
      const Subgroup& q = f.subgroups()[(std::size_t)si];
      if (subgroup_fully_normalized(f, q)) { reps.push_back(q); break; }
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a.members < b.members;
  });
  for (const Subgroup& q : reps) {
    EssentialReport rep;
    rep.q = q;
    rep.selfcentralizing = is_selfcentralizing(f, q);
    rep.automizer = automizer_group(f, q);
    rep.witness = strongly_p_embedded(rep.automizer.grp, f.prime());
    if (rep.witness) {
      // pick the strongly p-embedded subgroup containing the P-automizer
      std::vector<eid> inner;
      for (eid u : normalizer(f.base(), q).members) {
        int idx = rep.automizer.index_of(restrict_hom(conj_hom(u, q), q));
        if (idx < 0) throw defect_error("P-automizer escaped the automizer group");
        inner.push_back((eid)idx);
      }
      std::sort(inner.begin(), inner.end());
      inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
      for (const Subgroup& m : rep.automizer.grp->lattice().subgroups) {
        if (m.order() == rep.automizer.grp->order()) continue;
        if (m.order() % f.prime() != 0) continue;
        if (!std::includes(m.members.begin(), m.members.end(), inner.begin(), inner.end()))
          continue;
        bool spe = true;
        for (int t = 0; t < rep.automizer.grp->order() && spe; ++t) {
          if (m.contains((eid)t)) continue;
          if (intersect(m, conjugate_subgroup(m, (eid)t)).order() % f.prime() == 0) spe = false;
        }
        if (spe) { rep.distinguished = m; break; }
      }
    }
    rep.essential = rep.selfcentralizing && rep.witness.has_value();
    if (rep.essential && !rep.distinguished)
      throw defect_error("essential subgroup without a distinguished witness");
    out.push_back(std::move(rep));
  }
  return out;
}

bool is_irreducible(const FusionSystem& f, const Hom& phi) {
  const GroupPtr& p = f.base();
  Subgroup q = phi.source;
  if (q.order() == p->order()) return false;  // classes over P reduce by definition
  if (!is_selfcentralizing(f, q)) return false;
  AutomizerGroup aut = automizer_group(f, q);
  auto witness = strongly_p_embedded(aut.grp, f.prime());
  if (!witness) return false;  // not essential
  // distinguished witness containing the P-automizer
  std::vector<eid> inner;
  for (eid u : normalizer(p, q).members) {
    int idx = aut.index_of(restrict_hom(conj_hom(u, q), q));
    inner.push_back((eid)idx);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  std::optional<Subgroup> distinguished;
  for (const Subgroup& m : aut.grp->lattice().subgroups) {
    if (m.order() == aut.grp->order() || m.order() % f.prime() != 0) continue;
    if (!std::includes(m.members.begin(), m.members.end(), inner.begin(), inner.end())) continue;
    bool spe = true;
    for (int t = 0; t < aut.grp->order() && spe; ++t) {
      if (m.contains((eid)t)) continue;
      if (intersect(m, conjugate_subgroup(m, (eid)t)).order() % f.prime() == 0) spe = false;
    }
    if (spe) { distinguished = m; break; }
  }
  if (!distinguished) return false;
  // irreducible iff the distinguished subgroup does not contain the
  // transported P-automizer of the image
  std::vector<eid> transported = transported_p_automizer(f, aut, phi);
  return !std::includes(distinguished->members.begin(), distinguished->members.end(),
                        transported.begin(), transported.end());
}

bool are_exchangeable(const FusionSystem& f, const Hom& phi, const Hom& tau) {
  if (phi.source.members != tau.source.members)
    throw input_error("exchangeability twist must share the source");
  Subgroup q = phi.source;
  AutomizerGroup aut = automizer_group(f, q);
  int tidx = aut.index_of(tau);
  if (tidx < 0) throw input_error("twist is not an automizer element");
  // distinguished strongly p-embedded subgroup as in the criterion
  std::vector<eid> inner;
  for (eid u : normalizer(f.base(), q).members)
    inner.push_back((eid)aut.index_of(restrict_hom(conj_hom(u, q), q)));
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  std::optional<Subgroup> distinguished;
  for (const Subgroup& m : aut.grp->lattice().subgroups) {
    if (m.order() == aut.grp->order() || m.order() % f.prime() != 0) continue;
    if (!std::includes(m.members.begin(), m.members.end(), inner.begin(), inner.end())) continue;
    bool spe = true;
    for (int t = 0; t < aut.grp->order() && spe; ++t) {
      if (m.contains((eid)t)) continue;
      if (intersect(m, conjugate_subgroup(m, (eid)t)).order() % f.prime() == 0) spe = false;
    }
    if (spe) { distinguished = m; break; }
  }
  if (!distinguished) throw input_error("exchangeability needs an essential source");
  // M^tau means tau^-1 M tau; the class of phi determines the transported
  // subgroup only up to conjugation by the P-automizer image, so that
  // freedom is quantified out
  Subgroup twisted = conjugate_subgroup(*distinguished, aut.grp->inv((eid)tidx));
  std::vector<eid> transported = transported_p_automizer(f, aut, phi);
  Subgroup tsub{aut.grp, transported};
  for (eid b : inner) {
    Subgroup moved = conjugate_subgroup(tsub, aut.grp->inv(b));
    if (std::includes(twisted.members.begin(), twisted.members.end(), moved.members.begin(),
                      moved.members.end()))
      return true;
  }
  return false;
}

bool are_exchangeable_structural(const FusionSystem& f, const Hom& phi, const Hom& phi2) {
  Subgroup q = phi.source, q2 = phi2.source;
  if (q.order() != q2.order()) return false;
  Subgroup img = phi.image();
  Hom phi_star = inverse_iso(phi);
  for (const Hom& theta : isomorphisms_onto(q, q2)) {
    // f_{phi(Q), phi2 . theta . phi*} and f_{Q2, iota . theta^-1} reducible
    Hom first = compose(phi2, compose(theta, phi_star));
    Hom second = inverse_iso(theta);
    if (!f.contains(first) || !f.contains(second)) continue;
    if (!is_irreducible(f, first) && !is_irreducible(f, second)) return true;
  }
  return false;
}

std::vector<BisetClass> exchangeability_transversal(const FusionSystem& f) {
  const GroupPtr& p = f.base();
  // all irreducible one-sided classes, keyed by canonical form
  std::map<std::vector<eid>, Hom> irr;
  for (const Subgroup& q : f.subgroups())
    for (const Hom& phi : f.homs(q))
      if (is_irreducible(f, phi)) irr.emplace(biset_class_of_hom(p, p, phi).rep, phi);
  // partition by structural exchangeability, keep the minimal class each
  std::vector<BisetClass> out;
  std::set<std::vector<eid>> consumed;
  for (const auto& [rep, phi] : irr) {
    if (consumed.count(rep)) continue;
    out.push_back(biset_class_of_subgroup(p, p, rep));
    for (const auto& [rep2, phi2] : irr) {
      if (consumed.count(rep2)) continue;
      if (rep2 == rep || are_exchangeable_structural(f, phi, phi2)) consumed.insert(rep2);
    }
  }
  return out;
}

bool is_irreducible_by_search(const FusionSystem& f, const Hom& phi) {
  const GroupPtr& p = f.base();
  Subgroup q = phi.source;
  if (q.order() == p->order()) return false;
  BisetClass target = biset_class_of_hom(p, p, phi);
  // classes over strictly larger subgroups
  std::set<std::vector<eid>> bigger;
  for (const Subgroup& r : f.subgroups()) {
    if (r.order() <= q.order()) continue;
    for (const Hom& psi : f.homs(r)) bigger.insert(biset_class_of_hom(p, p, psi).rep);
  }
  // closure of the supports of products of such classes
  std::set<std::vector<eid>> reach = bigger;
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<std::vector<eid>> next = reach;
    for (const auto& a : reach)
      for (const auto& b : bigger) {
        BisetClass ca = biset_class_of_subgroup(p, p, a);
        BisetClass cb = biset_class_of_subgroup(p, p, b);
        for (const BisetClass& t : compose_classes(ca, cb))
          if (next.insert(t.rep).second) grew = true;
      }
    reach = std::move(next);
  }
  for (const auto& r : reach)
    if (fixed_point_count(target.pair, target.rep, r) != 0) return false;
  return true;
}

namespace {

struct RawStep {
  Subgroup q;
  Hom phi;
};

std::vector<RawStep> decompose_raw(const FusionSystem& f, const Hom& phi, int depth);

// automorphism move at a fully normalized subgroup
std::vector<RawStep> autchain(const FusionSystem& f, const Hom& tau_hom, int depth) {
  if (depth > 32) throw defect_error("decomposition recursion exceeded its bound");
  Subgroup t = tau_hom.source;
  if (exterior_is_inclusion(tau_hom)) return {};
  Subgroup n = n_phi(f, tau_hom);
  if (n.order() > t.order()) {
    for (const Hom& nu : f.homs(n))
      if (restrict_hom(nu, t).img == tau_hom.img) return decompose_raw(f, nu, depth + 1);
    throw defect_error("saturation defect: missing extension in the automorphism move");
  }
  if (is_irreducible(f, tau_hom)) return {RawStep{t, tau_hom}};
  // reducible escape: factor through the automizer; bounded search
  for (const Hom& a : f.automizer(t)) {
    Hom a_inv = inverse_iso(a);
    Hom tau1 = compose(tau_hom, compose(a_inv, inclusion_hom(t)));  // tau . a^-1 into P
    Hom part2 = compose(inclusion_hom(t), a);
    bool p1_ok = exterior_is_inclusion(tau1) || n_phi(f, tau1).order() > t.order() ||
                 is_irreducible(f, tau1);
    bool p2_ok = exterior_is_inclusion(part2) || n_phi(f, part2).order() > t.order() ||
                 is_irreducible(f, part2);
    if (a.img == inclusion_hom(t).img || compose(tau_hom, a_inv).img == tau_hom.img) continue;
    if (p1_ok && p2_ok) {
      std::vector<RawStep> out = autchain(f, part2, depth + 1);
      std::vector<RawStep> tail = autchain(f, tau1, depth + 1);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
  }
  throw defect_error("reducible escape could not be factored");
}

std::vector<RawStep> decompose_raw(const FusionSystem& f, const Hom& phi, int depth) {
  if (depth > 32) throw defect_error("decomposition recursion exceeded its bound");
  const GroupPtr& p = f.base();
  Subgroup q = phi.source;
  if (exterior_is_inclusion(phi)) return {RawStep{p->whole(), identity_hom(p)}};
  if (q.order() == p->order()) return {RawStep{p->whole(), phi}};

  // fully normalized representative of the class of Q
  Subgroup t = q;
  for (int si : f.iso_classes()[(std::size_t)f.iso_class_of(f.subgroup_index(q))]) {
    const Subgroup& cand = f.subgroups()[(std::size_t)si];
    if (subgroup_fully_normalized(f, cand)) { t = cand; break; }
  }
  Subgroup qimg = phi.image();

  // extendable isomorphisms onto the representative
  auto extendable_iso = [&](const Subgroup& from) -> std::pair<Hom, Hom> {
    Subgroup nfrom = normalizer(p, from);
    for (const Hom& cand : f.homs(from)) {
      if (!(cand.image().members == t.members)) continue;
      for (const Hom& ext : f.homs(nfrom))
        if (restrict_hom(ext, from).img == cand.img) return {cand, ext};
    }
    throw defect_error("saturation defect: no extendable isomorphism onto the representative");
  };
  auto [sigma0, s] = extendable_iso(q);
  auto [sigma1, s1] = extendable_iso(qimg);

  // phi = (iota . sigma1^*) . tau . sigma0 with tau an automorphism move at t
  Hom tau = compose(sigma1, compose(phi, inverse_iso(sigma0)));

  std::vector<RawStep> steps;
  steps.push_back(RawStep{normalizer(p, q), s});
  std::vector<RawStep> mid = autchain(f, tau, depth + 1);
  steps.insert(steps.end(), mid.begin(), mid.end());
  Hom back = inverse_iso(s1);  // s1(N_P(Q')) -> P
  if (!exterior_is_inclusion(back)) steps.push_back(RawStep{back.source, back});
  return steps;
}

// exterior tracker search: fill psi_i from the chain equalities
bool find_trackers(const FusionSystem& f, const Hom& phi, std::vector<ChainStep>& steps,
                   std::size_t at, const Hom& carried) {
  const GroupPtr& p = f.base();
  if (at == steps.size())
    return exterior_equal(carried, phi, p->whole());
  // need u with u . carried(Q) u^-1 inside Q_i; tracker = kappa_u . carried
  std::set<std::vector<eid>> tried;
  for (int u = 0; u < p->order(); ++u) {
    std::vector<eid> img(carried.img.size());
    bool inside = true;
    for (std::size_t k = 0; k < img.size(); ++k) {
      img[k] = p->conj((eid)u, carried.img[k]);
      if (!steps[at].q.contains(img[k])) { inside = false; break; }
    }
    if (!inside || !tried.insert(img).second) continue;
    Hom tracker{carried.source, p, img};
    std::vector<eid> next_img(img.size());
    for (std::size_t k = 0; k < img.size(); ++k) next_img[k] = steps[at].phi.apply(img[k]);
    Hom carried_next{carried.source, p, next_img};
    steps[at].tracker = tracker;
    if (find_trackers(f, phi, steps, at + 1, carried_next)) return true;
  }
  return false;
}

}  // namespace

AlperinChain alperin_decompose(const FusionSystem& f, const Hom& phi) {
  if (!f.contains(phi)) throw input_error("not a morphism of the system");
  const GroupPtr& p = f.base();
  AlperinChain out;
  std::vector<RawStep> raw = decompose_raw(f, phi, 0);
  for (const RawStep& st : raw) {
    ChainStep cs;
    cs.q = st.q;
    cs.phi = st.phi;
    cs.cls = biset_class_of_hom(p, p, st.phi);
    cs.tracker = inclusion_hom(phi.source);  // placeholder until the search runs
    out.steps.push_back(std::move(cs));
  }
  out.chain_equalities = find_trackers(f, phi, out.steps, 0, inclusion_hom(phi.source));

  // composition and natural-map check
  VirtualBiset prod = VirtualBiset::single(out.steps.front().cls);
  for (std::size_t i = 1; i < out.steps.size(); ++i)
    prod = compose(VirtualBiset::single(out.steps[i].cls), prod);
  BisetClass target = biset_class_of_hom(p, p, phi);
  out.natural_map = false;
  for (const auto& [c, r] : prod.coeffs())
    if (fixed_point_count(c.pair, target.rep, c.rep) != 0) out.natural_map = true;

  // normal form: replace reducible non-top steps by their own chains, then
  // push the automorphism prefixes together
  std::vector<std::pair<Subgroup, Hom>> flat;
  for (const ChainStep& st : out.steps) flat.push_back({st.q, st.phi});
  bool changed = true;
  int rounds = 0;
  while (changed) {
    changed = false;
    if (++rounds > 64) throw defect_error("normal form did not stabilize");
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (flat[i].first.order() == p->order()) continue;
      if (is_irreducible(f, flat[i].second)) continue;
      std::vector<RawStep> sub = decompose_raw(f, flat[i].second, 0);
      std::vector<std::pair<Subgroup, Hom>> next;
      next.insert(next.end(), flat.begin(), flat.begin() + (long)i);
      for (const RawStep& st : sub) next.push_back({st.q, st.phi});
      next.insert(next.end(), flat.begin() + (long)i + 1, flat.end());
      flat = std::move(next);
      changed = true;
      break;
    }
  }
  // move automorphism steps left with the conjugation rule
  changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
      if (flat[i].first.order() != p->order()) continue;
      if (flat[i + 1].first.order() == p->order()) {
        // merge adjacent automorphism steps
        Hom merged = compose(flat[i + 1].second, flat[i].second);
        flat[i] = {p->whole(), merged};
        flat.erase(flat.begin() + (long)i + 1);
        changed = true;
        break;
      }
      // (P, chi) below (R, psi): rewrite as (chi^-1 R, chi^-1 psi chi) then (P, chi)
      Hom chi = flat[i].second;
      Hom chi_inv = inverse_iso(chi);
      Subgroup r = flat[i + 1].first;
      Subgroup rback = restrict_hom(chi_inv, r).image();
      Hom twisted = compose(chi_inv, compose(flat[i + 1].second, restrict_hom(chi, rback)));
      flat[i] = {rback, twisted};
      flat[i + 1] = {p->whole(), chi};
      changed = true;
      break;
    }
  }
  // now every automorphism step sits on top; merge them into sigma
  Hom sigma = identity_hom(p);
  while (!flat.empty() && flat.back().first.order() == p->order()) {
    sigma = compose(sigma, flat.back().second);
    flat.pop_back();
  }
  out.sigma = sigma;
  std::vector<BisetClass> transversal = exchangeability_transversal(f);
  std::set<std::vector<eid>> trans_reps;
  for (const BisetClass& c : transversal) trans_reps.insert(c.rep);
  out.normalized_ok = true;
  for (const auto& [qq, ps] : flat) {
    BisetClass c = biset_class_of_hom(p, p, ps);
    out.family.push_back(c);
    if (!trans_reps.count(c.rep)) out.normalized_ok = false;
  }
  if (out.normalized_ok) {
    VirtualBiset total = VirtualBiset::single(biset_class_of_hom(p, p, sigma));
    for (auto it = out.family.rbegin(); it != out.family.rend(); ++it)
      total = compose(total, VirtualBiset::single(*it));
    bool hit = false;
    for (const auto& [c, r] : total.coeffs())
      if (fixed_point_count(c.pair, target.rep, c.rep) != 0) hit = true;
    out.normalized_ok = hit;
  }
  return out;
}

}  // namespace hecke
