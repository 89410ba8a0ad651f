#include "hecke/fusion.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hecke {

FusionSystem::FusionSystem(GroupPtr p, int prime, std::vector<std::vector<Hom>> homs)
    : p_(std::move(p)), prime_(prime), homs_(std::move(homs)) {
  const auto& lat = p_->lattice();
  if (homs_.size() != lat.subgroups.size()) throw defect_error("fusion: homset count mismatch");
  for (auto& hs : homs_) std::sort(hs.begin(), hs.end());
  // iso classes: connect a subgroup with every image of its morphisms
  std::vector<int> uf(lat.subgroups.size());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = (int)i;
  std::vector<int>* ufp = &uf;
  auto find = [ufp](int x) {
    while ((*ufp)[(std::size_t)x] != x)
      x = (*ufp)[(std::size_t)x] = (*ufp)[(std::size_t)(*ufp)[(std::size_t)x]];
    return x;
  };
  for (std::size_t i = 0; i < homs_.size(); ++i)
    for (const Hom& h : homs_[i]) {
      int j = lat.index_of(h.image());
      if (j < 0) throw defect_error("fusion: image not a subgroup");
      int a = find((int)i), b = find(j);
      if (a != b) uf[(std::size_t)std::max(a, b)] = std::min(a, b);
    }
  iso_class_of_.assign(lat.subgroups.size(), -1);
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
    int root = find((int)i);
    if (iso_class_of_[(std::size_t)root] < 0) {
      iso_class_of_[(std::size_t)root] = (int)iso_classes_.size();
      iso_classes_.push_back({});
    }
    iso_class_of_[i] = iso_class_of_[(std::size_t)root];
    iso_classes_[(std::size_t)iso_class_of_[i]].push_back((int)i);
  }
}

const std::vector<Subgroup>& FusionSystem::subgroups() const {
  return p_->lattice().subgroups;
}

const std::vector<Hom>& FusionSystem::homs(int subgroup_index) const {
  return homs_[(std::size_t)subgroup_index];
}

int FusionSystem::subgroup_index(const Subgroup& q) const {
  int i = p_->lattice().index_of(q);
  if (i < 0) throw input_error("not a subgroup of the base group");
  return i;
}

const std::vector<Hom>& FusionSystem::homs(const Subgroup& q) const {
  return homs_[(std::size_t)subgroup_index(q)];
}

std::vector<Hom> FusionSystem::homs_into(const Subgroup& q, const Subgroup& r) const {
  std::vector<Hom> out;
  for (const Hom& h : homs(q)) {
    bool inside = true;
    for (eid e : h.img)
      if (!r.contains(e)) { inside = false; break; }
    if (inside) out.push_back(h);
  }
  return out;
}

std::vector<Hom> FusionSystem::automizer(const Subgroup& q) const {
  std::vector<Hom> out;
  for (const Hom& h : homs(q))
    if (h.image().members == q.members) out.push_back(h);
  return out;
}

bool FusionSystem::contains(const Hom& phi) const {
  const auto& hs = homs(phi.source);
  return std::binary_search(hs.begin(), hs.end(), phi);
}

FusionSystem fusion_of_group(const GroupPtr& g, const Subgroup& p, int prime) {
  long long ppart = 1;
  {
    long long n = g->order();
    while (n % prime == 0) { n /= prime; ppart *= prime; }
  }
  if (p.order() != ppart) throw input_error("P is not a Sylow p-subgroup");
  const AsGroup& small = small_group_of(p);
  const auto& lat = small.grp->lattice();
  std::vector<std::vector<Hom>> homs(lat.subgroups.size());
  for (std::size_t qi = 0; qi < lat.subgroups.size(); ++qi) {
    const Subgroup& q = lat.subgroups[qi];
    std::set<std::vector<eid>> seen;
    for (int ge = 0; ge < g->order(); ++ge) {
      std::vector<eid> img(q.members.size());
      bool lands = true;
      for (std::size_t i = 0; i < q.members.size(); ++i) {
        eid big = small.to_parent[q.members[i]];
        eid cj = g->conj((eid)ge, big);
        if (!p.contains(cj)) { lands = false; break; }
        img[i] = (eid)small.from_parent[cj];
      }
      if (lands && seen.insert(img).second)
        homs[qi].push_back(Hom{q, small.grp, std::move(img)});
    }
  }
  return FusionSystem(small.grp, prime, std::move(homs));
}

FusionSystem inner_fusion(const GroupPtr& p, int prime) {
  return fusion_of_group(p, p->whole(), prime);
}

bool exterior_equal(const Hom& a, const Hom& b, const Subgroup& target) {
  if (a.source.members != b.source.members) return false;
  const auto& G = *a.target;
  for (eid u : target.members) {
    bool ok = true;
    for (std::size_t i = 0; i < a.img.size(); ++i)
      if (b.img[i] != G.conj(u, a.img[i])) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

std::vector<ExtClass> exterior_classes(const FusionSystem& f, const Subgroup& q,
                                       const Subgroup& r) {
  std::vector<Hom> morphs = f.homs_into(q, r);
  const auto& G = *f.base();
  std::vector<ExtClass> out;
  std::set<std::vector<eid>> assigned;
  for (const Hom& h : morphs) {
    if (assigned.count(h.img)) continue;
    ExtClass cls;
    std::set<std::vector<eid>> orbit;
    if constexpr (kExteriorQuotientByTarget) {
      for (eid u : r.members) {
        std::vector<eid> img(h.img.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = G.conj(u, h.img[i]);
        orbit.insert(img);
      }
    } else {
      // pre-composition with the inner automorphisms of the source
      for (eid u : q.members) {
        std::vector<eid> img(h.img.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = h.apply(G.conj(u, q.members[i]));
        orbit.insert(img);
      }
    }
    for (const auto& img : orbit) {
      assigned.insert(img);
      cls.orbit.push_back(Hom{h.source, h.target, img});
    }
    std::sort(cls.orbit.begin(), cls.orbit.end());
    cls.rep = cls.orbit.front();
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(),
            [](const ExtClass& a, const ExtClass& b) { return a.rep < b.rep; });
  return out;
}

Subgroup n_phi(const FusionSystem& f, const Hom& phi) {
  const auto& G = *f.base();
  Subgroup q = phi.source;
  Subgroup image = phi.image();
  Subgroup nq = normalizer(f.base(), q);
  Subgroup nimg = normalizer(f.base(), image);
  std::vector<eid> members;
  for (eid u : nq.members) {
    // need v in N_P(phi(Q)) with phi(u x u^-1) = v phi(x) v^-1 for all x
    bool found = false;
    for (eid v : nimg.members) {
      bool ok = true;
      for (std::size_t i = 0; i < q.members.size(); ++i)
        if (phi.apply(G.conj(u, q.members[i])) != G.conj(v, phi.img[i])) { ok = false; break; }
      if (ok) { found = true; break; }
    }
    if (found) members.push_back(u);
  }
  return Subgroup{f.base(), std::move(members)};
}

bool is_fully_centralized(const FusionSystem& f, const Hom& phi) {
  int mine = centralizer(f.base(), phi.image()).order();
  for (const Hom& other : f.homs(phi.source))
    if (centralizer(f.base(), other.image()).order() > mine) return false;
  return true;
}

bool is_fully_normalized(const FusionSystem& f, const Hom& phi) {
  int mine = normalizer(f.base(), phi.image()).order();
  for (const Hom& other : f.homs(phi.source))
    if (normalizer(f.base(), other.image()).order() > mine) return false;
  return true;
}

bool subgroup_fully_normalized(const FusionSystem& f, const Subgroup& q) {
  return is_fully_normalized(f, inclusion_hom(q));
}

SaturationVerdict is_frobenius(const FusionSystem& f) {
  SaturationVerdict v;
  const GroupPtr& p = f.base();
  // Sylow axiom: the inner automorphisms form a Sylow p-subgroup of the
  // automorphism group of P inside the system
  long long aut = (long long)f.automizer(p->whole()).size();
  long long inn = (long long)p->order() / center(p).order();
  if (aut % inn != 0 || (aut / inn) % f.prime() == 0) {
    v.failed_axiom = "sylow";
    v.witness_q = p->whole();
    return v;
  }
  // extension axiom
  for (const Subgroup& q : f.subgroups()) {
    for (const Hom& phi : f.homs(q)) {
      Subgroup image = phi.image();
      Subgroup cimg = centralizer(p, image);
      std::vector<eid> gens = image.members;
      gens.insert(gens.end(), cimg.members.begin(), cimg.members.end());
      Subgroup big = generated_subgroup(p, gens);
      bool condition = true;
      for (const Hom& zeta : f.homs(big)) {
        Subgroup lhs = restrict_hom(zeta, cimg).image();
        Subgroup zimg = restrict_hom(zeta, image).image();
        if (lhs.members != centralizer(p, zimg).members) { condition = false; break; }
      }
      if (!condition) continue;
      Subgroup n = n_phi(f, phi);
      bool extended = false;
      for (const Hom& psi : f.homs(n))
        if (restrict_hom(psi, q).img == phi.img) { extended = true; break; }
      if (!extended) {
        v.failed_axiom = "extension";
        v.witness_q = q;
        v.witness_phi = phi;
        return v;
      }
    }
  }
  v.saturated = true;
  return v;
}

bool divisibility_holds(const FusionSystem& f) {
  const GroupPtr& p = f.base();
  for (const Subgroup& q : f.subgroups()) {
    const AsGroup& qg = small_group_of(q);
    for (const Subgroup& r : f.subgroups()) {
      if (r.order() > q.order()) continue;
      for (const Hom& th : injective_homs(r, qg.grp)) {
        // theta: R -> Q expressed back in P
        std::vector<eid> img(th.img.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = qg.to_parent[th.img[i]];
        Hom theta{r, p, std::move(img)};
        bool seen_composite = false;
        for (const Hom& phi : f.homs(q))
          if (f.contains(compose(phi, theta))) { seen_composite = true; break; }
        if (!seen_composite) continue;
        for (const Hom& phi2 : f.homs(q))
          if (!f.contains(compose(phi2, theta))) return false;
      }
    }
  }
  return true;
}

ExtCounts exterior_counts(const FusionSystem& f, const Subgroup& q) {
  ExtCounts out;
  const GroupPtr& p = f.base();
  Rational sum(0);
  long long nq = normalizer(p, q).order();
  for (const ExtClass& cls : exterior_classes(f, q, p->whole())) {
    if (is_fully_centralized(f, cls.rep)) ++out.fc;
    if (is_fully_normalized(f, cls.rep)) ++out.fn;
    sum += Rational(nq, normalizer(p, cls.rep.image()).order());
  }
  out.ratio_sum_integral = sum.is_integer();
  if (out.ratio_sum_integral) out.ratio_sum = sum.num();
  return out;
}

FusionSystem product_fusion(const GroupPtr& g, const Subgroup& p, int prime) {
  GroupPtr g2 = FiniteGroup::product(g, g);
  std::vector<eid> members;
  members.reserve((std::size_t)p.order() * p.order());
  for (eid a : p.members)
    for (eid b : p.members) members.push_back(g2->pair(a, b));
  std::sort(members.begin(), members.end());
  return fusion_of_group(g2, Subgroup{g2, std::move(members)}, prime);
}

}  // namespace hecke
