#include "hecke/group.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace hecke {

Guards& guards() {
  static Guards g;
  return g;
}

bool Subgroup::contains(eid e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(members.begin(), members.end(), other.members.begin(),
                       other.members.end());
}

eid Hom::apply(eid e) const {
  auto it = std::lower_bound(source.members.begin(), source.members.end(), e);
  if (it == source.members.end() || *it != e)
    throw defect_error("hom applied outside its source");
  return img[(std::size_t)(it - source.members.begin())];
}

bool Hom::is_injective() const {
  std::vector<eid> v = img;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

Subgroup Hom::image() const {
  std::vector<eid> v = img;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return Subgroup{target, std::move(v)};
}

int SubgroupLattice::index_of(const Subgroup& s) const {
  auto it = std::lower_bound(subgroups.begin(), subgroups.end(), s);
  if (it == subgroups.end() || !(*it == s)) return -1;
  return (int)(it - subgroups.begin());
}

void FiniteGroup::finish_tables() {
  static std::atomic<unsigned long long> next_uid{1};
  uid_ = next_uid.fetch_add(1);
  inv_.assign((std::size_t)n_, 0);
  for (int a = 0; a < n_; ++a) {
    bool found = false;
    for (int b = 0; b < n_; ++b)
      if (mul((eid)a, (eid)b) == id_ && mul((eid)b, (eid)a) == id_) {
        inv_[(std::size_t)a] = (eid)b;
        found = true;
        break;
      }
    if (!found) throw input_error("element without two-sided inverse in " + name_);
  }
}

GroupPtr FiniteGroup::from_table(const std::string& name,
                                 const std::vector<std::vector<int>>& table,
                                 std::optional<int> p) {
  int n = (int)table.size();
  if (n == 0 || n > guards().max_group_order) throw guard_error("group order out of bounds");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = name;
  g->n_ = n;
  g->prime_ = p;
  g->mul_.assign((std::size_t)n * n, 0);
  for (int i = 0; i < n; ++i) {
    if ((int)table[(std::size_t)i].size() != n) throw input_error("ragged Cayley table");
    for (int j = 0; j < n; ++j) {
      int v = table[(std::size_t)i][(std::size_t)j];
      if (v < 0 || v >= n) throw input_error("Cayley entry out of range");
      g->mul_[(std::size_t)i * n + j] = (eid)v;
    }
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g->mul((eid)e, (eid)x) == x && g->mul((eid)x, (eid)e) == x;
    if (ok) { id = e; break; }
  }
  if (id < 0) throw input_error("Cayley table has no identity");
  g->id_ = (eid)id;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->mul(g->mul((eid)a, (eid)b), (eid)c) != g->mul((eid)a, g->mul((eid)b, (eid)c)))
          throw input_error("Cayley table not associative");
  g->finish_tables();
  return g;
}

namespace {

std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b) {
  // (a*b)(x) = a(b(x))
  std::vector<int> r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[(std::size_t)b[x]];
  return r;
}

}  // namespace

GroupPtr FiniteGroup::from_perm_gens(const std::string& name, int degree,
                                     const std::vector<std::vector<int>>& gens,
                                     std::optional<int> p) {
  for (const auto& g : gens) {
    if ((int)g.size() != degree) throw input_error("generator degree mismatch");
    std::vector<bool> seen((std::size_t)degree, false);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[(std::size_t)v]) throw input_error("not a permutation");
      seen[(std::size_t)v] = true;
    }
  }
  std::vector<int> idp((std::size_t)degree);
  for (int i = 0; i < degree; ++i) idp[(std::size_t)i] = i;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  elems.push_back(idp);
  index[idp] = 0;
  // closure, breadth-first; discovery order fixes the element ids
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> w = perm_compose(elems[head], g);
      if (index.emplace(w, (int)elems.size()).second) {
        elems.push_back(std::move(w));
        if ((int)elems.size() > guards().max_group_order)
          throw guard_error("permutation closure exceeds guard");
      }
    }
  }
  int n = (int)elems.size();
  auto grp = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  grp->name_ = name;
  grp->n_ = n;
  grp->prime_ = p;
  grp->id_ = 0;
  grp->mul_.assign((std::size_t)n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      grp->mul_[(std::size_t)a * n + b] = (eid)index.at(perm_compose(elems[(std::size_t)a], elems[(std::size_t)b]));
  grp->finish_tables();
  return grp;
}

GroupPtr FiniteGroup::product(const GroupPtr& a, const GroupPtr& b) {
  // strong registry: keeps every requested product alive so biset classes
  // built over it always share one instance
  static std::mutex mx;
  static auto& cache = *new std::map<std::pair<unsigned long long, unsigned long long>, GroupPtr>();
  std::lock_guard<std::mutex> lock(mx);
  auto key = std::make_pair(a->uid(), b->uid());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  long long n = (long long)a->order() * b->order();
  if (n > guards().max_product_order) throw guard_error("direct product exceeds guard");
  auto grp = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  grp->name_ = a->name() + "x" + b->name();
  grp->n_ = (int)n;
  grp->left_ = a;
  grp->right_ = b;
  if (a->declared_prime() && a->declared_prime() == b->declared_prime())
    grp->prime_ = a->declared_prime();
  int m = b->order();
  grp->id_ = (eid)((int)a->identity() * m + b->identity());
  grp->mul_.assign((std::size_t)n * n, 0);
  for (int x = 0; x < (int)n; ++x) {
    int xa = x / m, xb = x % m;
    for (int y = 0; y < (int)n; ++y) {
      int ya = y / m, yb = y % m;
      grp->mul_[(std::size_t)x * n + y] =
          (eid)((int)a->mul((eid)xa, (eid)ya) * m + b->mul((eid)xb, (eid)yb));
    }
  }
  grp->finish_tables();
  cache[key] = grp;
  return grp;
}

int FiniteGroup::element_order(eid a) const {
  int k = 1;
  eid x = a;
  while (x != id_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

Subgroup FiniteGroup::whole() const {
  std::vector<eid> m((std::size_t)n_);
  for (int i = 0; i < n_; ++i) m[(std::size_t)i] = (eid)i;
  return Subgroup{shared_from_this(), std::move(m)};
}

Subgroup FiniteGroup::trivial() const {
  return Subgroup{shared_from_this(), {id_}};
}

std::unique_ptr<SubgroupLattice> FiniteGroup::compute_lattice() const {
  int limit = is_product() ? guards().max_product_order : guards().max_group_order;
  if (n_ > limit) throw guard_error("subgroup enumeration exceeds guard for " + name_);
  auto self = shared_from_this();
  auto lat = std::make_unique<SubgroupLattice>();
  std::set<std::vector<eid>> seen;
  std::vector<std::vector<eid>> work;
  std::vector<eid> triv{id_};
  seen.insert(triv);
  work.push_back(triv);
  for (std::size_t head = 0; head < work.size(); ++head) {
    std::vector<eid> base = work[head];
    for (int g = 0; g < n_; ++g) {
      if (std::binary_search(base.begin(), base.end(), (eid)g)) continue;
      std::vector<eid> gens = base;
      gens.push_back((eid)g);
      Subgroup s = generated_subgroup(self, gens);
      if (seen.insert(s.members).second) work.push_back(s.members);
    }
  }
  for (auto& m : seen) lat->subgroups.push_back(Subgroup{self, m});
  std::sort(lat->subgroups.begin(), lat->subgroups.end());
  // conjugacy classes
  lat->class_of.assign(lat->subgroups.size(), -1);
  for (std::size_t i = 0; i < lat->subgroups.size(); ++i) {
    if (lat->class_of[i] >= 0) continue;
    int ci = (int)lat->classes.size();
    std::vector<int> cls;
    for (int g = 0; g < n_; ++g) {
      Subgroup c = conjugate_subgroup(lat->subgroups[i], (eid)g);
      int j = lat->index_of(c);
      if (lat->class_of[(std::size_t)j] < 0) {
        lat->class_of[(std::size_t)j] = ci;
        cls.push_back(j);
      }
    }
    std::sort(cls.begin(), cls.end());
    lat->classes.push_back(std::move(cls));
  }
  return lat;
}

const SubgroupLattice& FiniteGroup::lattice() const {
  {
    std::lock_guard<std::mutex> lock(lattice_mx_);
    if (lattice_) return *lattice_;
  }
  auto lat = compute_lattice();
  std::lock_guard<std::mutex> lock(lattice_mx_);
  if (!lattice_) lattice_ = std::move(lat);
  return *lattice_;
}

bool FiniteGroup::lattice_ready() const {
  std::lock_guard<std::mutex> lock(lattice_mx_);
  return (bool)lattice_;
}

void FiniteGroup::install_lattice(SubgroupLattice lat) const {
  auto self = shared_from_this();
  // validate: every listed member set is a closed subgroup and classes are
  // a partition; reject bad data so a tampered cache entry falls back to
  // recomputation
  for (auto& s : lat.subgroups) {
    s.parent = self;
    subgroup_from_members(self, s.members);
  }
  if (lat.class_of.size() != lat.subgroups.size()) throw input_error("lattice class map size");
  for (int ci : lat.class_of)
    if (ci < 0 || ci >= (int)lat.classes.size()) throw input_error("lattice class map range");
  std::lock_guard<std::mutex> lock(lattice_mx_);
  if (!lattice_) lattice_ = std::make_unique<SubgroupLattice>(std::move(lat));
}

Subgroup subgroup_from_members(const GroupPtr& g, std::vector<eid> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s{g, std::move(members)};
  if (!s.contains(g->identity())) throw input_error("subgroup without identity");
  for (eid a : s.members)
    for (eid b : s.members)
      if (!s.contains(g->mul(a, b))) throw input_error("member set not closed");
  return s;
}

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<eid>& gens) {
  std::vector<bool> in((std::size_t)g->order(), false);
  std::vector<eid> work{g->identity()};
  in[g->identity()] = true;
  std::vector<eid> cl;
  cl.reserve(16);
  for (std::size_t head = 0; head < work.size(); ++head) {
    for (eid x : gens) {
      eid y = g->mul(work[head], x);
      if (!in[y]) { in[y] = true; work.push_back(y); }
      y = g->mul(work[head], g->inv(x));
      if (!in[y]) { in[y] = true; work.push_back(y); }
    }
  }
  std::sort(work.begin(), work.end());
  return Subgroup{g, std::move(work)};
}

Subgroup conjugate_subgroup(const Subgroup& s, eid g) {
  const auto& G = *s.parent;
  std::vector<eid> m(s.members.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = G.conj(g, s.members[i]);
  std::sort(m.begin(), m.end());
  return Subgroup{s.parent, std::move(m)};
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<eid> m;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(m));
  return Subgroup{a.parent, std::move(m)};
}

Subgroup normalizer(const Subgroup& inside, const Subgroup& q) {
  const auto& G = *q.parent;
  std::vector<eid> m;
  for (eid g : inside.members) {
    bool ok = true;
    for (eid x : q.members)
      if (!q.contains(G.conj(g, x))) { ok = false; break; }
    if (ok) m.push_back(g);
  }
  return Subgroup{q.parent, std::move(m)};
}

Subgroup centralizer(const Subgroup& inside, const Subgroup& q) {
  const auto& G = *q.parent;
  std::vector<eid> m;
  for (eid g : inside.members) {
    bool ok = true;
    for (eid x : q.members)
      if (G.mul(g, x) != G.mul(x, g)) { ok = false; break; }
    if (ok) m.push_back(g);
  }
  return Subgroup{q.parent, std::move(m)};
}

Subgroup normalizer(const GroupPtr& g, const Subgroup& q) { return normalizer(g->whole(), q); }
Subgroup centralizer(const GroupPtr& g, const Subgroup& q) { return centralizer(g->whole(), q); }
Subgroup center(const GroupPtr& g) { return centralizer(g, g->whole()); }

std::vector<eid> double_coset_reps_in(const Subgroup& s, const Subgroup& h, const Subgroup& k) {
  const auto& G = *s.parent;
  std::vector<bool> done((std::size_t)G.order(), true);
  for (eid e : s.members) done[e] = false;
  std::vector<eid> reps;
  for (eid e : s.members) {
    if (done[e]) continue;
    reps.push_back(e);
    for (eid a : h.members)
      for (eid b : k.members) done[G.mul(G.mul(a, e), b)] = true;
  }
  return reps;
}

std::vector<eid> double_coset_reps(const GroupPtr& g, const Subgroup& h, const Subgroup& k) {
  return double_coset_reps_in(g->whole(), h, k);
}

std::vector<eid> left_coset_reps(const GroupPtr& g, const Subgroup& h) {
  std::vector<bool> done((std::size_t)g->order(), false);
  std::vector<eid> reps;
  for (int e = 0; e < g->order(); ++e) {
    if (done[(std::size_t)e]) continue;
    reps.push_back((eid)e);
    for (eid a : h.members) done[g->mul((eid)e, a)] = true;
  }
  return reps;
}

Hom conj_hom(eid g, const Subgroup& q) {
  const auto& G = *q.parent;
  std::vector<eid> img(q.members.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = G.conj(g, q.members[i]);
  return Hom{q, q.parent, std::move(img)};
}

Hom inclusion_hom(const Subgroup& q) {
  return Hom{q, q.parent, q.members};
}

Hom identity_hom(const GroupPtr& g) { return inclusion_hom(g->whole()); }

Hom compose(const Hom& outer, const Hom& inner) {
  std::vector<eid> img(inner.img.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = outer.apply(inner.img[i]);
  return Hom{inner.source, outer.target, std::move(img)};
}

Hom restrict_hom(const Hom& h, const Subgroup& smaller) {
  std::vector<eid> img(smaller.members.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = h.apply(smaller.members[i]);
  return Hom{smaller, h.target, std::move(img)};
}

Hom inverse_iso(const Hom& h) {
  if (!h.is_injective()) throw defect_error("inverse of non-injective hom");
  Subgroup im = h.image();
  std::vector<eid> img(im.members.size());
  for (std::size_t i = 0; i < h.img.size(); ++i) {
    auto it = std::lower_bound(im.members.begin(), im.members.end(), h.img[i]);
    img[(std::size_t)(it - im.members.begin())] = h.source.members[i];
  }
  return Hom{im, h.source.parent, std::move(img)};
}

std::vector<eid> generators_of(const Subgroup& s) {
  std::vector<eid> gens;
  Subgroup cur{s.parent, {s.parent->identity()}};
  while (cur.members.size() < s.members.size()) {
    // first element not yet generated
    for (eid e : s.members)
      if (!cur.contains(e)) {
        gens.push_back(e);
        cur = generated_subgroup(s.parent, gens);
        break;
      }
  }
  return gens;
}

std::vector<Hom> injective_homs(const Subgroup& q, const GroupPtr& p) {
  std::vector<eid> gens = generators_of(q);
  if (gens.empty()) return {Hom{q, p, {p->identity()}}};
  double budget = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) budget *= p->order();
  if (budget > (double)guards().max_hom_search) throw guard_error("hom search exceeds guard");

  // express every element of q as a word over gens (BFS, deterministic)
  const auto& G = *q.parent;
  std::vector<int> via((std::size_t)G.order(), -1), from((std::size_t)G.order(), -1);
  std::vector<eid> work{G.identity()};
  via[G.identity()] = -2;
  for (std::size_t head = 0; head < work.size(); ++head)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      eid y = G.mul(work[head], gens[gi]);
      if (via[y] == -1) {
        via[y] = (int)gi;
        from[y] = work[head];
        work.push_back(y);
      }
    }

  std::vector<Hom> out;
  std::vector<eid> choice(gens.size(), 0);
  std::vector<int> ords(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) ords[i] = G.element_order(gens[i]);

  std::vector<eid> imgmap((std::size_t)G.order(), 0);
  auto attempt = [&]() {
    // image of each element from its word
    for (eid e : work) {
      if (via[e] == -2)
        imgmap[e] = p->identity();
      else
        imgmap[e] = p->mul(imgmap[(std::size_t)from[e]], choice[(std::size_t)via[e]]);
    }
    std::vector<bool> hit((std::size_t)p->order(), false);
    for (eid e : q.members) {
      if (hit[imgmap[e]]) return;  // not injective
      hit[imgmap[e]] = true;
    }
    for (eid a : q.members)
      for (eid b : q.members)
        if (p->mul(imgmap[a], imgmap[b]) != imgmap[G.mul(a, b)]) return;
    std::vector<eid> img(q.members.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = imgmap[q.members[i]];
    out.push_back(Hom{q, p, std::move(img)});
  };

  // backtrack over generator images with matching element orders
  std::vector<std::vector<eid>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int e = 0; e < p->order(); ++e)
      if (p->element_order((eid)e) == ords[i]) candidates[i].push_back((eid)e);

  std::vector<std::size_t> pos(gens.size(), 0);
  std::size_t depth = 0;
  while (true) {
    if (pos[depth] == candidates[depth].size()) {
      if (depth == 0) break;
      pos[depth] = 0;
      ++pos[--depth];
      continue;
    }
    choice[depth] = candidates[depth][pos[depth]];
    if (depth + 1 < gens.size()) {
      ++depth;
    } else {
      attempt();
      ++pos[depth];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Hom> isomorphisms_onto(const Subgroup& q, const Subgroup& r) {
  std::vector<Hom> out;
  if (q.order() != r.order()) return out;
  for (const Hom& h : injective_homs(q, r.parent)) {
    Subgroup im = h.image();
    if (im.members == r.members) out.push_back(h);
  }
  return out;
}

AsGroup subgroup_as_group(const Subgroup& s, const std::string& name) {
  int n = s.order();
  std::vector<std::vector<int>> table((std::size_t)n, std::vector<int>((std::size_t)n));
  std::vector<int> from((std::size_t)s.parent->order(), -1);
  for (int i = 0; i < n; ++i) from[s.members[(std::size_t)i]] = i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[(std::size_t)i][(std::size_t)j] =
          from[s.parent->mul(s.members[(std::size_t)i], s.members[(std::size_t)j])];
  AsGroup out;
  out.grp = FiniteGroup::from_table(name, table, s.parent->declared_prime());
  out.to_parent = s.members;
  out.from_parent = std::move(from);
  return out;
}

bool is_pgroup(const GroupPtr& g, int p) {
  int n = g->order();
  while (n % p == 0) n /= p;
  return n == 1;
}

Subgroup sylow_subgroup(const GroupPtr& g, int p) {
  int pp = 1;
  int n = g->order();
  while (n % p == 0) { n /= p; pp *= p; }
  for (const Subgroup& s : g->lattice().subgroups)
    if (s.order() == pp) return s;
  throw defect_error("no Sylow subgroup found");  // unreachable for finite groups
}

}  // namespace hecke
