#include "hecke/hecke_algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hecke/linalg.hpp"

namespace hecke {

namespace {

Rational scalar_of_class(const BisetClass& c, const VirtualBiset& g) {
  Rational total(0);
  for (const auto& [e, r] : g.coeffs())
    total += r * Rational(fixed_point_count(e.pair, c.rep, e.rep));
  return total;
}

// exterior class index of a morphism among the class reps
int ext_index_of(const std::vector<ExtClass>& classes, const Hom& h, const Subgroup& target) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (exterior_equal(classes[i].rep, h, target)) return (int)i;
  return -1;
}

}  // namespace

bool is_selfcentralizing(const FusionSystem& f, const Subgroup& q) {
  for (const Hom& phi : f.homs(q)) {
    Subgroup img = phi.image();
    if (!img.contains(centralizer(f.base(), img))) return false;
  }
  return true;
}

HeckeBasis::HeckeBasis(FusionSystem f) : fusion_(std::move(f)) {
  const GroupPtr& p = fusion_.base();
  const auto& lat = p->lattice();

  // one fully normalized, lexicographically minimal representative per iso
  // class, graded from P down
  rep_of_iso_class_.assign(fusion_.iso_classes().size(), -1);
  for (std::size_t ci = 0; ci < fusion_.iso_classes().size(); ++ci) {
    for (int si : fusion_.iso_classes()[ci]) {
      const Subgroup& q = lat.subgroups[(std::size_t)si];
      if (!subgroup_fully_normalized(fusion_, q)) continue;
      rep_of_iso_class_[ci] = si;
      break;  // lattice order is (order, members): first hit is minimal
    }
    if (rep_of_iso_class_[ci] < 0) throw defect_error("iso class without fully normalized member");
  }
  std::vector<int> rep_indices = rep_of_iso_class_;
  std::sort(rep_indices.begin(), rep_indices.end(), [&](int a, int b) {
    const Subgroup& qa = lat.subgroups[(std::size_t)a];
    const Subgroup& qb = lat.subgroups[(std::size_t)b];
    if (qa.order() != qb.order()) return qa.order() > qb.order();
    return qa.members < qb.members;
  });
  for (int si : rep_indices) reps_.push_back(lat.subgroups[(std::size_t)si]);

  Subgroup whole = p->whole();
  for (std::size_t s = 0; s < reps_.size(); ++s) {
    const Subgroup& q = reps_[s];
    std::vector<ExtClass> ext = exterior_classes(fusion_, q, whole);
    int n_ext = (int)ext.size();
    int inc_class = ext_index_of(ext, inclusion_hom(q), whole);
    if (inc_class < 0) throw defect_error("inclusion missing from homset");

    // automizer action on exterior classes by precomposition
    std::vector<Hom> autos = fusion_.automizer(q);
    std::vector<std::vector<int>> action;
    for (const Hom& a : autos) {
      std::vector<int> perm(ext.size());
      for (std::size_t i = 0; i < ext.size(); ++i) {
        int j = ext_index_of(ext, compose(ext[i].rep, a), whole);
        if (j < 0) throw defect_error("automizer does not permute exterior classes");
        perm[i] = j;
      }
      action.push_back(std::move(perm));
    }

    // diagonal orbits on pairs
    std::vector<int> orbit_of((std::size_t)n_ext * n_ext, -1);
    std::vector<std::pair<int, int>> orbit_reps;
    std::vector<char> orbit_has_inclusion_first;
    for (int i = 0; i < n_ext; ++i)
      for (int j = 0; j < n_ext; ++j) {
        int pt = i * n_ext + j;
        if (orbit_of[(std::size_t)pt] >= 0) continue;
        int oid = (int)orbit_reps.size();
        std::vector<int> work{pt};
        orbit_of[(std::size_t)pt] = oid;
        bool has_inc_first = false;
        std::pair<int, int> best{i, j};
        for (std::size_t head = 0; head < work.size(); ++head) {
          int ci = work[head] / n_ext, cj = work[head] % n_ext;
          if (ci == inc_class) {
            has_inc_first = true;
            if (std::make_pair(ci, cj) < best) best = {ci, cj};
          }
          for (const auto& perm : action) {
            int npt = perm[(std::size_t)ci] * n_ext + perm[(std::size_t)cj];
            if (orbit_of[(std::size_t)npt] < 0) {
              orbit_of[(std::size_t)npt] = oid;
              work.push_back(npt);
            }
          }
        }
        if (!has_inc_first) best = {i, j};
        orbit_reps.push_back(best);
        orbit_has_inclusion_first.push_back(has_inc_first ? 1 : 0);
      }

    // one entry per orbit; the inclusion pair's orbit uses (iota, iota)
    std::vector<HeckeBasisEntry> grade;
    for (std::size_t o = 0; o < orbit_reps.size(); ++o) {
      auto [ci, cj] = orbit_reps[o];
      HeckeBasisEntry e;
      e.s_index = (int)s;
      e.phi = ext[(std::size_t)ci].rep;
      e.phi_prime = ext[(std::size_t)cj].rep;
      e.is_inclusion_pair = ci == inc_class && cj == inc_class;
      if (e.is_inclusion_pair) {
        e.phi = inclusion_hom(q);
        e.phi_prime = inclusion_hom(q);
      }
      e.cls = biset_class_of_pair(p, p, e.phi, e.phi_prime);
      e.nbar = fixed_point_count(e.cls.pair, e.cls.rep, e.cls.rep);
      grade.push_back(std::move(e));
    }
    std::sort(grade.begin(), grade.end(), [](const HeckeBasisEntry& a, const HeckeBasisEntry& b) {
      if (a.is_inclusion_pair != b.is_inclusion_pair) return a.is_inclusion_pair;
      return a.cls.rep < b.cls.rep;
    });
    long long nbar_inc = 0;
    for (const auto& e : grade)
      if (e.is_inclusion_pair) nbar_inc = e.nbar;
    for (const auto& e : grade)
      if (nbar_inc % e.nbar != 0)
        throw defect_error("saturation defect: normalizer order does not divide the diagonal one");
    for (auto& e : grade) {
      if (by_rep_.count(e.cls.rep)) throw defect_error("basis classes not pairwise distinct");
      by_rep_[e.cls.rep] = (int)entries_.size();
      entries_.push_back(std::move(e));
    }
  }
}

std::vector<int> HeckeBasis::entries_of_rep(int s_index) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].s_index == s_index) out.push_back((int)i);
  return out;
}

int HeckeBasis::inclusion_entry_of_rep(int s_index) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].s_index == s_index && entries_[i].is_inclusion_pair) return (int)i;
  throw defect_error("missing inclusion entry");
}

int HeckeBasis::index_of_class(const BisetClass& c) const {
  auto it = by_rep_.find(c.rep);
  return it == by_rep_.end() ? -1 : it->second;
}

int HeckeBasis::rep_index_of_subgroup_class(const Subgroup& q) const {
  int si = fusion_.subgroup_index(q);
  int rep_subgroup = rep_of_iso_class_[(std::size_t)fusion_.iso_class_of(si)];
  const Subgroup& r = fusion_.subgroups()[(std::size_t)rep_subgroup];
  for (std::size_t s = 0; s < reps_.size(); ++s)
    if (reps_[s].members == r.members) return (int)s;
  throw defect_error("rep lookup failed");
}

HeckeElt HeckeElt::unit(const HeckeBasis* basis) {
  HeckeElt u(basis);
  u[basis->inclusion_entry_of_rep(0)] = 1;
  return u;
}

bool HeckeElt::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool HeckeElt::is_p_local() const {
  for (const auto& c : coeffs_)
    if (!c.is_p_local(basis_->prime())) return false;
  return true;
}

VirtualBiset HeckeElt::to_virtual() const {
  VirtualBiset v(basis_->base(), basis_->base());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) v.add(basis_->entries()[i].cls, coeffs_[i]);
  return v;
}

HeckeElt HeckeElt::from_virtual(const HeckeBasis* basis, const VirtualBiset& v) {
  HeckeElt out(basis);
  for (const auto& [c, r] : v.coeffs()) {
    int idx = basis->index_of_class(c);
    if (idx < 0) throw defect_error("class outside the Hecke basis");
    out[idx] += r;
  }
  return out;
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}
HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}
HeckeElt& HeckeElt::operator*=(const Rational& r) {
  for (auto& c : coeffs_) c *= r;
  return *this;
}

bool hecke_membership(const FusionSystem& f, const VirtualBiset& v) {
  for (const auto& [c, r] : v.coeffs()) {
    if (!c.bifree) return false;
    if (!f.contains(c.graph_hom())) return false;
  }
  return true;
}

bool hecke_closure_property(const HeckeBasis& basis) {
  for (const BisetClass& g : all_bifree_classes(basis.base())) {
    bool hits = false;
    for (const auto& e : basis.entries())
      if (fixed_point_count(g.pair, g.rep, e.cls.rep) != 0) { hits = true; break; }
    if (hits && basis.index_of_class(g) < 0) return false;
  }
  return true;
}

HeckeElt hecke_multiply(const HeckeElt& a, const HeckeElt& b) {
  return HeckeElt::from_virtual(a.basis(), compose(a.to_virtual(), b.to_virtual()));
}

PSet evaluate(const HeckeElt& f) {
  const HeckeBasis& b = *f.basis();
  PSet out(b.base());
  for (int i = 0; i < b.rank(); ++i)
    if (!f[i].is_zero()) out += f[i] * PSet::of_subgroup(b.entries()[(std::size_t)i].phi.image(), 1);
  return out;
}

PSetModF evaluate_mod_f(const HeckeElt& f) {
  const HeckeBasis& b = *f.basis();
  PSetModF out{&b, std::vector<Rational>(b.reps().size(), Rational(0))};
  for (int i = 0; i < b.rank(); ++i)
    out.coeffs[(std::size_t)b.entries()[(std::size_t)i].s_index] += f[i];
  return out;
}

PSetModF pset_mod_f(const HeckeBasis& basis, const PSet& s) {
  PSetModF out{&basis, std::vector<Rational>(basis.reps().size(), Rational(0))};
  const auto& lat = basis.base()->lattice();
  for (const auto& [ci, r] : s.coeffs()) {
    const Subgroup& q = lat.subgroups[(std::size_t)lat.classes[(std::size_t)ci][0]];
    out.coeffs[(std::size_t)basis.rep_index_of_subgroup_class(q)] += r;
  }
  return out;
}

std::vector<HeckeElt> evaluation_kernel_basis(const HeckeBasis& basis) {
  // the evaluation sends an entry to s_{phi(Q)}; its kernel is spanned by
  // the differences of entries sharing an image class. Anchoring at the
  // inclusion entry where the image class allows it recovers the elements
  // f_{iota,phi} - m_{s_Q}; fused image classes away from the grade
  // subgroup contribute the remaining differences.
  std::vector<HeckeElt> out;
  const auto& lat = basis.base()->lattice();
  std::map<int, int> anchor;  // image class -> anchoring entry
  for (int i = 0; i < basis.rank(); ++i) {
    const auto& e = basis.entries()[(std::size_t)i];
    int icls = lat.class_of[(std::size_t)lat.index_of(e.phi.image())];
    if (e.is_inclusion_pair) anchor[icls] = i;  // prefer m_{s_Q} anchors
  }
  for (int i = 0; i < basis.rank(); ++i) {
    const auto& e = basis.entries()[(std::size_t)i];
    int icls = lat.class_of[(std::size_t)lat.index_of(e.phi.image())];
    auto it = anchor.find(icls);
    if (it == anchor.end()) {
      anchor[icls] = i;
      continue;
    }
    if (it->second == i) continue;
    HeckeElt k(&basis);
    k[i] = 1;
    k[it->second] = -1;
    out.push_back(std::move(k));
  }
  return out;
}

bool is_stable(const HeckeElt& f) {
  const HeckeBasis& b = *f.basis();
  VirtualBiset v = f.to_virtual();
  for (std::size_t s = 0; s < b.reps().size(); ++s) {
    const auto& inc = b.entries()[(std::size_t)b.inclusion_entry_of_rep((int)s)];
    Rational want = scalar_of_class(inc.cls, v);
    for (int i : b.entries_of_rep((int)s))
      if (scalar_of_class(b.entries()[(std::size_t)i].cls, v) != want) return false;
  }
  if (!(opposite(v) == v)) throw defect_error("stable element is not self-opposite");
  return true;
}

HeckeElt stable_element_for(const HeckeBasis& basis, const PSetModF& target) {
  int p = basis.prime();
  for (const auto& z : target.coeffs)
    if (!z.is_p_local(p)) throw input_error("target must be p-local");

  // grade 0: average over the automizer classes of P
  HeckeElt f(&basis);
  std::vector<int> top = basis.entries_of_rep(0);
  long long aut_out = (long long)top.size();
  if (aut_out % p == 0) throw defect_error("outer automizer order divisible by p");
  for (int i : top) f[i] = target.coeffs[0] / Rational(aut_out);

  for (std::size_t s = 1; s < basis.reps().size(); ++s) {
    VirtualBiset cur = f.to_virtual();
    std::vector<int> grade = basis.entries_of_rep((int)s);
    int inc = basis.inclusion_entry_of_rep((int)s);
    long long nbar_inc = basis.entries()[(std::size_t)inc].nbar;
    Rational a_inc = scalar_of_class(basis.entries()[(std::size_t)inc].cls, cur);

    Rational q_r(0), correction(0);
    std::vector<Rational> diff_term(grade.size());
    for (std::size_t gi = 0; gi < grade.size(); ++gi) {
      const auto& e = basis.entries()[(std::size_t)grade[gi]];
      Rational a_e = scalar_of_class(e.cls, cur);
      diff_term[gi] = (a_inc - a_e) / Rational(e.nbar);
      if (!diff_term[gi].is_p_local(p))
        throw defect_error("non-exact division at grade " + std::to_string(s));
      q_r += Rational(nbar_inc, e.nbar);
      correction += diff_term[gi];
    }
    if (!q_r.is_integer() || q_r.num() % p == 0)
      throw defect_error("grade sum not an integer prime to p");
    Rational k_inc = (target.coeffs[s] - correction) / q_r;
    if (!k_inc.is_p_local(p)) throw defect_error("non-p-local leading coefficient");
    for (std::size_t gi = 0; gi < grade.size(); ++gi) {
      const auto& e = basis.entries()[(std::size_t)grade[gi]];
      Rational k = diff_term[gi] + k_inc * Rational(nbar_inc, e.nbar);
      if (!k.is_p_local(p)) throw defect_error("non-p-local coefficient");
      f[grade[gi]] += k;
    }
  }

  if (!is_stable(f)) throw defect_error("constructed element is not stable");
  if (!(evaluate_mod_f(f) == target)) throw defect_error("constructed element misses its target");
  if (!f.is_p_local()) throw defect_error("constructed element is not p-local");
  return f;
}

std::vector<HeckeElt> stable_basis(const HeckeBasis& basis) {
  std::vector<HeckeElt> out;
  for (std::size_t s = 0; s < basis.reps().size(); ++s) {
    PSetModF target{&basis, std::vector<Rational>(basis.reps().size(), Rational(0))};
    target.coeffs[s] = 1;
    out.push_back(stable_element_for(basis, target));
  }
  return out;
}

namespace {

long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1) {
    long long q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  if (g != 1) throw defect_error("non-invertible residue");
  return ((x % m) + m) % m;
}

long long rational_mod(const Rational& r, long long m) {
  long long n = r.num() % m;
  if (n < 0) n += m;
  return (long long)((__int128)n * inv_mod(r.den() % m, m) % m);
}

// balanced rational reconstruction mod m
std::optional<Rational> rational_reconstruct(long long x, long long m, int p) {
  long long r0 = m, r1 = x % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  long long bound = 1;
  while ((__int128)bound * bound * 2 < m) ++bound;
  while (r1 >= bound) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long t2 = t0 - q * t1;
    r0 = r1; r1 = r2; t0 = t1; t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  long long num = r1, den = t1;
  if (den < 0) { den = -den; num = -num; }
  if (den % p == 0) return std::nullopt;
  if (std::abs(num) >= bound || den >= bound) return std::nullopt;
  Rational cand(num, den);
  if (rational_mod(cand, m) != ((x % m) + m) % m) return std::nullopt;
  return cand;
}

}  // namespace

IdempotentReport characteristic_idempotent(const HeckeBasis& basis) {
  int p = basis.prime();
  int r = (int)basis.reps().size();
  std::vector<HeckeElt> sb = stable_basis(basis);

  // structure constants in the stable basis, read off through the graded
  // image in B_P/F (injective on stable elements)
  std::vector<std::vector<std::vector<Rational>>> sc(
      (std::size_t)r, std::vector<std::vector<Rational>>((std::size_t)r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      HeckeElt prod = hecke_multiply(sb[(std::size_t)i], sb[(std::size_t)j]);
      sc[(std::size_t)i][(std::size_t)j] = evaluate_mod_f(prod).coeffs;
    }
  // commutativity of the stable algebra
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (sc[(std::size_t)i][(std::size_t)j] != sc[(std::size_t)j][(std::size_t)i])
        throw defect_error("stable algebra is not commutative");

  IdempotentReport rep;
  rep.omega = HeckeElt(&basis);

  // mod-p unit, then idempotent lifting with doubling precision and exact
  // verification over the rationals
  int k = 2;
  bool done = false;
  std::vector<long long> x((std::size_t)r, 0);
  {
    // solve sum_i x_i e_i e_j = e_j mod p for all j
    QMatrix A(r * r, r);
    std::vector<Rational> bvec((std::size_t)(r * r), Rational(0));
    for (int j = 0; j < r; ++j)
      for (int kk = 0; kk < r; ++kk) {
        for (int i = 0; i < r; ++i)
          A.at(j * r + kk, i) = sc[(std::size_t)i][(std::size_t)j][(std::size_t)kk];
        bvec[(std::size_t)(j * r + kk)] = j == kk ? 1 : 0;
      }
    auto sol = solve(A, bvec);
    if (!sol) throw defect_error("stable algebra has no unit");
    for (int i = 0; i < r; ++i) x[(std::size_t)i] = rational_mod((*sol)[(std::size_t)i], p);
  }
  while (!done) {
    long long m = 1;
    for (int t = 0; t < k; ++t) {
      m *= p;
      if (m > (1ll << 41)) throw defect_error("idempotent lift exceeded precision budget");
    }
    std::vector<std::vector<std::vector<long long>>> scm(
        (std::size_t)r, std::vector<std::vector<long long>>((std::size_t)r,
                                                            std::vector<long long>((std::size_t)r)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int kk = 0; kk < r; ++kk)
          scm[(std::size_t)i][(std::size_t)j][(std::size_t)kk] =
              rational_mod(sc[(std::size_t)i][(std::size_t)j][(std::size_t)kk], m);
    auto mulv = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
      std::vector<long long> c((std::size_t)r, 0);
      for (int i = 0; i < r; ++i) {
        if (!a[(std::size_t)i]) continue;
        for (int j = 0; j < r; ++j) {
          if (!b[(std::size_t)j]) continue;
          __int128 ab = (__int128)a[(std::size_t)i] * b[(std::size_t)j] % m;
          for (int kk = 0; kk < r; ++kk)
            c[(std::size_t)kk] =
                (long long)(((__int128)c[(std::size_t)kk] +
                             (__int128)(long long)ab * scm[(std::size_t)i][(std::size_t)j][(std::size_t)kk]) % m);
        }
      }
      return c;
    };
    // lift: x <- 3x^2 - 2x^3, iterated to precision
    std::vector<long long> cur = x;
    for (int it = 0; it < k + 2; ++it) {
      std::vector<long long> sq = mulv(cur, cur);
      std::vector<long long> cu = mulv(sq, cur);
      for (int i = 0; i < r; ++i) {
        __int128 v = (__int128)3 * sq[(std::size_t)i] - (__int128)2 * cu[(std::size_t)i];
        long long vv = (long long)(v % m);
        if (vv < 0) vv += m;
        cur[(std::size_t)i] = vv;
      }
    }
    // reconstruct and verify exactly
    bool ok = true;
    HeckeElt omega(&basis);
    std::vector<Rational> coords((std::size_t)r);
    for (int i = 0; i < r && ok; ++i) {
      auto c = rational_reconstruct(cur[(std::size_t)i], m, p);
      if (!c) { ok = false; break; }
      coords[(std::size_t)i] = *c;
    }
    if (ok) {
      for (int i = 0; i < r; ++i) omega += coords[(std::size_t)i] * sb[(std::size_t)i];
      if (hecke_multiply(omega, omega) == omega && !omega.is_zero()) {
        rep.omega = omega;
        rep.squares_exactly = true;
        rep.hensel_precision = k;
        done = true;
      }
    }
    if (!done) {
      k *= 2;
      if (k > 40) throw defect_error("idempotent lift did not converge");
    }
  }

  VirtualBiset v = rep.omega.to_virtual();
  rep.self_opposite = opposite(v) == v;
  rep.stable = is_stable(rep.omega);
  rep.p_local = rep.omega.is_p_local();
  rep.len = length(v);

  // uniqueness: idempotents of the stable algebra are the elements whose
  // mark vector (through evaluation into B_P) is 0/1; enumerate them all and
  // count the nonzero p-local ones
  {
    const auto& lat = basis.base()->lattice();
    int mcols = (int)lat.classes.size();
    QMatrix M(mcols, r);
    for (int i = 0; i < r; ++i) {
      auto mk = marks(evaluate(sb[(std::size_t)i]));
      for (int row = 0; row < mcols; ++row) M.at(row, i) = mk[(std::size_t)row];
    }
    int found = 0;
    for (long long bits = 0; bits < (1ll << mcols); ++bits) {
      std::vector<Rational> b((std::size_t)mcols);
      for (int row = 0; row < mcols; ++row) b[(std::size_t)row] = (bits >> row) & 1 ? 1 : 0;
      auto sol = solve(M, b);
      if (!sol) continue;
      // confirm solution reproduces b (solve() already guarantees it) and is
      // a genuine idempotent of the algebra
      bool nonzero = false, plocal = true;
      for (const auto& c : *sol) {
        if (!c.is_zero()) nonzero = true;
        if (!c.is_p_local(p)) plocal = false;
      }
      if (nonzero && plocal) ++found;
    }
    rep.unique_nonzero = found == 1;
  }
  return rep;
}

bool class_in_n_ideal(const HeckeBasis& basis, int entry_index) {
  int s = basis.entries()[(std::size_t)entry_index].s_index;
  return !is_selfcentralizing(basis.fusion(), basis.reps()[(std::size_t)s]);
}

MaximalizeResult maximalize(const HeckeBasis& basis, int entry_index) {
  const FusionSystem& f = basis.fusion();
  const auto& e = basis.entries()[(std::size_t)entry_index];
  if (class_in_n_ideal(basis, entry_index))
    throw input_error("maximalize needs a selfcentralizing grade");
  // class as a one-sided twisted diagonal f_{R, psi}
  Hom psi = e.cls.graph_hom();
  MaximalizeResult out;
  while (true) {
    if (psi.source.order() == f.base()->order()) break;
    Subgroup n = n_phi(f, psi);
    if (n.members == psi.source.members) break;
    bool extended = false;
    for (const Hom& nu : f.homs(n))
      if (restrict_hom(nu, psi.source).img == psi.img) {
        out.chain.push_back(nu);
        psi = nu;
        extended = true;
        break;
      }
    if (!extended) throw defect_error("saturation defect: missing extension");
  }
  out.maximal = biset_class_of_hom(f.base(), f.base(), psi);
  // uniqueness among maximal classes with nonzero scalar product
  for (const auto& other : basis.entries()) {
    Hom opsi = other.cls.graph_hom();
    bool is_max = opsi.source.order() == f.base()->order() ||
                  n_phi(f, opsi).members == opsi.source.members;
    if (!is_max) continue;
    bool hits = fixed_point_count(e.cls.pair, e.cls.rep, other.cls.rep) != 0;
    if (hits && !(other.cls.rep == out.maximal.rep)) out.unique = false;
  }
  if (!out.unique) throw defect_error("maximalization not unique");
  return out;
}

HeckeElt e_f_retraction(const HeckeElt& x) {
  const HeckeBasis& b = *x.basis();
  HeckeElt out(&b);
  for (int i = 0; i < b.rank(); ++i) {
    if (x[i].is_zero()) continue;
    if (class_in_n_ideal(b, i)) continue;
    MaximalizeResult m = maximalize(b, i);
    int j = b.index_of_class(m.maximal);
    if (j < 0) throw defect_error("maximal class outside the basis");
    const auto& ei = b.entries()[(std::size_t)i];
    const auto& ej = b.entries()[(std::size_t)j];
    Rational li((long long)b.base()->order() / (long long)ei.cls.rep.size());
    Rational lj((long long)b.base()->order() / (long long)ej.cls.rep.size());
    out[j] += x[i] * li / lj;
  }
  return out;
}

FusionSystem fusion_from_element(const GroupPtr& p, int prime, const VirtualBiset& f) {
  if (!f.all_bifree()) throw input_error("element must be bifree on both sides");
  VirtualBiset fop = opposite(f);
  const auto& lat = p->lattice();
  std::vector<std::vector<Hom>> homs(lat.subgroups.size());
  for (std::size_t qi = 0; qi < lat.subgroups.size(); ++qi) {
    const Subgroup& q = lat.subgroups[qi];
    Hom iota = inclusion_hom(q);
    VirtualBiset res_i = compose(VirtualBiset::single(restriction_class(iota)), f);
    VirtualBiset res_i_op = compose(VirtualBiset::single(restriction_class(iota)), fop);
    for (const Hom& phi : injective_homs(q, p)) {
      VirtualBiset res_phi = compose(VirtualBiset::single(restriction_class(phi)), f);
      if (!(res_phi == res_i)) continue;
      VirtualBiset res_phi_op = compose(VirtualBiset::single(restriction_class(phi)), fop);
      if (!(res_phi_op == res_i_op)) continue;
      homs[qi].push_back(phi);
    }
  }
  return FusionSystem(p, prime, std::move(homs));
}

MinimalHecke minimal_hecke_of(const GroupPtr& p, int prime, const VirtualBiset& f) {
  std::vector<BisetClass> universe = all_bifree_classes(p);
  std::map<std::vector<eid>, int> index;
  for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i].rep] = (int)i;
  std::vector<char> in(universe.size(), 0);

  // conjugation classes (the minimal Hecke algebra of the inner system) are
  // in every Hecke algebra
  for (const Subgroup& q : p->lattice().subgroups) {
    BisetClass c = biset_class_of_hom(p, p, inclusion_hom(q));
    in[(std::size_t)index.at(c.rep)] = 1;
  }
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (!scalar_of_class(universe[i], f).is_zero()) in[i] = 1;

  bool grew = true;
  while (grew) {
    grew = false;
    // composition closure
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (!in[i]) continue;
      for (std::size_t j = 0; j < universe.size(); ++j) {
        if (!in[j]) continue;
        for (const BisetClass& t : compose_classes(universe[i], universe[j])) {
          auto it = index.find(t.rep);
          if (it == index.end()) throw defect_error("closure left the bifree classes");
          if (!in[(std::size_t)it->second]) { in[(std::size_t)it->second] = 1; grew = true; }
        }
      }
    }
    // opposite closure
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (!in[i]) continue;
      int j = index.at(opposite_class(universe[i]).rep);
      if (!in[(std::size_t)j]) { in[(std::size_t)j] = 1; grew = true; }
    }
    // any indecomposable with nonzero product against the set joins it
    for (std::size_t g = 0; g < universe.size(); ++g) {
      if (in[g]) continue;
      for (std::size_t h = 0; h < universe.size(); ++h) {
        if (!in[h]) continue;
        if (fixed_point_count(universe[g].pair, universe[g].rep, universe[h].rep) != 0) {
          in[g] = 1;
          grew = true;
          break;
        }
      }
    }
  }

  MinimalHecke out;
  const auto& lat = p->lattice();
  std::vector<std::vector<Hom>> homs(lat.subgroups.size());
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (in[i]) out.classes.push_back(universe[i]);
  for (std::size_t qi = 0; qi < lat.subgroups.size(); ++qi)
    for (const Hom& phi : injective_homs(lat.subgroups[qi], p)) {
      BisetClass c = biset_class_of_hom(p, p, phi);
      if (in[(std::size_t)index.at(c.rep)]) homs[qi].push_back(phi);
    }
  out.fusion = FusionSystem(p, prime, std::move(homs));
  return out;
}

namespace {

// external product of two (P,P)-classes as an element over (P, PxP): the
// functor sending a pair of P-sets (X, X') to c(X) x c'(X') with the inner
// (diagonal) product
VirtualBiset pair_product_classes(const BisetClass& c, const BisetClass& cp) {
  const GroupPtr& p = c.left;
  GroupPtr p2 = FiniteGroup::product(p, p);
  GroupPtr big = FiniteGroup::product(p, p2);
  const auto& G = *c.pair;

  // coset tables of both classes
  auto cosets = [](const FiniteGroup& grp, const std::vector<eid>& members,
                   std::vector<int>& cos) {
    std::vector<eid> reps;
    cos.assign((std::size_t)grp.order(), -1);
    for (int x = 0; x < grp.order(); ++x) {
      if (cos[(std::size_t)x] >= 0) continue;
      for (eid m : members) cos[grp.mul((eid)x, m)] = (int)reps.size();
      reps.push_back((eid)x);
    }
    return reps;
  };
  std::vector<int> cos1, cos2;
  std::vector<eid> reps1 = cosets(G, c.rep, cos1);
  std::vector<eid> reps2 = cosets(G, cp.rep, cos2);
  int m1 = (int)reps1.size(), m2 = (int)reps2.size();

  // left action of (x,(y,z)): (c1, c2) -> ((x,y) c1, (x,z) c2)
  std::vector<bool> used((std::size_t)m1 * m2, false);
  VirtualBiset out(p, p2);
  for (int pt = 0; pt < m1 * m2; ++pt) {
    if (used[(std::size_t)pt]) continue;
    std::vector<eid> stab;
    for (int e = 0; e < big->order(); ++e) {
      auto [x, yz] = big->unpair((eid)e);
      auto [y, z] = p2->unpair(yz);
      int c1 = pt / m2, c2 = pt % m2;
      int d1 = cos1[G.mul(G.pair(x, y), reps1[(std::size_t)c1])];
      int d2 = cos2[G.mul(G.pair(x, z), reps2[(std::size_t)c2])];
      int q = d1 * m2 + d2;
      used[(std::size_t)q] = true;
      if (q == pt) stab.push_back((eid)e);
    }
    out.add(biset_class_of_subgroup(p, p2, stab), 1);
  }
  return out;
}

VirtualBiset pair_product(const VirtualBiset& f, const VirtualBiset& g) {
  const GroupPtr& p = f.left();
  VirtualBiset out(p, FiniteGroup::product(p, p));
  for (const auto& [c, rc] : f.coeffs())
    for (const auto& [d, rd] : g.coeffs()) out += (rc * rd) * pair_product_classes(c, d);
  return out;
}

}  // namespace

bool frobenius_condition(const GroupPtr& p, const VirtualBiset& f) {
  // the identity f(f(s) s') = f(s) f(s') holds at the level of bisets, not
  // just of their classes in B_P: f composed with (f x id) equals f x f as
  // elements over the pair (P, P x P)
  VirtualBiset fx1 = pair_product(f, VirtualBiset::single(identity_class(p)));
  VirtualBiset fxf = pair_product(f, f);
  return compose(f, fx1) == fxf;
}

BasicReport is_basic(const GroupPtr& p, int prime, const VirtualBiset& f) {
  if (!f.all_bifree()) throw input_error("basic test needs a bifree element");
  if (!f.is_integral()) throw input_error("basic test needs an integral element");
  BasicReport rep;
  Rational len = length(f);
  rep.length_prime_to_p = len.is_integer() && len.num() % prime != 0;
  rep.self_opposite = opposite(f) == f;
  rep.frobenius = frobenius_condition(p, f);

  FusionSystem ff = fusion_from_element(p, prime, f);
  MinimalHecke mh = minimal_hecke_of(p, prime, f);
  rep.fusion_match = true;
  for (std::size_t qi = 0; qi < ff.subgroups().size() && rep.fusion_match; ++qi)
    rep.fusion_match = ff.homs((int)qi) == mh.fusion.homs((int)qi);

  // the product identity that the Frobenius condition forces
  rep.product_identity = true;
  for (const Subgroup& q : p->lattice().subgroups) {
    std::vector<Hom> injs = injective_homs(q, p);
    Hom iota = inclusion_hom(q);
    for (const Hom& phi : injs)
      for (const Hom& phi2 : injs) {
        Rational a = scalar_of_class(biset_class_of_pair(p, p, iota, phi), f);
        Rational b = scalar_of_class(biset_class_of_pair(p, p, iota, phi2), f);
        Rational c = scalar_of_class(biset_class_of_pair(p, p, phi2, phi), f);
        if (a * b != c * b) { rep.product_identity = false; break; }
      }
    if (!rep.product_identity) break;
  }

  rep.basic = rep.length_prime_to_p && rep.fusion_match;
  return rep;
}

}  // namespace hecke
