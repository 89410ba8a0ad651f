#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hecke/catalog.hpp"
#include "hecke/group.hpp"

using namespace hecke;

namespace {

// Independent oracle: every subgroup of a small group is generated by at
// most two elements iff it shows up in this closure; we union over all
// one- and two-element generating sets and keep closing until stable.
std::set<std::vector<eid>> subgroups_by_pair_closure(const GroupPtr& g) {
  std::set<std::vector<eid>> found;
  found.insert({g->identity()});
  for (int a = 0; a < g->order(); ++a)
    for (int b = a; b < g->order(); ++b)
      found.insert(generated_subgroup(g, {(eid)a, (eid)b}).members);
  // close under adding one more generator until stable
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<std::vector<eid>> next = found;
    for (const auto& m : found)
      for (int c = 0; c < g->order(); ++c) {
        std::vector<eid> gens = m;
        gens.push_back((eid)c);
        if (next.insert(generated_subgroup(g, gens).members).second) grew = true;
      }
    found = std::move(next);
  }
  return found;
}

}  // namespace

TEST_CASE("catalog groups have the expected orders") {
  CHECK(catalog_group("C2")->order() == 2);
  CHECK(catalog_group("C3")->order() == 3);
  CHECK(catalog_group("C4")->order() == 4);
  CHECK(catalog_group("V4")->order() == 4);
  CHECK(catalog_group("C2xC4")->order() == 8);
  CHECK(catalog_group("D8")->order() == 8);
  CHECK(catalog_group("Q8")->order() == 8);
  CHECK(catalog_group("S3")->order() == 6);
  CHECK(catalog_group("S4")->order() == 24);
  CHECK(catalog_group("A4")->order() == 12);
}

TEST_CASE("subgroup enumeration") {
  CHECK(catalog_group("C2")->lattice().subgroups.size() == 2);
  CHECK(catalog_group("V4")->lattice().subgroups.size() == 5);

  auto d8 = catalog_group("D8");
  const auto& lat = d8->lattice();
  // oracle: exhaustive closure over generated subgroups
  auto oracle = subgroups_by_pair_closure(d8);
  CHECK(lat.subgroups.size() == oracle.size());
  CHECK(lat.subgroups.size() == 10);
  CHECK(lat.classes.size() == 8);
  for (const auto& s : lat.subgroups) CHECK(oracle.count(s.members) == 1);

  // closure check S*S = S for every enumerated subgroup
  for (const auto& s : lat.subgroups)
    for (eid a : s.members)
      for (eid b : s.members) CHECK(s.contains(d8->mul(a, b)));

  // conjugate subgroups have equal order and isomorphic normalizer orders
  for (const auto& cls : lat.classes)
    for (int i : cls) {
      CHECK(lat.subgroups[(std::size_t)i].order() ==
            lat.subgroups[(std::size_t)cls[0]].order());
      CHECK(normalizer(d8, lat.subgroups[(std::size_t)i]).order() ==
            normalizer(d8, lat.subgroups[(std::size_t)cls[0]]).order());
    }
}

TEST_CASE("double cosets") {
  auto c2 = catalog_group("C2");
  CHECK(double_coset_reps(c2, c2->trivial(), c2->trivial()).size() == 2);

  auto s3 = catalog_group("S3");
  Subgroup p3 = sylow_subgroup(s3, 3);
  auto reps = double_coset_reps(s3, p3, p3);
  CHECK(reps.size() == 2);
  CHECK(reps[0] == s3->identity());
  CHECK(s3->element_order(reps[1]) == 2);

  auto s4 = catalog_group("S4");
  Subgroup d8 = sylow_subgroup(s4, 2);
  CHECK(d8.order() == 8);
  // oracle: exhaustive partition of S4 into D8-D8 double cosets; the
  // non-trivial coset has 8*8/4 = 16 elements since distinct Sylow-2s of S4
  // intersect in the normal Klein four
  std::set<std::set<eid>> cosets;
  for (int w = 0; w < 24; ++w) {
    std::set<eid> dc;
    for (eid a : d8.members)
      for (eid b : d8.members) dc.insert(s4->mul(s4->mul(a, (eid)w), b));
    cosets.insert(dc);
  }
  CHECK(cosets.size() == 2);
  CHECK(double_coset_reps(s4, d8, d8).size() == cosets.size());

  // size identity: sum |HwK| = |G| with |HwK| = |H||K| / |H n wKw^-1|
  for (const char* gname : {"S3", "S4", "A4"}) {
    auto g = resolve_group(gname);
    const auto& lat = g->lattice();
    for (std::size_t i = 0; i < lat.subgroups.size(); i += 2)
      for (std::size_t j = 0; j < lat.subgroups.size(); j += 3) {
        const Subgroup& h = lat.subgroups[i];
        const Subgroup& k = lat.subgroups[j];
        long long total = 0;
        for (eid w : double_coset_reps(g, h, k)) {
          Subgroup wk = conjugate_subgroup(k, w);
          total += (long long)h.order() * k.order() / intersect(h, wk).order();
        }
        CHECK(total == g->order());
      }
  }
}

TEST_CASE("conjugation homs") {
  auto s3 = catalog_group("S3");
  Subgroup p3 = sylow_subgroup(s3, 3);
  // identity conjugation is the inclusion
  CHECK(conj_hom(s3->identity(), p3).img == inclusion_hom(p3).img);

  // some transposition inverts the 3-cycles
  eid gen = 0;
  for (eid e : p3.members)
    if (s3->element_order(e) == 3) { gen = e; break; }
  bool found_inversion = false;
  for (int t = 0; t < s3->order(); ++t)
    if (s3->element_order((eid)t) == 2 && conj_hom((eid)t, p3).apply(gen) == s3->inv(gen))
      found_inversion = true;
  CHECK(found_inversion);

  // center of D8 is fixed by every conjugation
  auto d8 = catalog_group("D8");
  Subgroup z = center(d8);
  CHECK(z.order() == 2);
  CHECK(centralizer(d8, z).order() == 8);
  for (int g = 0; g < d8->order(); ++g)
    CHECK(conj_hom((eid)g, z).img == inclusion_hom(z).img);

  // conj_hom(g, Q) then conj_hom(g^-1, gQg^-1) is the identity on Q
  auto s4 = catalog_group("S4");
  const auto& lat = s4->lattice();
  for (std::size_t i = 0; i < lat.subgroups.size(); i += 5)
    for (int g = 0; g < s4->order(); g += 7) {
      const Subgroup& q = lat.subgroups[i];
      Hom fwd = conj_hom((eid)g, q);
      Hom back = conj_hom(s4->inv((eid)g), conjugate_subgroup(q, (eid)g));
      CHECK(compose(back, fwd).img == q.members);
    }
}

TEST_CASE("normalizers") {
  auto s4 = catalog_group("S4");
  eid four_cycle = 0;
  for (int e = 0; e < s4->order(); ++e)
    if (s4->element_order((eid)e) == 4) { four_cycle = (eid)e; break; }
  Subgroup c4 = generated_subgroup(s4, {four_cycle});
  // oracle: direct check over all 24 elements
  int count = 0;
  for (int g = 0; g < 24; ++g)
    if (conjugate_subgroup(c4, (eid)g) == c4) ++count;
  CHECK(count == 8);
  CHECK(normalizer(s4, c4).order() == 8);
  CHECK(normalizer(s4, s4->whole()).order() == 24);
}

TEST_CASE("injective homs") {
  auto d8 = catalog_group("D8");
  CHECK(injective_homs(d8->trivial(), d8).size() == 1);

  auto c2 = catalog_group("C2");
  // one hom per involution of D8
  int involutions = 0;
  for (int e = 0; e < d8->order(); ++e)
    if (d8->element_order((eid)e) == 2) ++involutions;
  CHECK(involutions == 5);
  CHECK(injective_homs(c2->whole(), d8).size() == 5);

  auto c4 = catalog_group("C4");
  CHECK(injective_homs(c4->whole(), c2).empty());
}

TEST_CASE("products and reindexing") {
  auto d8 = catalog_group("D8");
  auto pp = FiniteGroup::product(d8, d8);
  CHECK(pp->order() == 64);
  CHECK(FiniteGroup::product(d8, d8) == pp);  // cached instance
  auto [a, b] = pp->unpair(pp->pair(3, 5));
  CHECK(a == 3);
  CHECK(b == 5);

  auto s4 = catalog_group("S4");
  Subgroup syl = sylow_subgroup(s4, 2);
  AsGroup small = subgroup_as_group(syl, "P");
  CHECK(small.grp->order() == 8);
  for (eid x : syl.members)
    for (eid y : syl.members) {
      eid z = s4->mul(x, y);
      CHECK(small.to_parent[small.grp->mul((eid)small.from_parent[x],
                                            (eid)small.from_parent[y])] == z);
    }
}

TEST_CASE("ingestion errors") {
  CHECK_THROWS_AS(group_from_json("{"), input_error);
  CHECK_THROWS_AS(group_from_json(R"({"name":"bad","table":[[0,1],[1,1]]})"), input_error);
  CHECK_THROWS_AS(group_from_json(R"({"name":"nonassoc","table":[[0,1,2],[1,2,0],[2,1,0]]})"),
                  input_error);
  auto g = group_from_json(R"({"name":"K","degree":4,"generators":[[1,0,2,3],[0,1,3,2]]})");
  CHECK(g->order() == 4);
  CHECK_THROWS_AS(group_from_json(R"({"name":"bad","degree":3,"generators":[[0,0,1]]})"),
                  input_error);
}
