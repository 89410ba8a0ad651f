// Workbench CLI: group ingestion, fusion and Hecke pipelines, verification
// suites, JSON reports, persistent caching.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hecke/alperin.hpp"
#include "hecke/catalog.hpp"
#include "hecke/group_hecke.hpp"
#include "hecke/hecke_algebra.hpp"
#include "hecke/report.hpp"
#include "hecke/verify.hpp"

using namespace hecke;
using nlohmann::json;

namespace {

std::string img_list(const Hom& h) {
  std::string s = "[";
  for (std::size_t i = 0; i < h.img.size(); ++i)
    s += (i ? "," : "") + std::to_string((int)h.img[i]);
  return s + "]";
}

json hom_json(const Hom& h) {
  json j;
  j["source"] = h.source.members;
  j["images"] = h.img;
  return j;
}

struct Session {
  WorkspaceConfig cfg;
  Cache cache;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  GroupPtr load_group(const std::string& spec) {
    GroupPtr g = resolve_group(spec);
    prepare_lattice(g, spec, cache, cfg.verify_cache);
    return g;
  }

  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }

  int emit(RunReport& rep) {
    rep.wall_ms = elapsed_ms();
    std::cout << rep.to_json(cfg.timings) << "\n";
    return rep.all_pass() ? 0 : 1;
  }
};

// catalog-name sanity for the requested Sylow label: order plus the
// multiset of element orders
void validate_sylow_label(const GroupPtr& p_small, const std::string& label) {
  if (label == "-" || !catalog_has(label)) return;
  GroupPtr expect = catalog_group(label);
  if (expect->order() != p_small->order())
    throw input_error("Sylow subgroup has order " + std::to_string(p_small->order()) +
                      ", not the order of " + label);
  std::multiset<int> a, b;
  for (int e = 0; e < expect->order(); ++e) a.insert(expect->element_order((eid)e));
  for (int e = 0; e < p_small->order(); ++e) b.insert(p_small->element_order((eid)e));
  if (a != b) throw input_error("Sylow subgroup is not of type " + label);
}

struct FusionInputs {
  GroupPtr g;
  Subgroup p;
  FusionSystem f;
};

FusionInputs load_fusion(Session& s, const std::string& gspec, const std::string& pspec,
                         int prime) {
  FusionInputs in{s.load_group(gspec), {}, {}};
  in.p = sylow_subgroup(in.g, prime);
  in.f = fusion_of_group(in.g, in.p, prime);
  prepare_lattice(in.f.base(), gspec + "/sylow" + std::to_string(prime), s.cache,
                  s.cfg.verify_cache);
  validate_sylow_label(in.f.base(), pspec);
  return in;
}

json fusion_report_json(const FusionSystem& f) {
  json rep;
  rep["base_order"] = f.base()->order();
  rep["prime"] = f.prime();
  json classes = json::array();
  for (const auto& cls : f.iso_classes()) {
    json c;
    json members = json::array();
    for (int si : cls) {
      const Subgroup& q = f.subgroups()[(std::size_t)si];
      json one;
      one["members"] = q.members;
      one["automorphisms"] = f.automizer(q).size();
      one["exterior_classes"] = exterior_classes(f, q, f.base()->whole()).size();
      one["fully_normalized"] = subgroup_fully_normalized(f, q);
      members.push_back(one);
    }
    c["subgroups"] = members;
    classes.push_back(c);
  }
  rep["iso_classes"] = classes;
  SaturationVerdict v = is_frobenius(f);
  rep["saturated"] = v.saturated;
  if (!v.saturated) {
    rep["failed_axiom"] = v.failed_axiom;
    if (v.witness_q) rep["witness_subgroup"] = v.witness_q->members;
    if (v.witness_phi) rep["witness_morphism"] = hom_json(*v.witness_phi);
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in double Burnside rings and fusion-system Hecke algebras"};
  app.require_subcommand(1);

  std::string config_file, cache_dir, output;
  unsigned long long seed = 20240801;
  bool timings = false, verify_cache = false;
  app.add_option("--config", config_file, "JSON config file");
  app.add_option("--cache-dir", cache_dir, "cache directory (or HECKE_CACHE_DIR)");
  app.add_option("--seed", seed, "seed for randomized property checks");
  app.add_flag("--timings", timings, "include wall time in the report");
  app.add_flag("--verify-cache", verify_cache, "recompute cached values and compare");

  std::string gspec, pspec = "-", element_json, target_csv, suite = "all";
  int prime = 2, subgroup_index = -1, morphism_index = 0;

  auto* c_sub = app.add_subcommand("subgroups", "subgroup lattice and conjugacy classes");
  c_sub->add_option("group", gspec)->required();

  auto add_fusion_args = [&](CLI::App* cmd) {
    cmd->add_option("group", gspec)->required();
    cmd->add_option("sylow", pspec)->required();
    cmd->add_option("p", prime)->required();
  };
  auto* c_fus = app.add_subcommand("fusion", "fusion system report");
  add_fusion_args(c_fus);
  auto* c_basis = app.add_subcommand("hecke-basis", "canonical basis listing");
  add_fusion_args(c_basis);
  auto* c_stable = app.add_subcommand("stable", "constructive stable element");
  add_fusion_args(c_stable);
  c_stable->add_option("--target", target_csv,
                       "comma separated integer targets per grade (large to small)");
  auto* c_idem = app.add_subcommand("idempotent", "characteristic idempotent");
  add_fusion_args(c_idem);
  auto* c_ess = app.add_subcommand("essential", "essential subgroup reports");
  add_fusion_args(c_ess);
  auto* c_dec = app.add_subcommand("decompose", "decomposition chain of a morphism");
  add_fusion_args(c_dec);
  c_dec->add_option("--subgroup", subgroup_index, "subgroup index in the lattice");
  c_dec->add_option("--morphism", morphism_index, "morphism index within the homset");
  auto* c_basic = app.add_subcommand("basic-check", "basic-element report");
  add_fusion_args(c_basic);
  c_basic->add_option("--element", element_json, "element JSON (default: identity class)");
  auto* c_gh = app.add_subcommand("group-hecke", "double-coset algebra and comparison");
  add_fusion_args(c_gh);
  auto* c_ver = app.add_subcommand("verify", "run a verification suite");
  c_ver->add_option("suite", suite, "suite name or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    Session s;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw input_error("cannot read config file " + config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      s.cfg = WorkspaceConfig::from_json_text(ss.str());
    }
    if (!cache_dir.empty()) s.cfg.cache_dir = cache_dir;
    if (s.cfg.cache_dir.empty())
      if (const char* env = std::getenv("HECKE_CACHE_DIR")) s.cfg.cache_dir = env;
    if (seed != 20240801 || s.cfg.seed == 0) s.cfg.seed = seed;
    if (timings) s.cfg.timings = true;
    if (verify_cache) s.cfg.verify_cache = true;
    s.cfg.apply_guards();
    s.cache = Cache(s.cfg.cache_dir);

    RunReport rep;
    rep.seed = s.cfg.seed;

    if (*c_sub) {
      rep.command = "subgroups";
      rep.inputs["group"] = gspec;
      GroupPtr g = s.load_group(gspec);
      rep.outputs["order"] = g->order();
      rep.outputs["lattice"] = lattice_to_json(g->lattice());
      rep.checks.push_back({"lattice-built", true, ""});
      return s.emit(rep);
    }

    if (*c_fus) {
      rep.command = "fusion";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      rep.outputs = fusion_report_json(in.f);
      rep.checks.push_back({"saturated", rep.outputs["saturated"].get<bool>(), ""});
      return s.emit(rep);
    }

    if (*c_basis) {
      rep.command = "hecke-basis";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      HeckeBasis b(in.f);
      json entries = json::array();
      for (const auto& e : b.entries()) {
        json one;
        one["grade_order"] = b.reps()[(std::size_t)e.s_index].order();
        one["phi"] = img_list(e.phi);
        one["phi_prime"] = img_list(e.phi_prime);
        one["inclusion_pair"] = e.is_inclusion_pair;
        entries.push_back(one);
      }
      rep.outputs["rank"] = b.rank();
      rep.outputs["entries"] = entries;
      rep.checks.push_back({"closure", hecke_closure_property(b), ""});
      return s.emit(rep);
    }

    if (*c_stable) {
      rep.command = "stable";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}, {"target", target_csv}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      HeckeBasis b(in.f);
      PSetModF target{&b, std::vector<Rational>(b.reps().size(), Rational(0))};
      if (!target_csv.empty()) {
        std::stringstream ss(target_csv);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ss, tok, ',')) {
          if (i >= target.coeffs.size()) throw input_error("too many target coefficients");
          target.coeffs[i++] = Rational::parse(tok);
        }
      } else {
        target.coeffs[0] = 1;
      }
      HeckeElt f = stable_element_for(b, target);
      json coeffs = json::array();
      for (int i = 0; i < b.rank(); ++i) coeffs.push_back(f[i].str());
      rep.outputs["coefficients"] = coeffs;
      rep.checks.push_back({"stable", is_stable(f), ""});
      rep.checks.push_back({"p-local", f.is_p_local(), ""});
      rep.checks.push_back({"image-matches", evaluate_mod_f(f) == target, ""});
      return s.emit(rep);
    }

    if (*c_idem) {
      rep.command = "idempotent";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      HeckeBasis b(in.f);
      IdempotentReport ir = characteristic_idempotent(b);
      json coeffs = json::array();
      for (int i = 0; i < b.rank(); ++i) coeffs.push_back(ir.omega[i].str());
      rep.outputs["coefficients"] = coeffs;
      rep.outputs["hensel_precision"] = ir.hensel_precision;
      rep.checks.push_back({"squares", ir.squares_exactly, ""});
      rep.checks.push_back({"self-opposite", ir.self_opposite, ""});
      rep.checks.push_back({"stable", ir.stable, ""});
      rep.checks.push_back({"p-local", ir.p_local, ""});
      rep.checks.push_back({"length-one", ir.len == Rational(1), ir.len.str()});
      rep.checks.push_back(
          {"frobenius-condition", frobenius_condition(b.base(), ir.omega.to_virtual()), ""});
      rep.checks.push_back({"unique-nonzero", ir.unique_nonzero, ""});
      return s.emit(rep);
    }

    if (*c_ess) {
      rep.command = "essential";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      json list = json::array();
      for (const EssentialReport& er : essential_subgroups(in.f)) {
        json one;
        one["subgroup"] = er.q.members;
        one["selfcentralizing"] = er.selfcentralizing;
        one["automizer_order"] = er.automizer.grp->order();
        one["essential"] = er.essential;
        if (er.witness) one["witness_order"] = er.witness->order();
        if (er.distinguished) one["distinguished"] = er.distinguished->members;
        list.push_back(one);
      }
      rep.outputs["reports"] = list;
      rep.checks.push_back({"reports-built", true, ""});
      return s.emit(rep);
    }

    if (*c_dec) {
      rep.command = "decompose";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime},
                    {"subgroup", subgroup_index}, {"morphism", morphism_index}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      if (subgroup_index < 0 || subgroup_index >= (int)in.f.subgroups().size())
        throw input_error("subgroup index out of range");
      const Subgroup& q = in.f.subgroups()[(std::size_t)subgroup_index];
      const auto& hs = in.f.homs(q);
      if (morphism_index < 0 || morphism_index >= (int)hs.size())
        throw input_error("morphism index out of range");
      AlperinChain ch = alperin_decompose(in.f, hs[(std::size_t)morphism_index]);
      json steps = json::array();
      for (const ChainStep& st : ch.steps) {
        json one;
        one["subgroup"] = st.q.members;
        one["morphism"] = hom_json(st.phi);
        one["tracker"] = hom_json(st.tracker);
        steps.push_back(one);
      }
      rep.outputs["steps"] = steps;
      rep.outputs["prefix_automorphism"] = hom_json(ch.sigma);
      json fam = json::array();
      for (const BisetClass& c : ch.family) {
        json one = json::array();
        for (eid e : c.rep) {
          auto [a, bb] = c.pair->unpair(e);
          one.push_back({(int)a, (int)bb});
        }
        fam.push_back(one);
      }
      rep.outputs["family"] = fam;
      rep.checks.push_back({"chain-equalities", ch.chain_equalities, ""});
      rep.checks.push_back({"natural-map", ch.natural_map, ""});
      rep.checks.push_back({"normal-form", ch.normalized_ok, ""});
      return s.emit(rep);
    }

    if (*c_basic) {
      rep.command = "basic-check";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      FusionInputs in = load_fusion(s, gspec, pspec, prime);
      const GroupPtr& p = in.f.base();
      VirtualBiset f = element_json.empty()
                           ? VirtualBiset::single(identity_class(p))
                           : VirtualBiset::from_json(p, p, element_json);
      rep.inputs["element"] = f.to_json();
      BasicReport br = is_basic(p, prime, f);
      rep.outputs["basic"] = br.basic;
      rep.outputs["length_prime_to_p"] = br.length_prime_to_p;
      rep.outputs["self_opposite"] = br.self_opposite;
      rep.outputs["frobenius_condition"] = br.frobenius;
      rep.outputs["fusion_match"] = br.fusion_match;
      rep.outputs["product_identity"] = br.product_identity;
      rep.checks.push_back({"report-built", true, ""});
      return s.emit(rep);
    }

    if (*c_gh) {
      rep.command = "group-hecke";
      rep.inputs = {{"group", gspec}, {"sylow", pspec}, {"p", prime}};
      GroupPtr g = s.load_group(gspec);
      GroupHeckeAlgebra alg(g, sylow_subgroup(g, prime));
      json reps_json = json::array();
      for (eid e : alg.coset_reps()) reps_json.push_back((int)e);
      rep.outputs["coset_reps"] = reps_json;
      json tensor = json::array();
      for (int i = 0; i < alg.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < alg.rank(); ++j) row.push_back(alg.multiply_symbols(i, j));
        tensor.push_back(row);
      }
      rep.outputs["structure_constants"] = tensor;
      ComparisonVerdict v = compare_structure_constants(alg);
      rep.checks.push_back({"structure-constants-match", v.structure_constants_match, ""});
      rep.checks.push_back({"retraction-idempotent", v.retraction_idempotent, ""});
      rep.checks.push_back({"symbols-invariant", v.symbols_invariant, ""});
      return s.emit(rep);
    }

    if (*c_ver) {
      rep.command = "verify";
      rep.inputs["suite"] = suite;
      std::vector<std::string> names =
          suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
      json suites = json::array();
      for (const std::string& name : names) {
        SuiteResult res = run_suite(name, s.cfg);
        json sj;
        sj["suite"] = res.suite;
        json lines = json::array();
        for (const CheckLine& line : res.checks) {
          json lj;
          lj["name"] = line.name;
          lj["pass"] = line.pass;
          if (!line.detail.empty()) lj["detail"] = line.detail;
          lines.push_back(lj);
          rep.checks.push_back(line);
        }
        sj["checks"] = lines;
        sj["pass"] = res.pass;
        suites.push_back(sj);
      }
      rep.outputs["suites"] = suites;
      return s.emit(rep);
    }
    return 2;
  } catch (const guard_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  }
}
