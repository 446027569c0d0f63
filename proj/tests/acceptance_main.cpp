// Acceptance suite: runs every criterion at its stated tolerance (exact
// throughout) and prints one pass/fail line per criterion. The first
// argument is the path to the CLI binary, used by the determinism check.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cosettree/json_io.hpp"
#include "cosettree/primes.hpp"
#include "cosettree/universal.hpp"
#include "cosettree/witness.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace {

using cosettree::Cardinal;
using cosettree::ComplexityClass;
using cosettree::FiniteAbelian;
using cosettree::FrontierMode;
using cosettree::GroupExpr;
using cosettree::LevelStructure;
using cosettree::LevelTree;
using cosettree::Obstruction;
using cosettree::Ordinal;
using cosettree::SeqRole;
using cosettree::SeqSpec;
using cosettree::TailRule;
using cosettree::TamenessTier;
using cosettree::TreeNode;

struct Registry {
  int failures = 0;

  void run(int index, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      std::printf("[PASS] criterion %d: %s\n", index, name.c_str());
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s%s%s\n", index, name.c_str(),
                  detail.empty() ? "" : " -- ", detail.c_str());
    }
    std::fflush(stdout);
  }
};

#define EXPECT(cond)                                                              \
  do {                                                                            \
    if (!(cond)) {                                                                \
      std::fprintf(stderr, "  expectation failed at %s:%d: %s\n", __FILE__,       \
                   __LINE__, #cond);                                              \
      return false;                                                               \
    }                                                                             \
  } while (0)

// ---------------------------------------------------------------------------
// Criterion 1: p-compactness goldens plus exhaustive brute force
// ---------------------------------------------------------------------------

constexpr std::uint64_t kCatalogPrimes[] = {2, 3, 5, 7, 11, 13};

/// Visits every multiset of cyclic orders (nondecreasing, each >= 2) with
/// product at most the bound.
void for_each_finite_group(std::uint64_t bound,
                           const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> orders;
  const std::function<void(std::uint64_t, std::uint64_t)> recurse =
      [&](std::uint64_t product, std::uint64_t start) {
        visit(orders);
        for (std::uint64_t f = start; product * f <= bound; ++f) {
          orders.push_back(f);
          recurse(product * f, f);
          orders.pop_back();
        }
      };
  recurse(1, 2);
}

/// Counts {x : p*x = 0} for each catalog prime by walking every element of
/// the product once, with incrementally maintained per-coordinate flags.
std::array<std::uint64_t, 6> sweep_order_p_counts(const std::vector<std::uint64_t>& orders) {
  std::array<std::uint64_t, 6> counts{};
  const std::size_t k = orders.size();
  std::vector<std::uint64_t> residue(k, 0);
  // violations[p-index] = number of coordinates where p*r != 0 (mod n).
  std::array<std::uint64_t, 6> violations{};
  const auto coordinate_ok = [&](std::size_t pi, std::size_t i) {
    return (kCatalogPrimes[pi] * residue[i]) % orders[i] == 0;
  };
  while (true) {
    for (std::size_t pi = 0; pi < 6; ++pi) {
      if (violations[pi] == 0) ++counts[pi];
    }
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      for (std::size_t pi = 0; pi < 6; ++pi) {
        if (coordinate_ok(pi, i)) ++violations[pi];
      }
      if (++residue[i] == orders[i]) residue[i] = 0;
      for (std::size_t pi = 0; pi < 6; ++pi) {
        if (coordinate_ok(pi, i)) --violations[pi];
      }
      if (residue[i] != 0) {
        done = false;
        break;
      }
      if (i == 0) break;
    }
    if (done) return counts;
  }
}

bool criterion_p_compact() {
  for (const auto p : kCatalogPrimes) {
    EXPECT(!cosettree::is_p_compact(GroupExpr::integers(), p));
    EXPECT(!cosettree::is_p_compact(GroupExpr::fin_sup_power(GroupExpr::cyclic(p)), p));
    EXPECT(cosettree::is_p_compact(GroupExpr::quasicyclic(p), p));
  }

  bool ok = true;
  std::uint64_t groups = 0;
  for_each_finite_group(5000, [&](const std::vector<std::uint64_t>& orders) {
    if (!ok) return;
    ++groups;
    std::vector<GroupExpr> parts;
    for (const auto n : orders) parts.push_back(GroupExpr::cyclic(n));
    const GroupExpr expr = GroupExpr::sum(std::move(parts));
    const auto brute = sweep_order_p_counts(orders);
    for (std::size_t pi = 0; pi < 6; ++pi) {
      const auto counted = cosettree::order_p_count(expr, kCatalogPrimes[pi]);
      if (!counted.is_finite() || counted.count() != brute[pi] ||
          !cosettree::is_p_compact(expr, kCatalogPrimes[pi])) {
        ok = false;
        return;
      }
    }
  });
  EXPECT(ok);
  EXPECT(groups > 50000);  // the enumeration really was exhaustive
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: extension law
// ---------------------------------------------------------------------------

bool criterion_extension_law() {
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 200; ++i) {
    const GroupExpr a = generators::random_expr(rng);
    const GroupExpr b = generators::random_expr(rng);
    const GroupExpr s = GroupExpr::sum({a, b});
    for (const std::uint64_t p : {2, 3, 5, 7}) {
      EXPECT(cosettree::is_p_compact(s, p) ==
             (cosettree::is_p_compact(a, p) && cosettree::is_p_compact(b, p)));
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 3: classifier goldens
// ---------------------------------------------------------------------------

SeqSpec make_spec(SeqRole role, std::vector<GroupExpr> prefix, TailRule tail) {
  SeqSpec spec;
  spec.role = role;
  spec.prefix = std::move(prefix);
  spec.tail = std::move(tail);
  return spec;
}

bool has_obstruction(const cosettree::TamenessReport& r, Obstruction::Kind kind,
                     std::uint64_t p = 0) {
  for (const auto& o : r.obstructions) {
    if (o.kind == kind && (kind == Obstruction::Kind::ZOmega || o.p == p)) return true;
  }
  return false;
}

bool criterion_classifier_goldens() {
  const auto finsup = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {},
                TailRule::periodic({GroupExpr::fin_sup_power(GroupExpr::cyclic(2))})));
  EXPECT(!finsup.tame);
  EXPECT(has_obstruction(finsup, Obstruction::Kind::ZpFinSupOmega, 2));
  EXPECT(!has_obstruction(finsup, Obstruction::Kind::ZOmega));

  const auto z_omega = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {}, TailRule::periodic({GroupExpr::integers()})));
  EXPECT(!z_omega.tame);
  EXPECT(has_obstruction(z_omega, Obstruction::Kind::ZOmega));
  EXPECT(!has_obstruction(z_omega, Obstruction::Kind::ZpFinSupOmega, 2));

  const auto quasicyclic = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {}, TailRule::periodic({GroupExpr::quasicyclic(2)})));
  EXPECT(quasicyclic.tame);
  EXPECT(quasicyclic.tier == TamenessTier::AllPCompact);
  EXPECT(quasicyclic.group_tree_bound == Ordinal::omega());
  EXPECT(quasicyclic.coset_tree_bound == Ordinal::omega_times(2));
  EXPECT(quasicyclic.complexity_bound == ComplexityClass::E0OmegaPlus1);

  const auto adele = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {}, TailRule::all_quasicyclic()));
  EXPECT(adele.tame);
  EXPECT(adele.tier == TamenessTier::AllPCompact);
  EXPECT(adele.group_tree_bound == Ordinal::omega());
  EXPECT(adele.complexity_bound == ComplexityClass::E0OmegaPlus1);

  const auto torsion = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {GroupExpr::fin_sup_power(GroupExpr::cyclic(2))},
                TailRule::periodic({GroupExpr::cyclic(2)})));
  EXPECT(torsion.tame);
  EXPECT(torsion.tier == TamenessTier::AllTorsion);
  EXPECT(torsion.group_tree_bound == Ordinal::omega_times(2));
  EXPECT(torsion.coset_tree_bound == Ordinal::omega_times(3));
  EXPECT(torsion.complexity_bound == ComplexityClass::E0OmegaPlus2);

  const auto general = cosettree::classify_product(
      make_spec(SeqRole::ProductFactors, {GroupExpr::rationals()},
                TailRule::periodic({GroupExpr::cyclic(5)})));
  EXPECT(general.tame);
  EXPECT(general.tier == TamenessTier::TameGeneral);
  EXPECT(general.group_tree_bound == Ordinal::omega_times(3));
  EXPECT(general.coset_tree_bound == Ordinal::omega_times(4));
  EXPECT(general.complexity_bound == ComplexityClass::E0OmegaPlus3);

  const auto compact = cosettree::classify_filtration(
      make_spec(SeqRole::FiltrationQuotients, {}, TailRule::periodic({GroupExpr::cyclic(2)})));
  EXPECT(compact.tame);
  EXPECT(compact.locally_compact);
  EXPECT(compact.complexity_bound == ComplexityClass::E0);
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: base invariance under regrouping
// ---------------------------------------------------------------------------

bool criterion_base_invariance() {
  std::mt19937_64 rng(1004);
  int specs = 0;
  while (specs < 20) {
    const SeqSpec spec = generators::random_spec(rng);
    const auto base = cosettree::classify(spec);
    const std::uint64_t prefix_len = spec.prefix.size();
    const std::uint64_t cycle_len = spec.tail.cycle.size();
    int regroupings = 0;
    int attempts = 0;
    while (regroupings < 20 && attempts < 200) {
      ++attempts;
      std::vector<std::uint64_t> cuts = {0};
      std::uint64_t at = 0;
      while (at < prefix_len && generators::pick(rng, 0, 1) == 0) {
        at += generators::pick(rng, 1, prefix_len - at);
        cuts.push_back(at);
      }
      if (generators::pick(rng, 0, 1) == 0) {
        if (cuts.back() < prefix_len) cuts.push_back(prefix_len);
        cuts.push_back(prefix_len + cycle_len * generators::pick(rng, 1, 3));
      }
      if (cuts.size() == 1) continue;
      const auto report = cosettree::classify(cosettree::regroup(spec, cuts));
      EXPECT(report.tame == base.tame);
      EXPECT(report.obstructions == base.obstructions);
      ++regroupings;
    }
    EXPECT(regroupings == 20);
    ++specs;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: tree-engine identities on a generated corpus
// ---------------------------------------------------------------------------

std::vector<LevelStructure> corpus_structures() {
  const std::vector<std::vector<std::vector<std::uint64_t>>> shapes = {
      {{2}}, {{4}}, {{8}}, {{2, 2}}, {{3}, {3}}, {{4}, {2}}, {{2}, {2}, {2}},
      {{2, 4}, {2}}, {{4}, {4}, {2}}, {{9}, {3}}, {{16}, {16}, {16}}, {{8}, {8}, {8}},
      {{2}, {4}, {8}, {2}}, {{5}, {5}, {5}},
  };
  std::vector<LevelStructure> out;
  for (const auto& shape : shapes) {
    std::vector<FiniteAbelian> levels;
    for (const auto& orders : shape) levels.emplace_back(orders);
    out.emplace_back(std::move(levels));
  }
  return out;
}

bool check_tree_identities(const LevelTree& tree, const LevelTree& ambient) {
  const auto& s = tree.structure();

  // Derivative: levelwise image formula vs node-by-node definition.
  for (const auto mode : {FrontierMode::ClosedWorld, FrontierMode::OpenFrontier}) {
    EXPECT(cosettree::derivative(tree, mode) == oracles::definitional_derivative(tree, mode));
  }

  if (cosettree::is_group_tree(tree)) {
    EXPECT(cosettree::is_coset_tree(tree));
  }

  // Heights stay within the window.
  EXPECT(cosettree::height(tree, FrontierMode::ClosedWorld) <=
         Ordinal::from_natural(s.depth()));

  // Rank monotonicity along branches under ClosedWorld.
  const auto sequence = cosettree::iterate_derivative(tree, FrontierMode::ClosedWorld);
  const auto rank_at = [&](std::size_t n, std::uint64_t code) {
    std::size_t k = 0;
    while (k + 1 < sequence.size() && sequence[k + 1].contains(n, code)) ++k;
    return k;
  };
  for (std::size_t n = 2; n <= s.depth(); ++n) {
    for (const auto code : tree.level(n)) {
      EXPECT(rank_at(n - 1, s.parent_code(n, code)) >= rank_at(n, code) + 1);
    }
  }

  if (cosettree::is_coset_tree(tree)) {
    const LevelTree canonical = cosettree::gamma(tree);
    EXPECT(cosettree::is_group_tree(canonical));
    EXPECT(cosettree::is_coset_tree(canonical));       // group implies coset
    EXPECT(cosettree::gamma(canonical) == canonical);  // idempotent
    EXPECT((canonical == tree) == cosettree::is_group_tree(tree));
    EXPECT(cosettree::phi(canonical, tree, ambient) == tree);

    // The cubic triple-check oracle confirms the coset predicate where it
    // is affordable.
    std::size_t widest = 0;
    for (std::size_t n = 1; n <= s.depth(); ++n) {
      widest = std::max(widest, tree.level(n).size());
    }
    if (widest <= 64) {
      EXPECT(oracles::brute_is_coset_tree(tree));
      EXPECT(oracles::brute_is_coset_tree(canonical));
    }
  }
  return true;
}

/// Every prefix-closed tree over a tiny structure, by filtering all node
/// subsets of the full tree.
bool exhaustive_small_trees(const LevelStructure& s) {
  const LevelTree ambient = cosettree::full_tree(s);
  std::vector<std::pair<std::size_t, std::uint64_t>> slots;  // (level, code)
  for (std::size_t n = 1; n <= s.depth(); ++n) {
    for (const auto code : ambient.level(n)) slots.emplace_back(n, code);
  }
  if (slots.size() > 14) return false;  // keep the power set honest but small
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
    std::vector<std::vector<std::uint64_t>> levels(s.depth());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask & (std::uint64_t(1) << i)) levels[slots[i].first - 1].push_back(slots[i].second);
    }
    LevelTree tree = LevelTree::empty(s);
    try {
      tree = LevelTree(s, std::move(levels));
    } catch (const cosettree::InvalidTree&) {
      continue;  // not prefix-closed: not a tree
    }
    EXPECT(check_tree_identities(tree, ambient));
  }
  return true;
}

bool criterion_tree_identities() {
  std::mt19937_64 rng(1005);
  const auto structures = corpus_structures();
  int random_trees = 0;

  // All trees over the smallest structures, then full and empty trees over
  // every corpus structure.
  for (const auto& shape : std::vector<std::vector<std::vector<std::uint64_t>>>{
           {{2}}, {{3}}, {{4}}, {{2}, {2}}, {{2}, {3}}, {{2}, {2}, {2}}}) {
    std::vector<FiniteAbelian> levels;
    for (const auto& orders : shape) levels.emplace_back(orders);
    EXPECT(exhaustive_small_trees(LevelStructure(std::move(levels))));
  }
  for (const auto& s : structures) {
    EXPECT(s.product_order(s.depth()) <= 4096);
    const LevelTree ambient = cosettree::full_tree(s);
    EXPECT(check_tree_identities(ambient, ambient));
    EXPECT(check_tree_identities(LevelTree::empty(s), ambient));
  }
  // 500 random subgroup/coset trees, interleaved with pruned general trees.
  int subgroup_coset_trees = 0;
  while (subgroup_coset_trees < 500) {
    const auto& s = structures[random_trees % structures.size()];
    const LevelTree ambient = cosettree::full_tree(s);
    const std::uint64_t kind = random_trees % 3;
    const LevelTree tree = kind == 0   ? generators::random_group_tree(rng, s)
                           : kind == 1 ? generators::random_coset_tree(rng, s)
                                       : generators::random_tree(rng, s);
    if (kind == 0) EXPECT(cosettree::is_group_tree(tree));
    if (kind == 1) EXPECT(cosettree::is_coset_tree(tree));
    if (kind != 2) ++subgroup_coset_trees;
    EXPECT(check_tree_identities(tree, ambient));
    ++random_trees;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 6: orbit decisions vs exhaustive translator search
// ---------------------------------------------------------------------------

bool criterion_orbit_oracle() {
  std::mt19937_64 rng(1006);
  const auto structures = corpus_structures();
  int pairs = 0;
  std::vector<std::pair<LevelTree, LevelTree>> equivalent_samples;
  while (pairs < 300) {
    const auto& s = structures[pairs % structures.size()];
    const LevelTree ambient = cosettree::full_tree(s);
    const LevelTree a = generators::random_coset_tree(rng, s);
    const LevelTree b = (pairs % 3 == 0)
                            ? cosettree::translate(a, generators::random_full_node(rng, s))
                            : generators::random_coset_tree(rng, s);
    const auto decision = cosettree::orbit_equivalent(a, b, ambient);
    const auto witness = oracles::brute_force_translator(a, b);
    EXPECT(decision.equivalent_at_depth == witness.has_value());
    if (decision.translator.has_value()) {
      EXPECT(cosettree::translate(a, *decision.translator) == b);
    }

    // Symmetry.
    const auto reverse = cosettree::orbit_equivalent(b, a, ambient);
    EXPECT(reverse.equivalent_at_depth == decision.equivalent_at_depth);

    // Transitivity samples: a ~ b and b ~ c forces a ~ c.
    if (decision.equivalent_at_depth) {
      const LevelTree c = cosettree::translate(b, generators::random_full_node(rng, s));
      const auto bc = cosettree::orbit_equivalent(b, c, ambient);
      const auto ac = cosettree::orbit_equivalent(a, c, ambient);
      EXPECT(bc.equivalent_at_depth);
      EXPECT(ac.equivalent_at_depth);
    }
    ++pairs;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: witness ranks under two derivative implementations
// ---------------------------------------------------------------------------

bool criterion_witness_ranks() {
  std::vector<std::uint64_t> root_ranks;
  for (std::uint64_t dim = 1; dim <= 4; ++dim) {
    const auto spec = cosettree::WitnessSpec::with_default_profile(2, dim, dim + 1);
    const LevelTree tree = cosettree::staircase_witness(spec);
    EXPECT(cosettree::is_group_tree(tree));

    // The two derivative implementations must agree at every stage.
    const auto fast = cosettree::iterate_derivative(tree, FrontierMode::ClosedWorld);
    const auto slow = oracles::definitional_iterate(tree, FrontierMode::ClosedWorld);
    EXPECT(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT(fast[i] == slow[i]);

    const TreeNode root{std::vector<std::uint64_t>(dim, 0)};
    const auto rank = cosettree::rank_of(tree, root, FrontierMode::ClosedWorld);
    EXPECT(!rank.core);
    const auto expected = oracles::definitional_rank(tree, 1, tree.locate(root).second,
                                                     FrontierMode::ClosedWorld);
    EXPECT(expected.has_value());
    EXPECT(rank.rank == Ordinal::from_natural(*expected));
    root_ranks.push_back(rank.rank.natural_value());
  }
  for (std::size_t i = 1; i < root_ranks.size(); ++i) {
    EXPECT(root_ranks[i - 1] < root_ranks[i]);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: the universal-product pipeline
// ---------------------------------------------------------------------------

bool criterion_universal_pipeline() {
  EXPECT(cosettree::classify_product(cosettree::h_infinity_spec()).tame);

  const std::vector<SeqSpec> goldens = {
      make_spec(SeqRole::ProductFactors, {}, TailRule::periodic({GroupExpr::quasicyclic(2)})),
      cosettree::h_infinity_spec(),
      make_spec(SeqRole::ProductFactors, {GroupExpr::fin_sup_power(GroupExpr::cyclic(2))},
                TailRule::periodic({GroupExpr::sum(
                    {GroupExpr::quasicyclic(2), GroupExpr::cyclic(9)})})),
  };
  for (const auto& spec : goldens) {
    const auto plan = cosettree::embedding_plan(spec, 8);
    EXPECT(cosettree::verify_plan(plan));
    EXPECT(plan.n_caps.size() == 9);
    EXPECT(plan.n_caps[0] == 1);
    for (std::size_t n = 1; n <= 8; ++n) {
      EXPECT(plan.n_caps[n] == plan.n_caps[n - 1] + plan.m_caps[n - 1] + 1);
    }
    for (const auto& cert : plan.certificates) EXPECT(cert.ok);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 9: ordinal arithmetic suite
// ---------------------------------------------------------------------------

Ordinal random_ordinal(std::mt19937_64& rng) {
  std::vector<std::uint32_t> exps;
  for (std::uint64_t i = generators::pick(rng, 0, 3); i > 0; --i) {
    exps.push_back(static_cast<std::uint32_t>(generators::pick(rng, 0, 5)));
  }
  std::sort(exps.rbegin(), exps.rend());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<Ordinal::Term> terms;
  for (const auto e : exps) terms.push_back({e, generators::pick(rng, 1, 9)});
  return Ordinal::from_terms(std::move(terms));
}

bool criterion_ordinals() {
  EXPECT(Ordinal::from_natural(1) + Ordinal::omega() == Ordinal::omega());
  std::mt19937_64 rng(1009);
  for (int i = 0; i < 1000; ++i) {
    const Ordinal a = random_ordinal(rng);
    const Ordinal b = random_ordinal(rng);
    const Ordinal c = random_ordinal(rng);
    EXPECT((a + b) + c == a + (b + c));
    EXPECT(a + Ordinal() == a);
    EXPECT(Ordinal() + a == a);
    if (b < c) EXPECT(a + b < a + c);
    EXPECT(Ordinal::parse(a.to_string()) == a);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 10: CLI determinism on the golden corpus
// ---------------------------------------------------------------------------

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion_cli_determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cosettree_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const auto write = [&](const std::string& name, const cosettree::Json& doc) {
    std::ofstream out(dir / name, std::ios::binary);
    out << doc.dump(2) << "\n";
    return (dir / name).string();
  };

  // Golden corpus: specs, trees, and a profile.
  const std::string quasicyclic_spec = write(
      "zq2.json", cosettree::spec_to_json(make_spec(
                      SeqRole::ProductFactors, {}, TailRule::periodic({GroupExpr::quasicyclic(2)}))));
  const std::string zomega_spec = write(
      "zomega.json", cosettree::spec_to_json(make_spec(
                         SeqRole::ProductFactors, {}, TailRule::periodic({GroupExpr::integers()}))));
  const std::string hinf_spec = write("hinf.json",
                                      cosettree::spec_to_json(cosettree::h_infinity_spec()));
  const std::string filtration_spec = write(
      "filtration.json",
      cosettree::spec_to_json(make_spec(SeqRole::FiltrationQuotients, {},
                                        TailRule::periodic({GroupExpr::cyclic(2)}))));

  const auto witness_tree =
      cosettree::staircase_witness(cosettree::WitnessSpec::with_default_profile(2, 3, 4));
  const std::string witness_path = write("witness.json", cosettree::tree_to_json(witness_tree));
  const LevelStructure small({FiniteAbelian({2}), FiniteAbelian({4})});
  const LevelTree base_tree = cosettree::full_tree(small);
  std::mt19937_64 rng(1010);
  const LevelTree group_tree = generators::random_group_tree(rng, small);
  const LevelTree moved_tree =
      cosettree::translate(group_tree, generators::random_full_node(rng, small));
  const std::string group_path = write("group.json", cosettree::tree_to_json(group_tree));
  const std::string moved_path = write("moved.json", cosettree::tree_to_json(moved_tree));
  const std::string ambient_path = write("ambient.json", cosettree::tree_to_json(base_tree));

  const std::vector<std::string> commands = {
      "classify " + shell_quote(quasicyclic_spec),
      "classify " + shell_quote(zomega_spec),
      "classify " + shell_quote(hinf_spec),
      "classify " + shell_quote(filtration_spec),
      "analyze-tree " + shell_quote(witness_path),
      "analyze-tree --mode open " + shell_quote(group_path),
      "derivative --steps 2 " + shell_quote(witness_path),
      "gamma " + shell_quote(moved_path),
      "phi " + shell_quote(group_path) + " " + shell_quote(moved_path),
      "phi " + shell_quote(group_path) + " " + shell_quote(moved_path) + " --ambient " +
          shell_quote(ambient_path),
      "orbit " + shell_quote(group_path) + " " + shell_quote(moved_path),
      "witness -p 2 -D 3 -d 4",
      "embed-plan --horizon 8 " + shell_quote(quasicyclic_spec),
      "hinf 3",
  };

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const fs::path out1 = dir / ("out_" + std::to_string(i) + "_a.json");
    const fs::path out2 = dir / ("out_" + std::to_string(i) + "_b.json");
    const std::string base = shell_quote(cli) + " " + commands[i];
    EXPECT(run_command(base + " > " + shell_quote(out1.string()) + " 2>/dev/null") == 0);
    EXPECT(run_command(base + " > " + shell_quote(out2.string()) + " 2>/dev/null") == 0);
    const std::string first = slurp(out1);
    EXPECT(!first.empty());
    EXPECT(first == slurp(out2));
  }

  // Spot-check the classify surface against the pinned shape.
  const fs::path probe = dir / "probe.json";
  EXPECT(run_command(shell_quote(cli) + " classify " + shell_quote(quasicyclic_spec) + " > " +
                     shell_quote(probe.string())) == 0);
  const cosettree::Json report = cosettree::Json::parse(slurp(probe));
  EXPECT(report["tame"] == true);
  EXPECT(report["tier"] == "all_p_compact");
  EXPECT(report["complexity_bound"] == "(E0^w)^+");

  // The analyze-tree rank table must match library ranks node by node.
  const fs::path ranks_path = dir / "ranks.json";
  EXPECT(run_command(shell_quote(cli) + " analyze-tree " + shell_quote(witness_path) + " > " +
                     shell_quote(ranks_path.string())) == 0);
  const cosettree::Json analysis = cosettree::Json::parse(slurp(ranks_path));
  EXPECT(analysis["is_group_tree"] == true);
  for (std::size_t n = 1; n <= witness_tree.depth(); ++n) {
    const auto& nodes = analysis["nodes"][std::to_string(n)];
    const auto& ranks = analysis["ranks"][std::to_string(n)];
    EXPECT(nodes.size() == witness_tree.level(n).size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const TreeNode node{nodes[i].get<std::vector<std::uint64_t>>()};
      const auto rank = cosettree::rank_of(witness_tree, node, FrontierMode::ClosedWorld);
      EXPECT(!rank.core);
      EXPECT(ranks[i].get<std::string>() == rank.rank.to_string());
    }
  }

  // Validation failures exit with status 2.
  std::ofstream(dir / "broken.json") << "{\"format\": \"cosettree/1\"";
  EXPECT(run_command(shell_quote(cli) + " classify " +
                     shell_quote((dir / "broken.json").string()) + " >/dev/null 2>&1") == 2);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cosettree-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  Registry registry;
  registry.run(1, "p-compactness catalog and exhaustive brute force to order 5000",
               criterion_p_compact);
  registry.run(2, "p-compactness extension law over random sums", criterion_extension_law);
  registry.run(3, "classifier goldens with height and complexity bounds",
               criterion_classifier_goldens);
  registry.run(4, "classification invariant under regrouping", criterion_base_invariance);
  registry.run(5, "tree-engine identities on the generated corpus", criterion_tree_identities);
  registry.run(6, "orbit decisions match exhaustive translator search", criterion_orbit_oracle);
  registry.run(7, "staircase witness ranks grow and both derivative paths agree",
               criterion_witness_ranks);
  registry.run(8, "universal-product pipeline verifies to horizon 8",
               criterion_universal_pipeline);
  registry.run(9, "ordinal arithmetic randomized suite", criterion_ordinals);
  registry.run(10, "CLI determinism on the golden corpus",
               [&] { return criterion_cli_determinism(cli); });

  if (registry.failures > 0) {
    std::printf("%d criterion(s) failed\n", registry.failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
