// Command-line front end: parses spec/tree files, dispatches to the library,
// and prints one deterministic JSON document per invocation on stdout.
// Human-readable remarks go to stderr. Exit codes: 0 success, 2 for invalid
// input (malformed files, caps, bad arguments), 1 for internal errors.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cosettree/json_io.hpp"
#include "cosettree/primes.hpp"
#include "cosettree/universal.hpp"
#include "cosettree/witness.hpp"

namespace {

using cosettree::FrontierMode;
using cosettree::Json;
using cosettree::LevelTree;

struct GlobalOptions {
  std::uint64_t node_cap = cosettree::kDefaultNodeCap;
  std::uint64_t order_cap = cosettree::kDefaultOrderCap;
  std::string mode = "closed";

  FrontierMode frontier() const {
    return mode == "open" ? FrontierMode::OpenFrontier : FrontierMode::ClosedWorld;
  }
};

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

LevelTree load_tree(const std::string& path, const GlobalOptions& options) {
  return cosettree::read_tree_file(path, options.node_cap, options.order_cap);
}

LevelTree load_ambient(const std::string& ambient_path, const LevelTree& like,
                       const GlobalOptions& options) {
  if (ambient_path.empty()) {
    return cosettree::full_tree(like.structure(), options.node_cap);
  }
  return load_tree(ambient_path, options);
}

std::string rank_to_string(const cosettree::RankValue& rank) {
  return rank.core ? "core" : rank.rank.to_string();
}

int run_analyze_tree(const std::string& path, const GlobalOptions& options) {
  const LevelTree tree = load_tree(path, options);
  const auto sequence = cosettree::iterate_derivative(tree, options.frontier());

  Json doc;
  doc["format"] = cosettree::kFormatTag;
  doc["mode"] = options.mode;
  Json levels = Json::array();
  for (const auto& level : tree.structure().levels()) levels.push_back(level.orders());
  doc["levels"] = std::move(levels);
  doc["depth"] = tree.depth();
  Json level_sizes = Json::array();
  for (std::size_t n = 1; n <= tree.depth(); ++n) level_sizes.push_back(tree.level(n).size());
  doc["level_sizes"] = std::move(level_sizes);
  doc["node_count"] = tree.node_count();
  doc["is_group_tree"] = cosettree::is_group_tree(tree);
  doc["is_coset_tree"] = cosettree::is_coset_tree(tree);
  doc["height"] = cosettree::Ordinal::from_natural(sequence.size() - 1).to_string();

  Json nodes = Json::object();
  Json ranks = Json::object();
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    Json node_list = Json::array();
    Json rank_list = Json::array();
    for (const auto code : tree.level(n)) {
      node_list.push_back(tree.structure().decode(n, code));
      std::size_t k = 0;
      while (k + 1 < sequence.size() && sequence[k + 1].contains(n, code)) ++k;
      const bool core = sequence[k].contains(n, code) && k + 1 == sequence.size();
      rank_list.push_back(core ? "core" : cosettree::Ordinal::from_natural(k).to_string());
    }
    nodes[std::to_string(n)] = std::move(node_list);
    ranks[std::to_string(n)] = std::move(rank_list);
  }
  doc["nodes"] = std::move(nodes);
  doc["ranks"] = std::move(ranks);
  emit(doc);
  return 0;
}

int run_derivative(const std::string& path, std::uint64_t steps, const GlobalOptions& options) {
  LevelTree tree = load_tree(path, options);
  for (std::uint64_t i = 0; i < steps; ++i) {
    LevelTree next = cosettree::derivative(tree, options.frontier());
    if (next == tree) break;
    tree = std::move(next);
  }
  emit(cosettree::tree_to_json(tree));
  return 0;
}

int run_gamma(const std::string& path, const GlobalOptions& options) {
  const LevelTree tree = load_tree(path, options);
  std::vector<std::size_t> zero_filled;
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    if (tree.level(n).empty()) zero_filled.push_back(n);
  }
  const LevelTree canonical = cosettree::gamma(tree);
  if (!zero_filled.empty()) {
    std::cerr << "note: empty levels";
    for (const auto n : zero_filled) std::cerr << " " << n;
    std::cerr << " were filled with the zero node\n";
  }
  emit(cosettree::tree_to_json(canonical));
  return 0;
}

int run_phi(const std::string& s_path, const std::string& s2_path,
            const std::string& ambient_path, const GlobalOptions& options) {
  const LevelTree s = load_tree(s_path, options);
  const LevelTree s2 = load_tree(s2_path, options);
  const LevelTree ambient = load_ambient(ambient_path, s, options);
  emit(cosettree::tree_to_json(cosettree::phi(s, s2, ambient)));
  return 0;
}

int run_orbit(const std::string& s_path, const std::string& s2_path,
              const std::string& ambient_path, const GlobalOptions& options) {
  const LevelTree s = load_tree(s_path, options);
  const LevelTree s2 = load_tree(s2_path, options);
  const LevelTree ambient = load_ambient(ambient_path, s, options);
  const auto decision = cosettree::orbit_equivalent(s, s2, ambient);
  Json doc;
  doc["format"] = cosettree::kFormatTag;
  doc["equivalent_at_depth"] = decision.equivalent_at_depth;
  doc["translator"] =
      decision.translator.has_value() ? Json(decision.translator->residues) : Json(nullptr);
  emit(doc);
  return 0;
}

int run_witness(std::uint64_t p, std::uint64_t dim, std::uint64_t depth,
                const std::string& profile_path, const GlobalOptions& options) {
  cosettree::WitnessSpec spec = cosettree::WitnessSpec::with_default_profile(p, dim, depth);
  if (!profile_path.empty()) {
    spec.profile = cosettree::read_profile_file(profile_path);
  }
  emit(cosettree::tree_to_json(cosettree::staircase_witness(spec, options.node_cap)));
  return 0;
}

int run_classify(const std::string& path) {
  const auto spec = cosettree::read_spec_file(path);
  emit(cosettree::report_to_json(cosettree::classify(spec)));
  return 0;
}

int run_embed_plan(const std::string& path, std::uint64_t horizon) {
  const auto spec = cosettree::read_spec_file(path);
  const auto plan = cosettree::embedding_plan(spec, horizon);
  Json doc = cosettree::plan_to_json(plan);
  doc["verified"] = cosettree::verify_plan(plan);
  emit(doc);
  return 0;
}

int run_hinf(std::uint64_t n) {
  Json doc;
  doc["format"] = cosettree::kFormatTag;
  doc["n"] = n;
  doc["expr"] = cosettree::h_infinity(n).to_text();
  emit(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coset-tree calculus for non-archimedean abelian product groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  GlobalOptions options;
  app.add_option("--cap", options.node_cap, "node cap for trees read or generated")
      ->capture_default_str();
  app.add_option("--order-cap", options.order_cap,
                 "cap on the full product order of a level structure")
      ->capture_default_str();
  app.add_option("--mode", options.mode, "frontier mode: closed or open")
      ->check(CLI::IsMember({"closed", "open"}))
      ->capture_default_str();

  std::string spec_path, tree_path, tree2_path, ambient_path, profile_path;
  std::uint64_t steps = 1, horizon = 4, witness_p = 2, witness_dim = 1, witness_depth = 1,
                hinf_n = 0;

  auto* classify_cmd = app.add_subcommand("classify", "tameness report for a spec file");
  classify_cmd->add_option("spec", spec_path, "spec JSON file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze-tree", "predicates, height and ranks");
  analyze_cmd->add_option("tree", tree_path, "tree JSON file")->required();

  auto* derivative_cmd = app.add_subcommand("derivative", "iterated derivative of a tree");
  derivative_cmd->add_option("tree", tree_path, "tree JSON file")->required();
  derivative_cmd->add_option("--steps", steps, "number of derivative steps")
      ->capture_default_str();

  auto* gamma_cmd = app.add_subcommand("gamma", "canonical group tree of a coset tree");
  gamma_cmd->add_option("tree", tree_path, "tree JSON file")->required();

  auto* phi_cmd = app.add_subcommand("phi", "translator coset tree of two trees");
  phi_cmd->add_option("tree", tree_path, "source tree JSON file")->required();
  phi_cmd->add_option("tree2", tree2_path, "target tree JSON file")->required();
  phi_cmd->add_option("--ambient", ambient_path, "ambient group tree (default: full tree)");

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit equivalence at truncation depth");
  orbit_cmd->add_option("tree", tree_path, "source tree JSON file")->required();
  orbit_cmd->add_option("tree2", tree2_path, "target tree JSON file")->required();
  orbit_cmd->add_option("--ambient", ambient_path, "ambient group tree (default: full tree)");

  auto* witness_cmd = app.add_subcommand("witness", "staircase witness group tree");
  witness_cmd->add_option("-p", witness_p, "prime")->capture_default_str();
  witness_cmd->add_option("-D,--dim", witness_dim, "coordinates per level")
      ->capture_default_str();
  witness_cmd->add_option("-d,--depth", witness_depth, "tree depth")->capture_default_str();
  witness_cmd->add_option("--profile", profile_path, "profile JSON file");

  auto* plan_cmd = app.add_subcommand("embed-plan", "universal-product embedding plan");
  plan_cmd->add_option("spec", spec_path, "spec JSON file")->required();
  plan_cmd->add_option("--horizon", horizon, "plan horizon (>= 2)")->capture_default_str();

  auto* hinf_cmd = app.add_subcommand("hinf", "factor of the universal tame product");
  hinf_cmd->add_option("n", hinf_n, "factor index")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return run_classify(spec_path);
    if (analyze_cmd->parsed()) return run_analyze_tree(tree_path, options);
    if (derivative_cmd->parsed()) return run_derivative(tree_path, steps, options);
    if (gamma_cmd->parsed()) return run_gamma(tree_path, options);
    if (phi_cmd->parsed()) return run_phi(tree_path, tree2_path, ambient_path, options);
    if (orbit_cmd->parsed()) return run_orbit(tree_path, tree2_path, ambient_path, options);
    if (witness_cmd->parsed()) {
      return run_witness(witness_p, witness_dim, witness_depth, profile_path, options);
    }
    if (plan_cmd->parsed()) return run_embed_plan(spec_path, horizon);
    if (hinf_cmd->parsed()) return run_hinf(hinf_n);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const cosettree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
