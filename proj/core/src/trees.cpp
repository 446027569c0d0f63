#include "cosettree/trees.hpp"

#include <algorithm>
#include <numeric>

namespace cosettree {

// ---------------------------------------------------------------------------
// LevelStructure
// ---------------------------------------------------------------------------

LevelStructure::LevelStructure(std::vector<FiniteAbelian> levels, std::uint64_t order_cap)
    : levels_(std::move(levels)) {
  if (levels_.empty()) {
    throw std::invalid_argument("a level structure needs at least one level");
  }
  coord_offset_.push_back(0);
  product_order_.push_back(1);
  for (const auto& level : levels_) {
    if (level.rank() == 0) {
      throw std::invalid_argument(
          "levels need at least one cyclic factor; write a trivial level as [1]");
    }
    std::uint64_t block = 1;
    for (const auto o : level.orders()) {
      flat_orders_.push_back(o);
      block *= o;  // bounded by the running cap check below
    }
    level_order_.push_back(block);
    std::uint64_t product = 0;
    if (__builtin_mul_overflow(product_order_.back(), block, &product) ||
        product > order_cap) {
      throw CapExceeded("level structure order exceeds cap " + std::to_string(order_cap));
    }
    product_order_.push_back(product);
    coord_offset_.push_back(flat_orders_.size());
  }
  for (std::size_t n = 1; n <= depth(); ++n) {
    const std::size_t count = coord_offset_[n];
    std::vector<std::uint64_t> places(count, 1);
    for (std::size_t j = count; j > 1; --j) {
      places[j - 2] = places[j - 1] * flat_orders_[j - 1];
    }
    place_.push_back(std::move(places));
  }
}

std::size_t LevelStructure::node_length(std::size_t residue_count) const {
  for (std::size_t n = 1; n <= depth(); ++n) {
    if (coord_offset_[n] == residue_count) return n;
  }
  throw ShapeMismatch("residue tuple length " + std::to_string(residue_count) +
                      " does not match any level boundary");
}

std::uint64_t LevelStructure::encode(std::size_t n,
                                     std::span<const std::uint64_t> residues) const {
  if (n < 1 || n > depth() || residues.size() != coord_offset_[n]) {
    throw ShapeMismatch("encode: bad node length");
  }
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < residues.size(); ++j) {
    if (residues[j] >= flat_orders_[j]) {
      throw ShapeMismatch("residue " + std::to_string(residues[j]) +
                          " out of range [0," + std::to_string(flat_orders_[j]) +
                          ") at coordinate " + std::to_string(j));
    }
    code = code * flat_orders_[j] + residues[j];
  }
  return code;
}

std::vector<std::uint64_t> LevelStructure::decode(std::size_t n, std::uint64_t code) const {
  const std::size_t count = coord_offset_.at(n);
  std::vector<std::uint64_t> residues(count);
  for (std::size_t j = count; j > 0; --j) {
    residues[j - 1] = code % flat_orders_[j - 1];
    code /= flat_orders_[j - 1];
  }
  return residues;
}

std::uint64_t LevelStructure::parent_code(std::size_t n, std::uint64_t code) const {
  return code / level_order_.at(n - 1);
}

std::uint64_t LevelStructure::add_codes(std::size_t n, std::uint64_t a, std::uint64_t b) const {
  const std::size_t count = coord_offset_.at(n);
  const auto& places = place_[n - 1];
  std::uint64_t code = 0;
  // Extract coordinates in lockstep, most significant first.
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t ra = (a / places[j]) % flat_orders_[j];
    const std::uint64_t rb = (b / places[j]) % flat_orders_[j];
    code = code * flat_orders_[j] + (ra + rb) % flat_orders_[j];
  }
  return code;
}

std::uint64_t LevelStructure::negate_code(std::size_t n, std::uint64_t a) const {
  const std::size_t count = coord_offset_.at(n);
  const auto& places = place_[n - 1];
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t ra = (a / places[j]) % flat_orders_[j];
    code = code * flat_orders_[j] + (ra == 0 ? 0 : flat_orders_[j] - ra);
  }
  return code;
}

// ---------------------------------------------------------------------------
// LevelTree
// ---------------------------------------------------------------------------

LevelTree::LevelTree(LevelStructure structure, std::vector<std::vector<std::uint64_t>> level_codes)
    : structure_(std::move(structure)), levels_(std::move(level_codes)) {
  if (levels_.size() != structure_.depth()) {
    throw InvalidTree("expected " + std::to_string(structure_.depth()) +
                      " level sets, got " + std::to_string(levels_.size()));
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& codes = levels_[i];
    const std::uint64_t bound = structure_.product_order(i + 1);
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (codes[j] >= bound) {
        throw InvalidTree("node code out of range at level " + std::to_string(i + 1));
      }
      if (j > 0 && codes[j - 1] >= codes[j]) {
        throw InvalidTree("node codes must be strictly increasing at level " +
                          std::to_string(i + 1));
      }
    }
  }
  // Prefix closure: every node of length n+1 restricts to a present node.
  for (std::size_t n = 2; n <= structure_.depth(); ++n) {
    const auto& upper = levels_[n - 1];
    const auto& lower = levels_[n - 2];
    for (const auto code : upper) {
      const std::uint64_t parent = structure_.parent_code(n, code);
      if (!std::binary_search(lower.begin(), lower.end(), parent)) {
        throw InvalidTree("tree is not prefix-closed at level " + std::to_string(n));
      }
    }
  }
}

LevelTree LevelTree::empty(LevelStructure structure) {
  std::vector<std::vector<std::uint64_t>> levels(structure.depth());
  return LevelTree(std::move(structure), std::move(levels));
}

const std::vector<std::uint64_t>& LevelTree::level(std::size_t n) const {
  if (n < 1 || n > levels_.size()) {
    throw std::out_of_range("level index must be in [1, depth]");
  }
  return levels_[n - 1];
}

bool LevelTree::contains(std::size_t n, std::uint64_t code) const {
  const auto& codes = level(n);
  return std::binary_search(codes.begin(), codes.end(), code);
}

std::size_t LevelTree::node_count() const {
  std::size_t total = 0;
  for (const auto& codes : levels_) total += codes.size();
  return total;
}

std::pair<std::size_t, std::uint64_t> LevelTree::locate(const TreeNode& node) const {
  const std::size_t n = structure_.node_length(node.residues.size());
  const std::uint64_t code = structure_.encode(n, node.residues);
  return {n, code};
}

// ---------------------------------------------------------------------------
// Construction and predicates
// ---------------------------------------------------------------------------

LevelTree full_tree(const LevelStructure& structure, std::uint64_t node_cap) {
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= structure.depth(); ++n) {
    std::uint64_t next = 0;
    if (__builtin_add_overflow(total, structure.product_order(n), &next) || next > node_cap) {
      throw CapExceeded("full tree would exceed the node cap " + std::to_string(node_cap));
    }
    total = next;
  }
  std::vector<std::vector<std::uint64_t>> levels(structure.depth());
  for (std::size_t n = 1; n <= structure.depth(); ++n) {
    levels[n - 1].resize(structure.product_order(n));
    std::iota(levels[n - 1].begin(), levels[n - 1].end(), std::uint64_t(0));
  }
  return LevelTree(structure, std::move(levels));
}

namespace {

bool level_is_subgroup(const LevelStructure& structure, std::size_t n,
                       const std::vector<std::uint64_t>& codes) {
  if (codes.empty() || codes.front() != 0) return false;
  if (codes.size() == structure.product_order(n)) return true;
  // Nonempty, contains zero, closed under addition: that is a subgroup of a
  // finite group (inverses come from the cyclic orbit of each element).
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i; j < codes.size(); ++j) {
      const std::uint64_t sum = structure.add_codes(n, codes[i], codes[j]);
      if (!std::binary_search(codes.begin(), codes.end(), sum)) return false;
    }
  }
  return true;
}

bool level_is_coset(const LevelStructure& structure, std::size_t n,
                    const std::vector<std::uint64_t>& codes) {
  if (codes.empty()) return true;  // vacuous at the tree level
  const std::uint64_t neg = structure.negate_code(n, codes.front());
  std::vector<std::uint64_t> shifted;
  shifted.reserve(codes.size());
  for (const auto c : codes) shifted.push_back(structure.add_codes(n, c, neg));
  std::sort(shifted.begin(), shifted.end());
  return level_is_subgroup(structure, n, shifted);
}

std::vector<std::uint64_t> translate_level(const LevelStructure& structure, std::size_t n,
                                           const std::vector<std::uint64_t>& codes,
                                           std::uint64_t by) {
  std::vector<std::uint64_t> out;
  out.reserve(codes.size());
  for (const auto c : codes) out.push_back(structure.add_codes(n, c, by));
  std::sort(out.begin(), out.end());
  return out;
}

/// sigma + A == B for sorted code sets A, B of length-n nodes.
bool translates_onto(const LevelStructure& structure, std::size_t n,
                     const std::vector<std::uint64_t>& a,
                     const std::vector<std::uint64_t>& b, std::uint64_t sigma) {
  if (a.size() != b.size()) return false;
  for (const auto c : a) {
    if (!std::binary_search(b.begin(), b.end(), structure.add_codes(n, sigma, c))) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_group_tree(const LevelTree& tree) {
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    if (tree.level(n).empty()) return false;
    if (!level_is_subgroup(tree.structure(), n, tree.level(n))) return false;
  }
  return true;
}

bool is_coset_tree(const LevelTree& tree) {
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    if (!level_is_coset(tree.structure(), n, tree.level(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Derivatives, heights, ranks
// ---------------------------------------------------------------------------

LevelTree derivative(const LevelTree& tree, FrontierMode mode) {
  const std::size_t d = tree.depth();
  std::vector<std::vector<std::uint64_t>> levels(d);
  for (std::size_t n = 1; n + 1 <= d; ++n) {
    const auto& upper = tree.level(n + 1);
    auto& out = levels[n - 1];
    out.reserve(upper.size());
    for (const auto code : upper) {
      const std::uint64_t parent = tree.structure().parent_code(n + 1, code);
      if (out.empty() || out.back() != parent) out.push_back(parent);
    }
  }
  if (mode == FrontierMode::OpenFrontier) {
    levels[d - 1] = tree.level(d);
  }
  return LevelTree(tree.structure(), std::move(levels));
}

std::vector<LevelTree> iterate_derivative(const LevelTree& tree, FrontierMode mode) {
  std::vector<LevelTree> sequence;
  sequence.push_back(tree);
  while (true) {
    LevelTree next = derivative(sequence.back(), mode);
    if (next == sequence.back()) break;
    sequence.push_back(std::move(next));
  }
  return sequence;
}

Ordinal height(const LevelTree& tree, FrontierMode mode) {
  return Ordinal::from_natural(iterate_derivative(tree, mode).size() - 1);
}

RankValue rank_of(const LevelTree& tree, const TreeNode& node, FrontierMode mode) {
  const auto [n, code] = tree.locate(node);
  if (!tree.contains(n, code)) {
    throw NodeNotInTree("node is not in the tree");
  }
  const auto sequence = iterate_derivative(tree, mode);
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
    if (!sequence[k + 1].contains(n, code)) {
      return RankValue::fin(Ordinal::from_natural(k));
    }
  }
  return RankValue::core_marker();
}

// ---------------------------------------------------------------------------
// Gamma, translation, subtrees
// ---------------------------------------------------------------------------

LevelTree gamma(const LevelTree& tree) {
  if (!is_coset_tree(tree)) {
    throw NotCosetTree("gamma requires a coset tree");
  }
  std::vector<std::vector<std::uint64_t>> levels(tree.depth());
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    const auto& codes = tree.level(n);
    if (codes.empty()) {
      levels[n - 1] = {0};
    } else {
      const std::uint64_t neg = tree.structure().negate_code(n, codes.front());
      levels[n - 1] = translate_level(tree.structure(), n, codes, neg);
    }
  }
  return LevelTree(tree.structure(), std::move(levels));
}

LevelTree translate(const LevelTree& tree, const TreeNode& x) {
  const std::size_t d = tree.depth();
  if (x.residues.size() != tree.structure().coords(d)) {
    throw ShapeMismatch("translation element must have full depth");
  }
  std::vector<std::vector<std::uint64_t>> levels(d);
  for (std::size_t n = 1; n <= d; ++n) {
    const std::span<const std::uint64_t> prefix(x.residues.data(),
                                                tree.structure().coords(n));
    const std::uint64_t shift = tree.structure().encode(n, prefix);
    levels[n - 1] = translate_level(tree.structure(), n, tree.level(n), shift);
  }
  return LevelTree(tree.structure(), std::move(levels));
}

LevelTree subtree_at(const LevelTree& tree, const TreeNode& node) {
  const auto [length, code] = tree.locate(node);
  if (!tree.contains(length, code)) {
    throw NodeNotInTree("node is not in the tree");
  }
  std::vector<std::vector<std::uint64_t>> levels(tree.depth());
  // Prefixes of the node form a chain; extensions occupy a contiguous code
  // interval at every deeper level.
  std::uint64_t ancestor = code;
  for (std::size_t n = length; n >= 1; --n) {
    levels[n - 1] = {ancestor};
    if (n > 1) ancestor = tree.structure().parent_code(n, ancestor);
  }
  std::uint64_t block = 1;
  for (std::size_t n = length + 1; n <= tree.depth(); ++n) {
    block *= tree.structure().level_order(n - 1);
    const auto& codes = tree.level(n);
    const auto lo = std::lower_bound(codes.begin(), codes.end(), code * block);
    const auto hi = std::lower_bound(codes.begin(), codes.end(), (code + 1) * block);
    levels[n - 1].assign(lo, hi);
  }
  return LevelTree(tree.structure(), std::move(levels));
}

// ---------------------------------------------------------------------------
// Translator trees
// ---------------------------------------------------------------------------

LevelTree phi(const LevelTree& s, const LevelTree& s2, const LevelTree& ambient) {
  if (s.structure() != s2.structure() || s.structure() != ambient.structure()) {
    throw StructureMismatch("phi requires trees over one structure");
  }
  if (!is_group_tree(ambient)) {
    throw NotGroupTree("phi requires a group tree as ambient");
  }
  const auto& structure = s.structure();
  std::vector<std::vector<std::uint64_t>> levels(s.depth());
  for (std::size_t n = 1; n <= s.depth(); ++n) {
    const auto& candidates = ambient.level(n);
    auto& out = levels[n - 1];
    for (const auto sigma : candidates) {
      if (n > 1) {
        const std::uint64_t parent = structure.parent_code(n, sigma);
        const auto& prev = levels[n - 2];
        if (!std::binary_search(prev.begin(), prev.end(), parent)) continue;
      }
      if (translates_onto(structure, n, s.level(n), s2.level(n), sigma)) {
        out.push_back(sigma);
      }
    }
  }
  return LevelTree(structure, std::move(levels));
}

LevelTree phi(const LevelTree& s, const LevelTree& s2) {
  return phi(s, s2, full_tree(s.structure()));
}

LevelTree psi(std::span<const std::pair<LevelTree, LevelTree>> pairs,
              const LevelTree& ambient) {
  if (pairs.empty()) return ambient;
  LevelTree result = phi(pairs.front().first, pairs.front().second, ambient);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const LevelTree next = phi(pairs[i].first, pairs[i].second, ambient);
    std::vector<std::vector<std::uint64_t>> levels(ambient.depth());
    for (std::size_t n = 1; n <= ambient.depth(); ++n) {
      std::set_intersection(result.level(n).begin(), result.level(n).end(),
                            next.level(n).begin(), next.level(n).end(),
                            std::back_inserter(levels[n - 1]));
    }
    result = LevelTree(ambient.structure(), std::move(levels));
  }
  return result;
}

OrbitDecision orbit_equivalent(const LevelTree& s, const LevelTree& s2,
                               const LevelTree& ambient) {
  const LevelTree translators = phi(s, s2, ambient);
  const std::size_t d = ambient.depth();
  OrbitDecision decision;
  if (!translators.level(d).empty()) {
    decision.equivalent_at_depth = true;
    decision.translator =
        TreeNode{translators.structure().decode(d, translators.level(d).front())};
  }
  return decision;
}

}  // namespace cosettree
