#ifndef COSETTREE_TREES_HPP
#define COSETTREE_TREES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cosettree/abelian.hpp"
#include "cosettree/ordinal.hpp"

namespace cosettree {

inline constexpr std::uint64_t kDefaultNodeCap = 500000;
inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t(1) << 32;

/// Finite sequence of finite abelian levels H_0, ..., H_{d-1} together with
/// the derived products H^n = H_0 x ... x H_{n-1}. Nodes of length n are
/// identified with codes in [0, |H^n|): the mixed-radix value of the node's
/// flattened residue tuple, most significant coordinate first, so code order
/// is exactly lexicographic order on residue tuples.
class LevelStructure {
 public:
  explicit LevelStructure(std::vector<FiniteAbelian> levels,
                          std::uint64_t order_cap = kDefaultOrderCap);

  std::size_t depth() const { return levels_.size(); }
  const std::vector<FiniteAbelian>& levels() const { return levels_; }
  const FiniteAbelian& level_group(std::size_t i) const { return levels_.at(i); }

  /// Number of flattened coordinates of a length-n node, 0 <= n <= depth.
  std::size_t coords(std::size_t n) const { return coord_offset_.at(n); }
  /// |H^n| for 0 <= n <= depth (|H^0| = 1).
  std::uint64_t product_order(std::size_t n) const { return product_order_.at(n); }
  /// |H_i| for the single level i.
  std::uint64_t level_order(std::size_t i) const { return level_order_.at(i); }

  /// Length of a node with this many flattened residues; throws ShapeMismatch
  /// when no level boundary matches.
  std::size_t node_length(std::size_t residue_count) const;

  std::uint64_t encode(std::size_t n, std::span<const std::uint64_t> residues) const;
  std::vector<std::uint64_t> decode(std::size_t n, std::uint64_t code) const;
  /// Code of the length-(n-1) restriction of a length-n node, n >= 2.
  std::uint64_t parent_code(std::size_t n, std::uint64_t code) const;
  std::uint64_t add_codes(std::size_t n, std::uint64_t a, std::uint64_t b) const;
  std::uint64_t negate_code(std::size_t n, std::uint64_t a) const;

  bool operator==(const LevelStructure&) const = default;

 private:
  std::vector<FiniteAbelian> levels_;
  std::vector<std::uint64_t> flat_orders_;
  std::vector<std::size_t> coord_offset_;    // size depth+1
  std::vector<std::uint64_t> level_order_;   // size depth
  std::vector<std::uint64_t> product_order_; // size depth+1
  // place_[n][j]: weight of coordinate j in a length-(n+1) code
  std::vector<std::vector<std::uint64_t>> place_;
};

/// A node of some length n >= 1: the flattened residue tuple of its
/// coordinates across levels 0..n-1.
struct TreeNode {
  std::vector<std::uint64_t> residues;
  bool operator==(const TreeNode&) const = default;
};

/// Semantics of the truncation depth. ClosedWorld: nothing exists beyond
/// depth d, so depth-d nodes have no extensions and ranks are exact for
/// trees that genuinely end within the window. OpenFrontier: depth-d nodes
/// are presumed extendible, giving a lower approximation for truncations of
/// infinite trees (frontier branches behave as members of the stable core).
enum class FrontierMode { ClosedWorld, OpenFrontier };

/// Prefix-closed tree over a LevelStructure: one sorted code set per level
/// 1..d. Construction validates bounds, ordering, and prefix closure.
class LevelTree {
 public:
  LevelTree(LevelStructure structure, std::vector<std::vector<std::uint64_t>> level_codes);
  static LevelTree empty(LevelStructure structure);

  const LevelStructure& structure() const { return structure_; }
  std::size_t depth() const { return structure_.depth(); }
  /// Sorted codes of the length-n nodes, 1 <= n <= depth.
  const std::vector<std::uint64_t>& level(std::size_t n) const;
  bool level_empty(std::size_t n) const { return level(n).empty(); }
  bool contains(std::size_t n, std::uint64_t code) const;
  std::size_t node_count() const;

  /// (length, code) of the node; throws ShapeMismatch on bad residues and
  /// reports membership via the bool.
  std::pair<std::size_t, std::uint64_t> locate(const TreeNode& node) const;

  bool operator==(const LevelTree&) const = default;

 private:
  LevelStructure structure_;
  std::vector<std::vector<std::uint64_t>> levels_;
};

/// Rank of a node under iterated derivatives: either a finite stage, or
/// membership in the stabilized core D^inf.
struct RankValue {
  bool core = false;
  Ordinal rank;  // meaningful when !core

  static RankValue fin(Ordinal r) { return RankValue{false, std::move(r)}; }
  static RankValue core_marker() { return RankValue{true, Ordinal()}; }
  bool operator==(const RankValue&) const = default;
};

/// All nodes at every level up to the structure's depth.
LevelTree full_tree(const LevelStructure& structure, std::uint64_t node_cap = kDefaultNodeCap);

/// Every level is nonempty and a subgroup of H^n.
bool is_group_tree(const LevelTree& tree);
/// Every nonempty level satisfies the three-term condition a - b + c.
bool is_coset_tree(const LevelTree& tree);

/// One derivative step: a node survives iff it has a proper extension, with
/// depth-d nodes removed (ClosedWorld) or retained (OpenFrontier). Computed
/// levelwise: D(S) at length n < d is the projection of S at length n+1.
LevelTree derivative(const LevelTree& tree, FrontierMode mode);

/// D^0, D^1, ..., up to and including the first fixpoint.
std::vector<LevelTree> iterate_derivative(const LevelTree& tree, FrontierMode mode);

/// Number of strict derivative steps until stabilization.
Ordinal height(const LevelTree& tree, FrontierMode mode);

/// Stage at which the node disappears, or the core marker if it never does.
/// Throws NodeNotInTree.
RankValue rank_of(const LevelTree& tree, const TreeNode& node, FrontierMode mode);

/// Canonical group tree of a coset tree: each nonempty level is translated
/// by the negation of its least node; empty levels become the zero singleton.
/// Throws NotCosetTree.
LevelTree gamma(const LevelTree& tree);

/// The group action: adds x restricted to length n to every length-n node.
/// x must be a full-depth node of the structure.
LevelTree translate(const LevelTree& tree, const TreeNode& x);

/// Nodes comparable with the given node (prefixes and extensions).
/// Throws NodeNotInTree.
LevelTree subtree_at(const LevelTree& tree, const TreeNode& node);

/// Coset tree of partial translators carrying s to s2 inside the ambient
/// group tree: sigma survives at length m iff its proper prefixes survive
/// and sigma + (s at length m) equals s2 at length m.
LevelTree phi(const LevelTree& s, const LevelTree& s2, const LevelTree& ambient);
/// Same with the full tree over s's structure as ambient.
LevelTree phi(const LevelTree& s, const LevelTree& s2);

/// Levelwise intersection of the translator trees of all pairs; the empty
/// family yields the ambient tree.
LevelTree psi(std::span<const std::pair<LevelTree, LevelTree>> pairs,
              const LevelTree& ambient);

struct OrbitDecision {
  bool equivalent_at_depth = false;
  std::optional<TreeNode> translator;  // canonical least, when equivalent
};

/// Whether some full-depth translator carries s to s2, i.e. whether the
/// translator tree reaches depth d.
OrbitDecision orbit_equivalent(const LevelTree& s, const LevelTree& s2,
                               const LevelTree& ambient);

}  // namespace cosettree

#endif  // COSETTREE_TREES_HPP
