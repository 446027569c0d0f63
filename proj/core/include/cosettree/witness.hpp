#ifndef COSETTREE_WITNESS_HPP
#define COSETTREE_WITNESS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cosettree/ordinal.hpp"
#include "cosettree/trees.hpp"

namespace cosettree {

/// Parameters of a staircase witness tree. Every level of the structure is
/// Z(p)^dim; the level-n slice of the tree constrains the coordinate born at
/// level j to the span of the first f(j, n) standard basis vectors. The
/// profile must be nonincreasing along n with f(j, j) = dim, so fresh
/// coordinates start unconstrained and lose one dimension per level under
/// the default profile f(j, n) = max(0, dim - (n - j)).
struct WitnessSpec {
  std::uint64_t p = 2;
  std::uint64_t dim = 1;
  std::uint64_t depth = 1;
  /// profile[j-1][n-j] = f(j, n) for 1 <= j <= n <= depth.
  std::vector<std::vector<std::uint64_t>> profile;

  static WitnessSpec with_default_profile(std::uint64_t p, std::uint64_t dim,
                                          std::uint64_t depth);

  std::uint64_t f(std::uint64_t j, std::uint64_t n) const;
  /// Throws MalformedSpec on a bad prime, zero sizes, or a profile outside
  /// the invariants above.
  void validate() const;
};

/// The levelwise-subgroup tree prescribed by the profile; always a group
/// tree. Throws CapExceeded when the node count passes the cap.
LevelTree staircase_witness(const WitnessSpec& spec,
                            std::uint64_t node_cap = kDefaultNodeCap);

/// Maximum finite rank per level under ClosedWorld, as (level, rank) pairs.
std::vector<std::pair<std::size_t, Ordinal>> rank_profile(
    const WitnessSpec& spec, std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace cosettree

#endif  // COSETTREE_WITNESS_HPP
