#include "cosettree/witness.hpp"

#include <algorithm>

#include "cosettree/primes.hpp"

namespace cosettree {

WitnessSpec WitnessSpec::with_default_profile(std::uint64_t p, std::uint64_t dim,
                                              std::uint64_t depth) {
  WitnessSpec spec{p, dim, depth, {}};
  for (std::uint64_t j = 1; j <= depth; ++j) {
    std::vector<std::uint64_t> row;
    for (std::uint64_t n = j; n <= depth; ++n) {
      const std::uint64_t drop = n - j;
      row.push_back(drop >= dim ? 0 : dim - drop);
    }
    spec.profile.push_back(std::move(row));
  }
  return spec;
}

std::uint64_t WitnessSpec::f(std::uint64_t j, std::uint64_t n) const {
  return profile.at(j - 1).at(n - j);
}

void WitnessSpec::validate() const {
  if (!is_prime(p)) throw MalformedSpec("witness parameter p must be prime");
  if (dim == 0) throw MalformedSpec("witness dimension must be >= 1");
  if (depth == 0) throw MalformedSpec("witness depth must be >= 1");
  if (profile.size() != depth) {
    throw MalformedSpec("profile needs one row per level 1..depth");
  }
  for (std::uint64_t j = 1; j <= depth; ++j) {
    const auto& row = profile[j - 1];
    if (row.size() != depth - j + 1) {
      throw MalformedSpec("profile row " + std::to_string(j) + " needs entries for levels " +
                          std::to_string(j) + ".." + std::to_string(depth));
    }
    if (row.front() != dim) {
      throw MalformedSpec("profile must have f(j, j) = dim at row " + std::to_string(j));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] > dim) {
        throw MalformedSpec("profile value exceeds dim at row " + std::to_string(j));
      }
      if (i > 0 && row[i] > row[i - 1]) {
        throw MalformedSpec("profile must be nonincreasing along n at row " + std::to_string(j));
      }
    }
  }
}

LevelTree staircase_witness(const WitnessSpec& spec, std::uint64_t node_cap) {
  spec.validate();
  std::vector<FiniteAbelian> levels(
      spec.depth, FiniteAbelian(std::vector<std::uint64_t>(spec.dim, spec.p)));
  LevelStructure structure(std::move(levels));

  // Count before materializing: level n holds p^(sum of profile values).
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n <= spec.depth; ++n) {
    std::uint64_t size = 1;
    for (std::uint64_t j = 1; j <= n; ++j) {
      for (std::uint64_t e = 0; e < spec.f(j, n); ++e) {
        if (__builtin_mul_overflow(size, spec.p, &size)) {
          throw CapExceeded("witness level size overflows");
        }
      }
    }
    if (__builtin_add_overflow(total, size, &total) || total > node_cap) {
      throw CapExceeded("witness would exceed the node cap " + std::to_string(node_cap));
    }
  }

  std::vector<std::vector<std::uint64_t>> level_codes(spec.depth);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t n = 1; n <= spec.depth; ++n) {
    // Free coordinates at level n: the first f(j, n) slots of each block j.
    std::vector<std::size_t> free_slots;
    for (std::uint64_t j = 1; j <= n; ++j) {
      const std::size_t base = (j - 1) * spec.dim;
      for (std::uint64_t i = 0; i < spec.f(j, n); ++i) free_slots.push_back(base + i);
    }
    residues.assign(n * spec.dim, 0);
    auto& codes = level_codes[n - 1];
    while (true) {
      codes.push_back(structure.encode(n, residues));
      std::size_t i = free_slots.size();
      bool rolled_over = true;
      while (i > 0) {
        --i;
        if (++residues[free_slots[i]] < spec.p) {
          rolled_over = false;
          break;
        }
        residues[free_slots[i]] = 0;
      }
      if (rolled_over) break;
    }
    std::sort(codes.begin(), codes.end());
  }
  return LevelTree(std::move(structure), std::move(level_codes));
}

std::vector<std::pair<std::size_t, Ordinal>> rank_profile(const WitnessSpec& spec,
                                                          std::uint64_t node_cap) {
  const LevelTree tree = staircase_witness(spec, node_cap);
  const auto sequence = iterate_derivative(tree, FrontierMode::ClosedWorld);
  std::vector<std::pair<std::size_t, Ordinal>> out;
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    std::size_t max_rank = 0;
    for (const auto code : tree.level(n)) {
      std::size_t k = 0;
      while (k + 1 < sequence.size() && sequence[k + 1].contains(n, code)) ++k;
      max_rank = std::max(max_rank, k);
    }
    out.emplace_back(n, Ordinal::from_natural(max_rank));
  }
  return out;
}

}  // namespace cosettree
