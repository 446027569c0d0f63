#ifndef COSETTREE_CLASSIFY_HPP
#define COSETTREE_CLASSIFY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cosettree/abelian.hpp"
#include "cosettree/ordinal.hpp"

namespace cosettree {

/// How the infinite part of a sequence specification continues.
struct TailRule {
  enum class Kind {
    PeriodicCycle,   // repeat a finite cycle of expressions forever
    AllQuasicyclic,  // entry j is Zq(p_j) over the fixed prime enumeration
    HInfinityTail    // entry j is the universal-product factor H_{offset+j}
  };

  Kind kind = Kind::PeriodicCycle;
  std::vector<GroupExpr> cycle;  // PeriodicCycle only, nonempty
  std::uint64_t offset = 0;      // HInfinityTail only

  static TailRule periodic(std::vector<GroupExpr> cycle);
  static TailRule all_quasicyclic();
  static TailRule h_infinity_tail(std::uint64_t offset);

  bool operator==(const TailRule&) const = default;
};

enum class SeqRole { ProductFactors, FiltrationQuotients };

/// Eventually-periodic (or builtin-family) sequence of countable abelian
/// groups, read either as product factors H_n or as filtration quotients
/// G_k/G_{k+1}.
struct SeqSpec {
  std::vector<GroupExpr> prefix;
  TailRule tail;
  SeqRole role = SeqRole::ProductFactors;

  /// Entry at any index, prefix first, then the tail's closed form.
  GroupExpr entry(std::uint64_t index) const;

  bool operator==(const SeqSpec&) const = default;
};

/// The linear chain of complexity bounds the classifier can emit.
enum class ComplexityClass {
  E0,
  E0Omega,
  E0OmegaPlus1,
  E0OmegaPlus2,
  E0OmegaPlus3,
};

std::string to_string(ComplexityClass c);

enum class TamenessTier { AllPCompact, AllTorsion, TameGeneral, NotTame };

std::string to_string(TamenessTier t);

struct Obstruction {
  enum class Kind { ZOmega, ZpFinSupOmega };
  Kind kind;
  std::uint64_t p = 0;  // ZpFinSupOmega only
  bool operator==(const Obstruction&) const = default;
};

struct TamenessReport {
  bool tame = false;
  bool nontorsion_tail = false;
  PrimeSet bad_tail_primes;
  std::vector<Obstruction> obstructions;
  TamenessTier tier = TamenessTier::NotTame;
  bool locally_compact = false;
  std::optional<Ordinal> group_tree_bound;
  std::optional<Ordinal> coset_tree_bound;  // strict bound
  std::optional<ComplexityClass> complexity_bound;
  std::vector<std::string> notes;
};

/// Tameness of the product of the given factors, with obstructions and,
/// when tame, height and complexity bounds.
TamenessReport classify_product(const SeqSpec& spec);

/// Same decision logic read on filtration quotients; additionally flags the
/// locally compact case, where the complexity bound drops to E0.
TamenessReport classify_filtration(const SeqSpec& spec);

/// Dispatch on the spec's role.
TamenessReport classify(const SeqSpec& spec);

/// Replaces consecutive blocks of entries by their sums. Cuts are block
/// boundaries starting at 0; a final block reaching into a periodic tail
/// must consist of whole cycles and becomes the new one-entry cycle.
/// Throws BadCuts.
SeqSpec regroup(const SeqSpec& spec, std::span<const std::uint64_t> cuts);

/// Merges the irregular head (the whole prefix plus any leading non-torsion
/// tail entries) into a single sum at index 0, after which every entry from
/// index 1 on is torsion. No-op when there is nothing to merge. Throws
/// NotTame when the tail has non-torsion entries forever.
SeqSpec rearrange(const SeqSpec& spec);

struct TierBounds {
  Ordinal group_tree_bound;
  Ordinal coset_tree_bound;  // strict
  ComplexityClass complexity;
};

/// The height/complexity bound table per tier. Throws NotTameTier for
/// TamenessTier::NotTame.
TierBounds bounds_for_tier(TamenessTier tier, SeqRole role);

/// Symbolic complexity-class expressions over E0, countable powers, the
/// jump, and products with id(omega).
class ComplexityExpr {
 public:
  static ComplexityExpr e0();
  static ComplexityExpr power_omega(ComplexityExpr inner);
  static ComplexityExpr plus(ComplexityExpr inner);
  static ComplexityExpr times_id_omega(ComplexityExpr inner);

  enum class Op { E0, PowerOmega, Plus, TimesIdOmega };
  Op op() const { return op_; }
  const ComplexityExpr& inner() const { return *inner_; }

 private:
  explicit ComplexityExpr(Op op) : op_(op) {}
  Op op_;
  std::shared_ptr<const ComplexityExpr> inner_;
};

/// Normal form in the ComplexityClass chain, using the rewrites
/// (E^w)^w -> E^w, (E^+)^w -> E^+ and id(w) x E -> E for E at least E0^w.
/// Throws UnsupportedExpression when the expression leaves the chain.
ComplexityClass complexity_simplify(const ComplexityExpr& expr);

}  // namespace cosettree

#endif  // COSETTREE_CLASSIFY_HPP
