#ifndef COSETTREE_ABELIAN_HPP
#define COSETTREE_ABELIAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosettree/errors.hpp"

namespace cosettree {

// ---------------------------------------------------------------------------
// Symbolic countable abelian groups
// ---------------------------------------------------------------------------

enum class ExprKind {
  Zero,
  Integers,        // Z
  Rationals,       // Q
  Cyclic,          // Z(n), n >= 2
  Quasicyclic,     // Z(p^inf), p prime
  Sum,             // finite direct sum
  FinSupPower,     // base^{<w}: countably many copies, finite support
  AInfinity,       // sum over all p of Z(p^inf)^{<w}, plus Q^{<w}
  QuasicyclicTail  // sum over prime indices i >= k of Z(p_i^inf)^{<w}
};

/// Immutable symbolic expression. Factories normalize: nested sums are
/// flattened, zero parts dropped, a singleton sum collapses to its part,
/// and base^{<w} of the trivial group is trivial. Structural equality on
/// normalized expressions is the equality of the type.
class GroupExpr {
 public:
  GroupExpr() : kind_(ExprKind::Zero) {}

  static GroupExpr zero();
  static GroupExpr integers();
  static GroupExpr rationals();
  static GroupExpr cyclic(std::uint64_t n);       // requires n >= 2
  static GroupExpr quasicyclic(std::uint64_t p);  // requires p prime
  static GroupExpr sum(std::vector<GroupExpr> parts);
  static GroupExpr fin_sup_power(GroupExpr base);
  static GroupExpr a_infinity();
  static GroupExpr quasicyclic_tail(std::uint64_t start_index);

  ExprKind kind() const { return kind_; }
  /// Cyclic modulus, quasicyclic prime, or tail start index, by kind.
  std::uint64_t parameter() const { return param_; }
  const std::vector<GroupExpr>& parts() const { return parts_; }
  const GroupExpr& base() const { return parts_.front(); }

  bool operator==(const GroupExpr& other) const;

  /// Text form: 0, Z, Q, Z(8), Zq(3), sum(...), finsup(...), Ainf, ZqTail(2).
  std::string to_text() const;
  static GroupExpr parse(std::string_view text);

 private:
  ExprKind kind_;
  std::uint64_t param_ = 0;
  std::vector<GroupExpr> parts_;
};

// ---------------------------------------------------------------------------
// Cardinalities and prime sets
// ---------------------------------------------------------------------------

/// Either an exact finite count or countably infinite.
class Cardinal {
 public:
  static Cardinal finite(std::uint64_t n) { return Cardinal(true, n); }
  static Cardinal infinite() { return Cardinal(false, 0); }

  bool is_finite() const { return finite_; }
  std::uint64_t count() const;

  Cardinal operator*(const Cardinal& other) const;
  bool operator==(const Cardinal&) const = default;

  std::string to_string() const;

 private:
  Cardinal(bool finite, std::uint64_t count) : finite_(finite), count_(count) {}
  bool finite_;
  std::uint64_t count_;
};

/// A set of primes that is either finite or "these primes plus every p_i with
/// i >= all_from_index". all_from_index == 0 is the all-primes marker.
struct PrimeSet {
  std::set<std::uint64_t> primes;
  std::optional<std::uint64_t> all_from_index;

  static PrimeSet all() { return PrimeSet{{}, 0}; }

  bool empty() const { return primes.empty() && !all_from_index.has_value(); }
  bool is_all_primes() const { return all_from_index.has_value() && *all_from_index == 0; }
  bool contains(std::uint64_t p) const;
  void unite(const PrimeSet& other);
  bool operator==(const PrimeSet&) const = default;
};

// ---------------------------------------------------------------------------
// Decision procedures
// ---------------------------------------------------------------------------

bool is_torsion(const GroupExpr& g);

/// Exact cardinality of {x : p*x = 0}.
Cardinal order_p_count(const GroupExpr& g, std::uint64_t p);

/// Torsion with finitely many elements of order p.
bool is_p_compact(const GroupExpr& g, std::uint64_t p);

struct BadPrimes {
  bool nontorsion;
  PrimeSet infinite_p_part;
  bool operator==(const BadPrimes&) const = default;
};

/// Both failure modes of p-compactness at once: the torsion flag, and the
/// set of primes whose p-torsion subgroup is infinite.
BadPrimes bad_primes(const GroupExpr& g);

/// Symbolic p-component of a torsion expression; throws NonTorsionInput.
GroupExpr p_component(const GroupExpr& g, std::uint64_t p);

// ---------------------------------------------------------------------------
// Divisible normal forms and embedding certificates
// ---------------------------------------------------------------------------

/// A torsion divisible group written per prime: multiplicity m means
/// Z(p^inf)^m, the fin-sup marker means Z(p^inf)^{<w}. An optional tail
/// marks the fin-sup multiplicity for every prime index >= tail_from_index.
class DivNormalForm {
 public:
  struct Mult {
    bool fin_sup = false;
    std::uint64_t count = 0;  // ignored when fin_sup
    bool operator==(const Mult&) const = default;
    /// Embedding order: Fin(m) <= Fin(M) iff m <= M; anything <= FinSup.
    bool leq(const Mult& other) const;
    std::string to_string() const;
  };

  const std::map<std::uint64_t, Mult>& multiplicities() const { return table_; }
  std::optional<std::uint64_t> tail_from_index() const { return tail_; }

  /// Tail-aware lookup; absent primes have multiplicity 0.
  Mult at(std::uint64_t p) const;

  void add(std::uint64_t p, const Mult& m);
  void add_tail(std::uint64_t start_index);
  void merge(const DivNormalForm& other);

  bool operator==(const DivNormalForm&) const = default;

 private:
  std::map<std::uint64_t, Mult> table_;
  std::optional<std::uint64_t> tail_;
};

/// Smallest-by-construction divisible torsion group containing g.
/// Throws NonTorsionInput when g is not torsion.
DivNormalForm divisible_hull(const GroupExpr& g);

struct PrimeComparison {
  std::uint64_t prime;
  DivNormalForm::Mult left;
  DivNormalForm::Mult right;
  bool ok;
};

/// Result of an embeddability check, with the per-prime evidence.
struct EmbedCertificate {
  bool ok = false;
  /// True when the target contained an AInfinity summand and the check
  /// succeeded by universality alone, with no per-prime comparison.
  bool universal_sink = false;
  std::vector<PrimeComparison> rows;
  std::optional<std::uint64_t> left_tail;
  std::optional<std::uint64_t> right_tail;
  bool tail_ok = true;
};

/// Decides whether the group in divisible normal form embeds into the
/// target expression. The target must be a sum of quasicyclic atoms,
/// fin-sup powers of such, and quasicyclic tails, unless it contains an
/// AInfinity summand (then the answer is unconditionally yes).
/// Throws UnsupportedComparison outside those normal forms.
EmbedCertificate embeds(const DivNormalForm& l, const GroupExpr& k);

/// Same, hulling the left side first; the left expression must be torsion
/// unless the target has an AInfinity summand.
EmbedCertificate embeds(const GroupExpr& l, const GroupExpr& k);

// ---------------------------------------------------------------------------
// Concrete finite abelian groups
// ---------------------------------------------------------------------------

class GroupElement;

/// Direct product of cyclic groups of the given orders (each >= 1).
/// The empty order list is the trivial group.
class FiniteAbelian {
 public:
  FiniteAbelian() = default;
  explicit FiniteAbelian(std::vector<std::uint64_t> orders);

  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t order() const;

  GroupElement zero() const;
  GroupElement element(std::vector<std::uint64_t> residues) const;
  /// All elements in lexicographic residue order.
  std::vector<GroupElement> elements() const;

  bool operator==(const FiniteAbelian&) const = default;

 private:
  std::vector<std::uint64_t> orders_;
};

/// An element of a FiniteAbelian, carrying its shape.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FiniteAbelian shape, std::vector<std::uint64_t> residues);

  const FiniteAbelian& shape() const { return shape_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& other) const;
  GroupElement times(std::uint64_t n) const;
  bool is_zero() const;
  /// Least n >= 1 with n*x = 0.
  std::uint64_t order() const;

  bool operator==(const GroupElement& other) const;
  bool operator<(const GroupElement& other) const;  // lexicographic

 private:
  void check_shape(const GroupElement& other) const;
  FiniteAbelian shape_;
  std::vector<std::uint64_t> residues_;
};

/// Closure under subtraction plus zero membership, checked exhaustively.
bool is_subgroup(std::span<const GroupElement> elements);

/// The three-term coset condition a - b + c, checked exhaustively over all
/// triples. Empty sets are not cosets.
bool is_coset(std::span<const GroupElement> elements);

/// Subgroup generated by the given elements, sorted lexicographically.
/// The empty generating set yields {0} of the given shape.
std::vector<GroupElement> closure(const FiniteAbelian& shape,
                                  std::span<const GroupElement> generators);

inline constexpr std::uint64_t kDefaultConcretizeCap = 200000;

/// Materializes a finite expression as an explicit group, cyclic orders in
/// document order of the normalized expression. Throws InfiniteGroup for
/// non-finite expressions and CapExceeded above the order cap.
FiniteAbelian concretize(const GroupExpr& g,
                         std::uint64_t order_cap = kDefaultConcretizeCap);

}  // namespace cosettree

#endif  // COSETTREE_ABELIAN_HPP
