#ifndef COSETTREE_ORDINAL_HPP
#define COSETTREE_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cosettree {

/// Ordinals below omega^omega in Cantor normal form:
/// sum of w^e_i * c_i with exponents strictly decreasing and coefficients >= 1.
/// The empty term list denotes 0. Values are immutable.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    bool operator==(const Term&) const = default;
  };

  /// Exponents above this are rejected; far more headroom than the
  /// tree-height reports ever need (they stay below w^2).
  static constexpr std::uint32_t kDefaultExponentCap = 10;

  Ordinal() = default;  // zero

  static Ordinal from_natural(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_times(std::uint64_t c);
  /// Validates canonical form; throws CapExceeded / std::invalid_argument.
  static Ordinal from_terms(std::vector<Term> terms,
                            std::uint32_t exponent_cap = kDefaultExponentCap);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// The value as a natural number; only meaningful when is_finite().
  std::uint64_t natural_value() const;

  /// Ordinal addition (non-commutative; left terms below the leading
  /// exponent of the right operand are absorbed).
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);

  /// Right multiple by a natural number: a * n = a + a + ... + a.
  Ordinal times_natural(std::uint64_t n) const;

  Ordinal successor() const;

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const = default;

  /// Text form: "0", "w*3+5", "w^2*2+w+1". Round-trips through parse().
  std::string to_string() const;
  static Ordinal parse(std::string_view text,
                       std::uint32_t exponent_cap = kDefaultExponentCap);

 private:
  std::vector<Term> terms_;
};

}  // namespace cosettree

#endif  // COSETTREE_ORDINAL_HPP
