#include "cosettree/ordinal.hpp"

#include <cctype>
#include <stdexcept>

#include "cosettree/errors.hpp"

namespace cosettree {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return r;
}

}  // namespace

Ordinal Ordinal::from_natural(std::uint64_t n) {
  Ordinal o;
  if (n > 0) {
    o.terms_.push_back({0, n});
  }
  return o;
}

Ordinal Ordinal::omega() { return omega_times(1); }

Ordinal Ordinal::omega_times(std::uint64_t c) {
  Ordinal o;
  if (c > 0) {
    o.terms_.push_back({1, c});
  }
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms, std::uint32_t exponent_cap) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw std::invalid_argument("CNF coefficient must be >= 1");
    }
    if (terms[i].exponent > exponent_cap) {
      throw CapExceeded("CNF exponent " + std::to_string(terms[i].exponent) +
                        " exceeds cap " + std::to_string(exponent_cap));
    }
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent) {
      throw std::invalid_argument("CNF exponents must be strictly decreasing");
    }
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || terms_.front().exponent == 0;
}

std::uint64_t Ordinal::natural_value() const {
  if (!is_finite()) {
    throw std::logic_error("natural_value() on an infinite ordinal");
  }
  return terms_.empty() ? 0 : terms_.front().coefficient;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  Ordinal out;
  const std::uint32_t lead = b.terms_.front().exponent;
  // Keep the part of a strictly above b's leading exponent; a term with the
  // same exponent merges coefficients; everything smaller is absorbed.
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) {
      out.terms_.push_back(t);
    } else if (t.exponent == lead) {
      out.terms_.push_back({lead, checked_add(t.coefficient, b.terms_.front().coefficient)});
    } else {
      break;
    }
  }
  if (out.terms_.empty() || out.terms_.back().exponent > lead) {
    out.terms_.push_back(b.terms_.front());
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
  return out;
}

Ordinal Ordinal::times_natural(std::uint64_t n) const {
  if (n == 0 || is_zero()) return Ordinal();
  // a*n in CNF: the leading coefficient scales, the tail survives once.
  Ordinal out = *this;
  out.terms_.front().coefficient = checked_mul(out.terms_.front().coefficient, n);
  return out;
}

Ordinal Ordinal::successor() const { return *this + from_natural(1); }

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  const auto& a = terms_;
  const auto& b = other.terms_;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].exponent != b[i].exponent) {
      return a[i].exponent <=> b[i].exponent;
    }
    if (a[i].coefficient != b[i].coefficient) {
      return a[i].coefficient <=> b[i].coefficient;
    }
  }
  return a.size() <=> b.size();
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += "+";
    const auto& t = terms_[i];
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
    } else {
      out += "w";
      if (t.exponent >= 2) {
        out += "^" + std::to_string(t.exponent);
      }
      if (t.coefficient >= 2) {
        out += "*" + std::to_string(t.coefficient);
      }
    }
  }
  return out;
}

namespace {

struct OrdinalScanner {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("ordinal:" + std::to_string(pos + 1), message);
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  std::uint64_t number() {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected a number");
    }
    std::uint64_t value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
      if (value > (UINT64_MAX - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos;
    }
    return value;
  }

  Ordinal::Term term() {
    if (eof()) fail("expected a term");
    if (peek() == 'w') {
      ++pos;
      std::uint32_t exponent = 1;
      if (!eof() && peek() == '^') {
        ++pos;
        const std::uint64_t e = number();
        if (e > UINT32_MAX) fail("exponent too large");
        exponent = static_cast<std::uint32_t>(e);
        if (exponent < 2) fail("w^e requires e >= 2 in canonical text");
      }
      std::uint64_t coefficient = 1;
      if (!eof() && peek() == '*') {
        ++pos;
        coefficient = number();
        if (coefficient < 2) fail("w*c requires c >= 2 in canonical text");
      }
      return {exponent, coefficient};
    }
    return {0, number()};
  }
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text, std::uint32_t exponent_cap) {
  OrdinalScanner scanner{text};
  if (text == "0") return Ordinal();
  std::vector<Term> terms;
  terms.push_back(scanner.term());
  while (!scanner.eof()) {
    if (scanner.peek() != '+') scanner.fail("expected '+'");
    ++scanner.pos;
    terms.push_back(scanner.term());
  }
  if (!terms.empty() && terms.back().coefficient == 0) {
    scanner.fail("trailing zero term");
  }
  try {
    return from_terms(std::move(terms), exponent_cap);
  } catch (const std::invalid_argument& e) {
    throw ParseError("ordinal:1", e.what());
  }
}

}  // namespace cosettree
