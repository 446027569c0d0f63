#include "cosettree/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "cosettree/primes.hpp"

namespace cosettree {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error(what);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupExpr
// ---------------------------------------------------------------------------

GroupExpr GroupExpr::zero() { return GroupExpr(); }

GroupExpr GroupExpr::integers() {
  GroupExpr e;
  e.kind_ = ExprKind::Integers;
  return e;
}

GroupExpr GroupExpr::rationals() {
  GroupExpr e;
  e.kind_ = ExprKind::Rationals;
  return e;
}

GroupExpr GroupExpr::cyclic(std::uint64_t n) {
  if (n < 2) {
    throw std::invalid_argument("cyclic modulus must be >= 2");
  }
  GroupExpr e;
  e.kind_ = ExprKind::Cyclic;
  e.param_ = n;
  return e;
}

GroupExpr GroupExpr::quasicyclic(std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("quasicyclic parameter must be prime");
  }
  GroupExpr e;
  e.kind_ = ExprKind::Quasicyclic;
  e.param_ = p;
  return e;
}

GroupExpr GroupExpr::sum(std::vector<GroupExpr> parts) {
  std::vector<GroupExpr> flat;
  for (auto& p : parts) {
    if (p.kind_ == ExprKind::Zero) continue;
    if (p.kind_ == ExprKind::Sum) {
      for (auto& q : p.parts_) flat.push_back(std::move(q));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return zero();
  if (flat.size() == 1) return std::move(flat.front());
  GroupExpr e;
  e.kind_ = ExprKind::Sum;
  e.parts_ = std::move(flat);
  return e;
}

GroupExpr GroupExpr::fin_sup_power(GroupExpr base) {
  if (base.kind_ == ExprKind::Zero) return zero();
  GroupExpr e;
  e.kind_ = ExprKind::FinSupPower;
  e.parts_.push_back(std::move(base));
  return e;
}

GroupExpr GroupExpr::a_infinity() {
  GroupExpr e;
  e.kind_ = ExprKind::AInfinity;
  return e;
}

GroupExpr GroupExpr::quasicyclic_tail(std::uint64_t start_index) {
  GroupExpr e;
  e.kind_ = ExprKind::QuasicyclicTail;
  e.param_ = start_index;
  return e;
}

bool GroupExpr::operator==(const GroupExpr& other) const {
  return kind_ == other.kind_ && param_ == other.param_ && parts_ == other.parts_;
}

std::string GroupExpr::to_text() const {
  switch (kind_) {
    case ExprKind::Zero:
      return "0";
    case ExprKind::Integers:
      return "Z";
    case ExprKind::Rationals:
      return "Q";
    case ExprKind::Cyclic:
      return "Z(" + std::to_string(param_) + ")";
    case ExprKind::Quasicyclic:
      return "Zq(" + std::to_string(param_) + ")";
    case ExprKind::Sum: {
      std::string out = "sum(";
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) out += ",";
        out += parts_[i].to_text();
      }
      return out + ")";
    }
    case ExprKind::FinSupPower:
      return "finsup(" + parts_.front().to_text() + ")";
    case ExprKind::AInfinity:
      return "Ainf";
    case ExprKind::QuasicyclicTail:
      return "ZqTail(" + std::to_string(param_) + ")";
  }
  throw std::logic_error("unreachable expression kind");
}

namespace {

struct ExprScanner {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("expr:" + std::to_string(pos + 1), message);
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::uint64_t number() {
    skip_space();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      fail("expected a number");
    }
    std::uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
      if (value > (UINT64_MAX - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos;
    }
    return value;
  }

  std::string word() {
    skip_space();
    std::string w;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])))) {
      w += text[pos];
      ++pos;
    }
    return w;
  }

  GroupExpr expr() {
    skip_space();
    if (pos >= text.size()) fail("expected an expression");
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (number() != 0) fail("only 0 denotes the trivial group");
      return GroupExpr::zero();
    }
    const std::size_t word_pos = pos;
    const std::string w = word();
    auto guarded = [&](auto&& make) {
      try {
        return make();
      } catch (const std::invalid_argument& e) {
        pos = word_pos;
        fail(e.what());
      }
    };
    if (w == "Z") {
      if (eat('(')) {
        const std::uint64_t n = number();
        expect(')');
        return guarded([&] { return GroupExpr::cyclic(n); });
      }
      return GroupExpr::integers();
    }
    if (w == "Q") return GroupExpr::rationals();
    if (w == "Zq") {
      expect('(');
      const std::uint64_t p = number();
      expect(')');
      return guarded([&] { return GroupExpr::quasicyclic(p); });
    }
    if (w == "ZqTail") {
      expect('(');
      const std::uint64_t k = number();
      expect(')');
      return GroupExpr::quasicyclic_tail(k);
    }
    if (w == "Ainf") return GroupExpr::a_infinity();
    if (w == "sum") {
      expect('(');
      std::vector<GroupExpr> parts;
      if (!eat(')')) {
        parts.push_back(expr());
        while (eat(',')) parts.push_back(expr());
        expect(')');
      }
      return GroupExpr::sum(std::move(parts));
    }
    if (w == "finsup") {
      expect('(');
      GroupExpr base = expr();
      expect(')');
      return GroupExpr::fin_sup_power(std::move(base));
    }
    pos = word_pos;
    fail("unknown expression '" + w + "'");
  }
};

}  // namespace

GroupExpr GroupExpr::parse(std::string_view text) {
  ExprScanner scanner{text};
  GroupExpr e = scanner.expr();
  scanner.skip_space();
  if (scanner.pos != text.size()) scanner.fail("trailing input");
  return e;
}

// ---------------------------------------------------------------------------
// Cardinal / PrimeSet
// ---------------------------------------------------------------------------

std::uint64_t Cardinal::count() const {
  if (!finite_) {
    throw std::logic_error("count() on an infinite cardinal");
  }
  return count_;
}

Cardinal Cardinal::operator*(const Cardinal& other) const {
  if (!finite_ || !other.finite_) return infinite();
  return finite(checked_mul(count_, other.count_, "cardinal product overflow"));
}

std::string Cardinal::to_string() const {
  return finite_ ? std::to_string(count_) : "countably_infinite";
}

bool PrimeSet::contains(std::uint64_t p) const {
  if (primes.count(p) > 0) return true;
  if (all_from_index.has_value()) {
    const auto idx = prime_index(p);
    return idx.has_value() && *idx >= *all_from_index;
  }
  return false;
}

void PrimeSet::unite(const PrimeSet& other) {
  primes.insert(other.primes.begin(), other.primes.end());
  if (other.all_from_index.has_value()) {
    all_from_index = all_from_index.has_value()
                         ? std::min(*all_from_index, *other.all_from_index)
                         : *other.all_from_index;
  }
}

// ---------------------------------------------------------------------------
// Decision procedures
// ---------------------------------------------------------------------------

bool is_torsion(const GroupExpr& g) {
  switch (g.kind()) {
    case ExprKind::Zero:
    case ExprKind::Cyclic:
    case ExprKind::Quasicyclic:
    case ExprKind::QuasicyclicTail:
      return true;
    case ExprKind::Integers:
    case ExprKind::Rationals:
    case ExprKind::AInfinity:
      return false;
    case ExprKind::Sum:
      return std::all_of(g.parts().begin(), g.parts().end(),
                         [](const GroupExpr& p) { return is_torsion(p); });
    case ExprKind::FinSupPower:
      return is_torsion(g.base());
  }
  throw std::logic_error("unreachable expression kind");
}

Cardinal order_p_count(const GroupExpr& g, std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("order_p_count requires a prime");
  }
  switch (g.kind()) {
    case ExprKind::Zero:
    case ExprKind::Integers:
    case ExprKind::Rationals:
      return Cardinal::finite(1);
    case ExprKind::Cyclic:
      return Cardinal::finite(g.parameter() % p == 0 ? p : 1);
    case ExprKind::Quasicyclic:
      return Cardinal::finite(g.parameter() == p ? p : 1);
    case ExprKind::Sum: {
      Cardinal c = Cardinal::finite(1);
      for (const auto& part : g.parts()) c = c * order_p_count(part, p);
      return c;
    }
    case ExprKind::FinSupPower: {
      const Cardinal base = order_p_count(g.base(), p);
      if (base == Cardinal::finite(1)) return base;
      return Cardinal::infinite();
    }
    case ExprKind::AInfinity:
      return Cardinal::infinite();
    case ExprKind::QuasicyclicTail: {
      const auto idx = prime_index(p);
      if (idx.has_value() && *idx >= g.parameter()) return Cardinal::infinite();
      return Cardinal::finite(1);
    }
  }
  throw std::logic_error("unreachable expression kind");
}

bool is_p_compact(const GroupExpr& g, std::uint64_t p) {
  return is_torsion(g) && order_p_count(g, p).is_finite();
}

namespace {

/// Primes q with a nontrivial q-torsion part anywhere in the expression.
PrimeSet torsion_primes(const GroupExpr& g) {
  PrimeSet out;
  switch (g.kind()) {
    case ExprKind::Zero:
    case ExprKind::Integers:
    case ExprKind::Rationals:
      return out;
    case ExprKind::Cyclic:
      for (const auto& [q, e] : factorize(g.parameter())) {
        (void)e;
        out.primes.insert(q);
      }
      return out;
    case ExprKind::Quasicyclic:
      out.primes.insert(g.parameter());
      return out;
    case ExprKind::Sum:
      for (const auto& part : g.parts()) out.unite(torsion_primes(part));
      return out;
    case ExprKind::FinSupPower:
      return torsion_primes(g.base());
    case ExprKind::AInfinity:
      return PrimeSet::all();
    case ExprKind::QuasicyclicTail:
      out.all_from_index = g.parameter();
      return out;
  }
  throw std::logic_error("unreachable expression kind");
}

PrimeSet infinite_p_primes(const GroupExpr& g) {
  PrimeSet out;
  switch (g.kind()) {
    case ExprKind::Zero:
    case ExprKind::Integers:
    case ExprKind::Rationals:
    case ExprKind::Cyclic:
    case ExprKind::Quasicyclic:
      return out;
    case ExprKind::Sum:
      for (const auto& part : g.parts()) out.unite(infinite_p_primes(part));
      return out;
    case ExprKind::FinSupPower:
      // Every prime with any torsion in the base becomes infinite under ^{<w}.
      return torsion_primes(g.base());
    case ExprKind::AInfinity:
      return PrimeSet::all();
    case ExprKind::QuasicyclicTail:
      out.all_from_index = g.parameter();
      return out;
  }
  throw std::logic_error("unreachable expression kind");
}

}  // namespace

BadPrimes bad_primes(const GroupExpr& g) {
  return BadPrimes{!is_torsion(g), infinite_p_primes(g)};
}

GroupExpr p_component(const GroupExpr& g, std::uint64_t p) {
  if (!is_torsion(g)) {
    throw NonTorsionInput("p_component requires a torsion expression: " + g.to_text());
  }
  switch (g.kind()) {
    case ExprKind::Zero:
      return GroupExpr::zero();
    case ExprKind::Cyclic: {
      std::uint64_t q = 1;
      std::uint64_t n = g.parameter();
      while (n % p == 0) {
        n /= p;
        q = checked_mul(q, p, "p-component modulus overflow");
      }
      return q == 1 ? GroupExpr::zero() : GroupExpr::cyclic(q);
    }
    case ExprKind::Quasicyclic:
      return g.parameter() == p ? g : GroupExpr::zero();
    case ExprKind::Sum: {
      std::vector<GroupExpr> parts;
      parts.reserve(g.parts().size());
      for (const auto& part : g.parts()) parts.push_back(p_component(part, p));
      return GroupExpr::sum(std::move(parts));
    }
    case ExprKind::FinSupPower:
      return GroupExpr::fin_sup_power(p_component(g.base(), p));
    case ExprKind::QuasicyclicTail: {
      const auto idx = prime_index(p);
      if (idx.has_value() && *idx >= g.parameter()) {
        return GroupExpr::fin_sup_power(GroupExpr::quasicyclic(p));
      }
      return GroupExpr::zero();
    }
    case ExprKind::Integers:
    case ExprKind::Rationals:
    case ExprKind::AInfinity:
      throw std::logic_error("torsion check should have rejected this kind");
  }
  throw std::logic_error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// DivNormalForm
// ---------------------------------------------------------------------------

bool DivNormalForm::Mult::leq(const Mult& other) const {
  if (other.fin_sup) return true;
  if (fin_sup) return false;
  return count <= other.count;
}

std::string DivNormalForm::Mult::to_string() const {
  return fin_sup ? "finsup" : std::to_string(count);
}

DivNormalForm::Mult DivNormalForm::at(std::uint64_t p) const {
  if (tail_.has_value()) {
    const auto idx = prime_index(p);
    if (idx.has_value() && *idx >= *tail_) return Mult{true, 0};
  }
  const auto it = table_.find(p);
  return it == table_.end() ? Mult{false, 0} : it->second;
}

void DivNormalForm::add(std::uint64_t p, const Mult& m) {
  if (!m.fin_sup && m.count == 0) return;
  if (tail_.has_value()) {
    const auto idx = prime_index(p);
    if (idx.has_value() && *idx >= *tail_) return;  // already at fin-sup
  }
  auto& slot = table_[p];
  if (slot.fin_sup || m.fin_sup) {
    slot = Mult{true, 0};
  } else {
    slot.count += m.count;
  }
}

void DivNormalForm::add_tail(std::uint64_t start_index) {
  tail_ = tail_.has_value() ? std::min(*tail_, start_index) : start_index;
  // Explicit entries covered by the tail stay in the table; at() prefers
  // the tail, so they are harmless, but dropping them keeps equality sane.
  for (auto it = table_.begin(); it != table_.end();) {
    const auto idx = prime_index(it->first);
    if (idx.has_value() && *idx >= *tail_) {
      it = table_.erase(it);
    } else {
      ++it;
    }
  }
}

void DivNormalForm::merge(const DivNormalForm& other) {
  for (const auto& [p, m] : other.table_) add(p, m);
  if (other.tail_.has_value()) add_tail(*other.tail_);
}

namespace {

void hull_into(const GroupExpr& g, bool under_fin_sup, DivNormalForm& out) {
  switch (g.kind()) {
    case ExprKind::Zero:
      return;
    case ExprKind::Cyclic:
      for (const auto& [p, e] : factorize(g.parameter())) {
        (void)e;
        out.add(p, {under_fin_sup, 1});
      }
      return;
    case ExprKind::Quasicyclic:
      out.add(g.parameter(), {under_fin_sup, 1});
      return;
    case ExprKind::Sum:
      for (const auto& part : g.parts()) hull_into(part, under_fin_sup, out);
      return;
    case ExprKind::FinSupPower:
      hull_into(g.base(), true, out);
      return;
    case ExprKind::QuasicyclicTail:
      out.add_tail(g.parameter());
      return;
    case ExprKind::Integers:
    case ExprKind::Rationals:
    case ExprKind::AInfinity:
      throw std::logic_error("torsion check should have rejected this kind");
  }
}

}  // namespace

DivNormalForm divisible_hull(const GroupExpr& g) {
  if (!is_torsion(g)) {
    throw NonTorsionInput("divisible_hull requires a torsion expression: " + g.to_text());
  }
  DivNormalForm out;
  hull_into(g, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// embeds
// ---------------------------------------------------------------------------

namespace {

bool contains_a_infinity(const GroupExpr& g) {
  switch (g.kind()) {
    case ExprKind::AInfinity:
      return true;
    case ExprKind::Sum:
      return std::any_of(g.parts().begin(), g.parts().end(), contains_a_infinity);
    case ExprKind::FinSupPower:
      return contains_a_infinity(g.base());
    default:
      return false;
  }
}

/// Reads the target of an embeddability check as a divisible normal form.
/// Only quasicyclic atoms, fin-sup powers of torsion divisible parts, and
/// quasicyclic tails are legal here.
void target_multiplicities(const GroupExpr& g, bool under_fin_sup, DivNormalForm& out) {
  switch (g.kind()) {
    case ExprKind::Zero:
      return;
    case ExprKind::Quasicyclic:
      out.add(g.parameter(), {under_fin_sup, 1});
      return;
    case ExprKind::Sum:
      for (const auto& part : g.parts()) target_multiplicities(part, under_fin_sup, out);
      return;
    case ExprKind::FinSupPower:
      target_multiplicities(g.base(), true, out);
      return;
    case ExprKind::QuasicyclicTail:
      out.add_tail(g.parameter());
      return;
    default:
      throw UnsupportedComparison(
          "embedding target outside divisible normal forms: " + g.to_text());
  }
}

}  // namespace

EmbedCertificate embeds(const DivNormalForm& l, const GroupExpr& k) {
  EmbedCertificate cert;
  if (contains_a_infinity(k)) {
    cert.ok = true;
    cert.universal_sink = true;
    return cert;
  }
  DivNormalForm target;
  target_multiplicities(k, false, target);

  cert.left_tail = l.tail_from_index();
  cert.right_tail = target.tail_from_index();

  std::set<std::uint64_t> primes;
  for (const auto& [p, m] : l.multiplicities()) {
    (void)m;
    primes.insert(p);
  }
  for (const auto& [p, m] : target.multiplicities()) {
    (void)m;
    primes.insert(p);
  }
  // A fin-sup tail on the left needs a tail on the right; primes between the
  // two tail starts still get explicit rows.
  if (l.tail_from_index().has_value()) {
    if (!target.tail_from_index().has_value()) {
      cert.tail_ok = false;
    } else {
      for (std::uint64_t i = *l.tail_from_index(); i < *target.tail_from_index(); ++i) {
        primes.insert(nth_prime(i));
      }
    }
  }

  cert.ok = cert.tail_ok;
  for (const std::uint64_t p : primes) {
    const auto left = l.at(p);
    const auto right = target.at(p);
    const bool ok = left.leq(right);
    cert.rows.push_back({p, left, right, ok});
    cert.ok = cert.ok && ok;
  }
  return cert;
}

EmbedCertificate embeds(const GroupExpr& l, const GroupExpr& k) {
  if (contains_a_infinity(k)) {
    EmbedCertificate cert;
    cert.ok = true;
    cert.universal_sink = true;
    return cert;
  }
  if (!is_torsion(l)) {
    throw UnsupportedComparison(
        "left side must be torsion unless the target contains Ainf: " + l.to_text());
  }
  return embeds(divisible_hull(l), k);
}

// ---------------------------------------------------------------------------
// FiniteAbelian / GroupElement
// ---------------------------------------------------------------------------

FiniteAbelian::FiniteAbelian(std::vector<std::uint64_t> orders) : orders_(std::move(orders)) {
  for (const auto n : orders_) {
    if (n == 0) throw std::invalid_argument("cyclic factor order must be >= 1");
  }
}

std::uint64_t FiniteAbelian::order() const {
  std::uint64_t total = 1;
  for (const auto n : orders_) total = checked_mul(total, n, "group order overflow");
  return total;
}

GroupElement FiniteAbelian::zero() const {
  return GroupElement(*this, std::vector<std::uint64_t>(orders_.size(), 0));
}

GroupElement FiniteAbelian::element(std::vector<std::uint64_t> residues) const {
  return GroupElement(*this, std::move(residues));
}

std::vector<GroupElement> FiniteAbelian::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  std::vector<std::uint64_t> current(orders_.size(), 0);
  while (true) {
    out.push_back(GroupElement(*this, current));
    std::size_t i = orders_.size();
    while (i > 0) {
      --i;
      if (++current[i] < orders_[i]) break;
      current[i] = 0;
      if (i == 0) return out;
    }
    if (orders_.empty()) return out;
  }
}

GroupElement::GroupElement(FiniteAbelian shape, std::vector<std::uint64_t> residues)
    : shape_(std::move(shape)), residues_(std::move(residues)) {
  if (residues_.size() != shape_.orders().size()) {
    throw ShapeMismatch("residue tuple length does not match shape rank");
  }
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    if (residues_[i] >= shape_.orders()[i]) {
      throw ShapeMismatch("residue " + std::to_string(residues_[i]) +
                          " out of range [0," + std::to_string(shape_.orders()[i]) +
                          ") at coordinate " + std::to_string(i));
    }
  }
}

void GroupElement::check_shape(const GroupElement& other) const {
  if (shape_ != other.shape_) {
    throw ShapeMismatch("group elements have different shapes");
  }
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  check_shape(other);
  std::vector<std::uint64_t> out(residues_.size());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    out[i] = (residues_[i] + other.residues_[i]) % shape_.orders()[i];
  }
  return GroupElement(shape_, std::move(out));
}

GroupElement GroupElement::operator-() const {
  std::vector<std::uint64_t> out(residues_.size());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    out[i] = residues_[i] == 0 ? 0 : shape_.orders()[i] - residues_[i];
  }
  return GroupElement(shape_, std::move(out));
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
  return *this + (-other);
}

GroupElement GroupElement::times(std::uint64_t n) const {
  std::vector<std::uint64_t> out(residues_.size());
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    out[i] = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(residues_[i]) * n) % shape_.orders()[i]);
  }
  return GroupElement(shape_, std::move(out));
}

bool GroupElement::is_zero() const {
  return std::all_of(residues_.begin(), residues_.end(),
                     [](std::uint64_t r) { return r == 0; });
}

std::uint64_t GroupElement::order() const {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const std::uint64_t n = shape_.orders()[i];
    const std::uint64_t coordinate_order = n / std::gcd(residues_[i], n);
    result = std::lcm(result, coordinate_order);
  }
  return result;
}

bool GroupElement::operator==(const GroupElement& other) const {
  return shape_ == other.shape_ && residues_ == other.residues_;
}

bool GroupElement::operator<(const GroupElement& other) const {
  return residues_ < other.residues_;
}

bool is_subgroup(std::span<const GroupElement> elements) {
  if (elements.empty()) return false;
  const auto& shape = elements.front().shape();
  std::vector<GroupElement> sorted(elements.begin(), elements.end());
  for (const auto& e : sorted) {
    if (e.shape() != shape) throw ShapeMismatch("mixed shapes in element set");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto member = [&](const GroupElement& x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
  };
  if (!member(shape.zero())) return false;
  for (const auto& a : sorted) {
    for (const auto& b : sorted) {
      if (!member(a - b)) return false;
    }
  }
  return true;
}

bool is_coset(std::span<const GroupElement> elements) {
  if (elements.empty()) return false;
  const auto& shape = elements.front().shape();
  std::vector<GroupElement> sorted(elements.begin(), elements.end());
  for (const auto& e : sorted) {
    if (e.shape() != shape) throw ShapeMismatch("mixed shapes in element set");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto member = [&](const GroupElement& x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
  };
  for (const auto& a : sorted) {
    for (const auto& b : sorted) {
      for (const auto& c : sorted) {
        if (!member(a - b + c)) return false;
      }
    }
  }
  return true;
}

std::vector<GroupElement> closure(const FiniteAbelian& shape,
                                  std::span<const GroupElement> generators) {
  std::vector<GroupElement> result = {shape.zero()};
  std::vector<GroupElement> queue = {shape.zero()};
  const auto member = [&](const GroupElement& x) {
    return std::binary_search(result.begin(), result.end(), x);
  };
  const auto insert = [&](const GroupElement& x) {
    const auto it = std::lower_bound(result.begin(), result.end(), x);
    if (it != result.end() && *it == x) return false;
    result.insert(it, x);
    queue.push_back(x);
    return true;
  };
  for (const auto& g : generators) {
    if (g.shape() != shape) throw ShapeMismatch("generator outside the given shape");
  }
  while (!queue.empty()) {
    const GroupElement x = queue.back();
    queue.pop_back();
    for (const auto& g : generators) {
      const GroupElement y = x + g;
      if (!member(y)) insert(y);
    }
  }
  return result;
}

FiniteAbelian concretize(const GroupExpr& g, std::uint64_t order_cap) {
  std::vector<std::uint64_t> orders;
  std::uint64_t total = 1;
  const auto walk = [&](const auto& self, const GroupExpr& e) -> void {
    switch (e.kind()) {
      case ExprKind::Zero:
        return;
      case ExprKind::Cyclic:
        total = checked_mul(total, e.parameter(), "group order overflow");
        if (total > order_cap) {
          throw CapExceeded("concrete group order exceeds cap " + std::to_string(order_cap));
        }
        orders.push_back(e.parameter());
        return;
      case ExprKind::Sum:
        for (const auto& part : e.parts()) self(self, part);
        return;
      default:
        throw InfiniteGroup("expression does not denote a finite group: " + e.to_text());
    }
  };
  walk(walk, g);
  return FiniteAbelian(std::move(orders));
}

}  // namespace cosettree
