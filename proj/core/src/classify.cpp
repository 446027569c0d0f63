#include "cosettree/classify.hpp"

#include <algorithm>

#include "cosettree/primes.hpp"
#include "cosettree/universal.hpp"

namespace cosettree {

// ---------------------------------------------------------------------------
// TailRule / SeqSpec
// ---------------------------------------------------------------------------

TailRule TailRule::periodic(std::vector<GroupExpr> cycle) {
  if (cycle.empty()) {
    throw MalformedSpec("a periodic tail needs a nonempty cycle");
  }
  TailRule rule;
  rule.kind = Kind::PeriodicCycle;
  rule.cycle = std::move(cycle);
  return rule;
}

TailRule TailRule::all_quasicyclic() {
  TailRule rule;
  rule.kind = Kind::AllQuasicyclic;
  return rule;
}

TailRule TailRule::h_infinity_tail(std::uint64_t offset) {
  TailRule rule;
  rule.kind = Kind::HInfinityTail;
  rule.offset = offset;
  return rule;
}

GroupExpr SeqSpec::entry(std::uint64_t index) const {
  if (index < prefix.size()) return prefix[index];
  const std::uint64_t j = index - prefix.size();
  switch (tail.kind) {
    case TailRule::Kind::PeriodicCycle:
      return tail.cycle[j % tail.cycle.size()];
    case TailRule::Kind::AllQuasicyclic:
      return GroupExpr::quasicyclic(nth_prime(j));
    case TailRule::Kind::HInfinityTail:
      return h_infinity(tail.offset + j);
  }
  throw std::logic_error("unreachable tail kind");
}

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

std::string to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::E0:
      return "E0";
    case ComplexityClass::E0Omega:
      return "E0^w";
    case ComplexityClass::E0OmegaPlus1:
      return "(E0^w)^+";
    case ComplexityClass::E0OmegaPlus2:
      return "(E0^w)^++";
    case ComplexityClass::E0OmegaPlus3:
      return "(E0^w)^+++";
  }
  throw std::logic_error("unreachable complexity class");
}

std::string to_string(TamenessTier t) {
  switch (t) {
    case TamenessTier::AllPCompact:
      return "all_p_compact";
    case TamenessTier::AllTorsion:
      return "all_torsion";
    case TamenessTier::TameGeneral:
      return "tame_general";
    case TamenessTier::NotTame:
      return "not_tame";
  }
  throw std::logic_error("unreachable tier");
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

bool denotes_finite_group(const GroupExpr& g) {
  switch (g.kind()) {
    case ExprKind::Zero:
    case ExprKind::Cyclic:
      return true;
    case ExprKind::Sum:
      return std::all_of(g.parts().begin(), g.parts().end(), denotes_finite_group);
    default:
      return false;
  }
}

struct TailSummary {
  bool nontorsion_infinitely_often = false;
  PrimeSet infinitely_bad_primes;
  bool every_entry_all_p_compact = true;
  bool every_entry_torsion = true;
  bool every_entry_finite = true;
};

TailSummary summarize_tail(const TailRule& tail) {
  TailSummary s;
  switch (tail.kind) {
    case TailRule::Kind::PeriodicCycle:
      for (const auto& e : tail.cycle) {
        const BadPrimes bp = bad_primes(e);
        s.nontorsion_infinitely_often |= bp.nontorsion;
        s.infinitely_bad_primes.unite(bp.infinite_p_part);
        s.every_entry_all_p_compact &= !bp.nontorsion && bp.infinite_p_part.empty();
        s.every_entry_torsion &= !bp.nontorsion;
        s.every_entry_finite &= denotes_finite_group(e);
      }
      return s;
    case TailRule::Kind::AllQuasicyclic:
      // Zq(p_j) is q-compact for every prime q; no entry is finite.
      s.every_entry_finite = false;
      return s;
    case TailRule::Kind::HInfinityTail:
      // h_infinity(n) fails p_i-compactness exactly for i >= n, so each
      // prime is bad only finitely often, and every entry past index 0 is
      // torsion; h_infinity(0) alone is not.
      s.every_entry_all_p_compact = false;
      s.every_entry_torsion = tail.offset >= 1;
      s.every_entry_finite = false;
      return s;
  }
  throw std::logic_error("unreachable tail kind");
}

TamenessReport classify_core(const SeqSpec& spec, SeqRole role) {
  const TailSummary tail = summarize_tail(spec.tail);

  TamenessReport report;
  report.nontorsion_tail = tail.nontorsion_infinitely_often;
  report.bad_tail_primes = tail.infinitely_bad_primes;
  report.tame = !report.nontorsion_tail && report.bad_tail_primes.empty();

  if (report.nontorsion_tail) {
    report.obstructions.push_back({Obstruction::Kind::ZOmega, 0});
  }
  for (const auto p : report.bad_tail_primes.primes) {
    report.obstructions.push_back({Obstruction::Kind::ZpFinSupOmega, p});
  }
  if (report.bad_tail_primes.all_from_index.has_value()) {
    const std::uint64_t first = nth_prime(*report.bad_tail_primes.all_from_index);
    if (!report.bad_tail_primes.primes.count(first)) {
      report.obstructions.push_back({Obstruction::Kind::ZpFinSupOmega, first});
    }
    report.notes.push_back("every prime with enumeration index >= " +
                           std::to_string(*report.bad_tail_primes.all_from_index) +
                           " carries the fin-sup obstruction; one representative listed");
  }

  report.locally_compact = tail.every_entry_finite;

  if (!report.tame) {
    report.tier = TamenessTier::NotTame;
    return report;
  }

  bool all_pc = tail.every_entry_all_p_compact;
  bool all_torsion = tail.every_entry_torsion;
  for (const auto& e : spec.prefix) {
    const BadPrimes bp = bad_primes(e);
    all_pc &= !bp.nontorsion && bp.infinite_p_part.empty();
    all_torsion &= !bp.nontorsion;
  }
  report.tier = all_pc          ? TamenessTier::AllPCompact
                : all_torsion   ? TamenessTier::AllTorsion
                                : TamenessTier::TameGeneral;

  const TierBounds bounds = bounds_for_tier(report.tier, role);
  report.group_tree_bound = bounds.group_tree_bound;
  report.coset_tree_bound = bounds.coset_tree_bound;
  // Local compactness drops the complexity to E0, but only when the user
  // asserts the filtration structure; for a bare product spec the emitted
  // bound stays with the tier table.
  const bool e0_override =
      report.locally_compact && role == SeqRole::FiltrationQuotients;
  report.complexity_bound = e0_override ? ComplexityClass::E0 : bounds.complexity;

  switch (report.tier) {
    case TamenessTier::AllPCompact:
      report.notes.push_back(
          "group tree heights <= w (sharp); coset tree heights < w*2");
      break;
    case TamenessTier::AllTorsion:
      report.notes.push_back(
          "group tree heights <= w*2 (sharp); coset tree heights < w*3");
      break;
    case TamenessTier::TameGeneral:
      report.notes.push_back(
          "group tree heights <= w*3 after rearrangement (not known sharp); "
          "coset tree heights < w*4");
      break;
    case TamenessTier::NotTame:
      break;
  }
  if (report.locally_compact) {
    report.notes.push_back(
        e0_override
            ? "every tail entry is finite: locally compact, orbit equivalence "
              "relations reduce to E0"
            : "every tail entry is finite: the product is locally compact");
  }
  return report;
}

}  // namespace

TamenessReport classify_product(const SeqSpec& spec) {
  if (spec.role != SeqRole::ProductFactors) {
    throw MalformedSpec("classify_product expects a product-factors spec");
  }
  return classify_core(spec, SeqRole::ProductFactors);
}

TamenessReport classify_filtration(const SeqSpec& spec) {
  if (spec.role != SeqRole::FiltrationQuotients) {
    throw MalformedSpec("classify_filtration expects a filtration-quotients spec");
  }
  return classify_core(spec, SeqRole::FiltrationQuotients);
}

TamenessReport classify(const SeqSpec& spec) {
  return spec.role == SeqRole::ProductFactors ? classify_product(spec)
                                              : classify_filtration(spec);
}

// ---------------------------------------------------------------------------
// Regrouping
// ---------------------------------------------------------------------------

SeqSpec regroup(const SeqSpec& spec, std::span<const std::uint64_t> cuts) {
  if (cuts.empty() || cuts.front() != 0) {
    throw BadCuts("cuts must start at 0");
  }
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) throw BadCuts("cuts must be strictly increasing");
  }
  const std::uint64_t prefix_len = spec.prefix.size();
  const bool periodic = spec.tail.kind == TailRule::Kind::PeriodicCycle;
  const std::uint64_t cycle_len = periodic ? spec.tail.cycle.size() : 0;
  for (const auto c : cuts) {
    if (c > prefix_len) {
      if (!periodic) {
        throw BadCuts("cuts may not reach into a builtin-family tail");
      }
      if ((c - prefix_len) % cycle_len != 0) {
        throw BadCuts("cuts inside the periodic tail must align to whole cycles");
      }
    }
  }
  if (cuts.size() == 1) return spec;  // no blocks

  const std::uint64_t last = cuts.back();
  const std::uint64_t second_last = cuts[cuts.size() - 2];
  const bool tail_rebuild = last > prefix_len;
  if (tail_rebuild && second_last < prefix_len) {
    throw BadCuts("the final block may not straddle the prefix/tail boundary");
  }

  const auto block_sum = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<GroupExpr> parts;
    for (std::uint64_t i = lo; i < hi; ++i) parts.push_back(spec.entry(i));
    return GroupExpr::sum(std::move(parts));
  };

  SeqSpec out;
  out.role = spec.role;
  const std::size_t prefix_blocks = tail_rebuild ? cuts.size() - 2 : cuts.size() - 1;
  for (std::size_t i = 0; i < prefix_blocks; ++i) {
    out.prefix.push_back(block_sum(cuts[i], cuts[i + 1]));
  }
  if (tail_rebuild) {
    out.tail = TailRule::periodic({block_sum(second_last, last)});
  } else {
    for (std::uint64_t i = last; i < prefix_len; ++i) out.prefix.push_back(spec.prefix[i]);
    out.tail = spec.tail;
  }
  return out;
}

SeqSpec rearrange(const SeqSpec& spec) {
  const std::uint64_t prefix_len = spec.prefix.size();

  // Leading non-torsion tail entries; periodic tails may not have any.
  std::uint64_t tail_merge = 0;
  switch (spec.tail.kind) {
    case TailRule::Kind::PeriodicCycle:
      for (const auto& e : spec.tail.cycle) {
        if (!is_torsion(e)) {
          throw NotTame("tail has non-torsion entries at infinitely many indices");
        }
      }
      break;
    case TailRule::Kind::AllQuasicyclic:
      break;
    case TailRule::Kind::HInfinityTail:
      if (spec.tail.offset == 0) tail_merge = 1;  // only index 0 is non-torsion
      break;
  }

  if (prefix_len == 0 && tail_merge == 0) return spec;

  std::vector<GroupExpr> merged;
  for (std::uint64_t i = 0; i < prefix_len + tail_merge; ++i) {
    merged.push_back(spec.entry(i));
  }
  SeqSpec out;
  out.role = spec.role;
  out.prefix = {GroupExpr::sum(std::move(merged))};
  out.tail = spec.tail;
  if (tail_merge > 0) {
    switch (spec.tail.kind) {
      case TailRule::Kind::HInfinityTail:
        out.tail = TailRule::h_infinity_tail(spec.tail.offset + tail_merge);
        break;
      case TailRule::Kind::PeriodicCycle: {
        std::vector<GroupExpr> rotated;
        const std::uint64_t shift = tail_merge % spec.tail.cycle.size();
        for (std::uint64_t i = 0; i < spec.tail.cycle.size(); ++i) {
          rotated.push_back(spec.tail.cycle[(i + shift) % spec.tail.cycle.size()]);
        }
        out.tail = TailRule::periodic(std::move(rotated));
        break;
      }
      case TailRule::Kind::AllQuasicyclic:
        throw std::logic_error("all-quasicyclic tails never merge");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

TierBounds bounds_for_tier(TamenessTier tier, SeqRole role) {
  (void)role;  // the bound table is the same for products and filtrations
  switch (tier) {
    case TamenessTier::AllPCompact:
      return {Ordinal::omega(), Ordinal::omega_times(2), ComplexityClass::E0OmegaPlus1};
    case TamenessTier::AllTorsion:
      return {Ordinal::omega_times(2), Ordinal::omega_times(3), ComplexityClass::E0OmegaPlus2};
    case TamenessTier::TameGeneral:
      return {Ordinal::omega_times(3), Ordinal::omega_times(4), ComplexityClass::E0OmegaPlus3};
    case TamenessTier::NotTame:
      throw NotTameTier("no bounds for the not-tame tier");
  }
  throw std::logic_error("unreachable tier");
}

// ---------------------------------------------------------------------------
// Complexity algebra
// ---------------------------------------------------------------------------

ComplexityExpr ComplexityExpr::e0() { return ComplexityExpr(Op::E0); }

ComplexityExpr ComplexityExpr::power_omega(ComplexityExpr inner) {
  ComplexityExpr e(Op::PowerOmega);
  e.inner_ = std::make_shared<ComplexityExpr>(std::move(inner));
  return e;
}

ComplexityExpr ComplexityExpr::plus(ComplexityExpr inner) {
  ComplexityExpr e(Op::Plus);
  e.inner_ = std::make_shared<ComplexityExpr>(std::move(inner));
  return e;
}

ComplexityExpr ComplexityExpr::times_id_omega(ComplexityExpr inner) {
  ComplexityExpr e(Op::TimesIdOmega);
  e.inner_ = std::make_shared<ComplexityExpr>(std::move(inner));
  return e;
}

namespace {

struct ChainValue {
  bool omega = false;  // E0^w reached
  std::uint64_t pluses = 0;
};

ChainValue simplify_value(const ComplexityExpr& expr) {
  switch (expr.op()) {
    case ComplexityExpr::Op::E0:
      return {};
    case ComplexityExpr::Op::PowerOmega: {
      const ChainValue v = simplify_value(expr.inner());
      if (!v.omega && v.pluses == 0) return {true, 0};  // E0^w
      if (!v.omega) {
        throw UnsupportedExpression("countable power of a jump of raw E0 leaves the chain");
      }
      // (E^w)^w = E^w; (E^+)^w collapses for E at least E0^w.
      return v;
    }
    case ComplexityExpr::Op::Plus: {
      ChainValue v = simplify_value(expr.inner());
      if (!v.omega) {
        throw UnsupportedExpression("the jump applies above E0^w in this chain");
      }
      if (v.pluses == 3) {
        throw UnsupportedExpression("more than three jumps leave the chain");
      }
      ++v.pluses;
      return v;
    }
    case ComplexityExpr::Op::TimesIdOmega: {
      const ChainValue v = simplify_value(expr.inner());
      if (!v.omega) {
        throw UnsupportedExpression("id(w) products absorb only above E0^w");
      }
      return v;
    }
  }
  throw std::logic_error("unreachable complexity op");
}

}  // namespace

ComplexityClass complexity_simplify(const ComplexityExpr& expr) {
  const ChainValue v = simplify_value(expr);
  if (!v.omega) return ComplexityClass::E0;
  switch (v.pluses) {
    case 0:
      return ComplexityClass::E0Omega;
    case 1:
      return ComplexityClass::E0OmegaPlus1;
    case 2:
      return ComplexityClass::E0OmegaPlus2;
    default:
      return ComplexityClass::E0OmegaPlus3;
  }
}

}  // namespace cosettree
