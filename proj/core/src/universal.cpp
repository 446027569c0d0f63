#include "cosettree/universal.hpp"

#include <algorithm>

#include "cosettree/primes.hpp"

namespace cosettree {

GroupExpr a_infinity() { return GroupExpr::a_infinity(); }

GroupExpr a_n(std::uint64_t n) {
  if (n == 0) return GroupExpr::zero();
  return GroupExpr::quasicyclic_tail(n);
}

GroupExpr h_infinity(std::uint64_t n) {
  if (n == 0) return GroupExpr::a_infinity();
  std::vector<GroupExpr> parts;
  parts.reserve(n + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    parts.push_back(GroupExpr::quasicyclic(nth_prime(i)));
  }
  parts.push_back(GroupExpr::quasicyclic_tail(n));
  return GroupExpr::sum(std::move(parts));
}

SeqSpec h_infinity_spec() {
  SeqSpec spec;
  spec.prefix = {h_infinity(0)};
  spec.tail = TailRule::h_infinity_tail(1);
  spec.role = SeqRole::ProductFactors;
  return spec;
}

namespace {

/// Largest entry index at which the spec fails p-compactness, or nullopt.
/// Well defined for tame specs: per prime only finitely many entries fail.
std::optional<std::uint64_t> last_violation(const SeqSpec& spec, std::uint64_t p) {
  std::optional<std::uint64_t> worst;
  for (std::uint64_t i = 0; i < spec.prefix.size(); ++i) {
    if (!is_p_compact(spec.prefix[i], p)) worst = i;
  }
  switch (spec.tail.kind) {
    case TailRule::Kind::PeriodicCycle:
    case TailRule::Kind::AllQuasicyclic:
      // Tame periodic tails have fully p-compact cycles; the builtin
      // quasicyclic family is p-compact everywhere.
      break;
    case TailRule::Kind::HInfinityTail: {
      // h_infinity(m) is p_i-compact exactly when m > i.
      const auto idx = prime_index(p);
      if (idx.has_value() && *idx >= spec.tail.offset) {
        worst = spec.prefix.size() + (*idx - spec.tail.offset);
      }
      break;
    }
  }
  return worst;
}

GroupExpr sum_of_entries(const SeqSpec& spec, std::uint64_t lo, std::uint64_t hi) {
  std::vector<GroupExpr> parts;
  for (std::uint64_t i = lo; i < hi; ++i) parts.push_back(spec.entry(i));
  return GroupExpr::sum(std::move(parts));
}

}  // namespace

EmbeddingPlan embedding_plan(const SeqSpec& spec, std::uint64_t horizon) {
  if (spec.role != SeqRole::ProductFactors) {
    throw MalformedSpec("embedding plans are defined for product specs");
  }
  if (horizon < 2) {
    throw HorizonTooSmall("embedding plans need a horizon of at least 2");
  }
  const TamenessReport report = classify_product(spec);
  if (!report.tame) {
    throw NotTame("embedding plans exist only for tame products");
  }

  EmbeddingPlan plan;
  plan.horizon = horizon;

  // Thresholds: from n_k on, every entry is p_k-compact; strictly increasing.
  for (std::uint64_t k = 0; k <= horizon; ++k) {
    const auto worst = last_violation(spec, nth_prime(k));
    std::uint64_t n_k = worst.has_value() ? *worst + 1 : 0;
    if (k > 0) n_k = std::max(n_k, plan.n_seq.back() + 1);
    plan.n_seq.push_back(n_k);
  }

  // Regrouped factors: L_0 collects everything below n_0.
  plan.l_seq.push_back(plan.n_seq[0] == 0 ? GroupExpr::zero()
                                          : sum_of_entries(spec, 0, plan.n_seq[0]));
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    plan.l_seq.push_back(sum_of_entries(spec, plan.n_seq[k - 1], plan.n_seq[k]));
  }

  // Quasicyclic multiplicities and their caps. Every L_n with n >= 1 sits
  // past n_0, hence is torsion and has a divisible hull; its p_k-part for
  // k < n is finite by the choice of n_k.
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const DivNormalForm hull = divisible_hull(plan.l_seq[n]);
    std::uint64_t row_max = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto mult = hull.at(nth_prime(k));
      if (mult.fin_sup) {
        throw std::logic_error("threshold choice left an infinite p_k-part");
      }
      plan.m_table[{n, k}] = mult.count;
      row_max = std::max(row_max, mult.count);
    }
    plan.m_caps.push_back(row_max);
  }

  // Block boundaries: N_1 = 1, N_{n+1} = N_n + M_n + 1.
  plan.n_caps.push_back(1);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    plan.n_caps.push_back(plan.n_caps.back() + plan.m_caps[n - 1] + 1);
  }

  // Receiving factors and certificates.
  plan.k_seq.push_back(h_infinity(0));
  plan.certificates.push_back(embeds(plan.l_seq[0], plan.k_seq[0]));
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    std::vector<GroupExpr> parts = {a_n(n)};
    for (std::uint64_t i = plan.n_caps[n - 1]; i < plan.n_caps[n]; ++i) {
      parts.push_back(h_infinity(i));
    }
    plan.k_seq.push_back(GroupExpr::sum(std::move(parts)));
    plan.certificates.push_back(embeds(plan.l_seq[n], plan.k_seq[n]));
  }

  // A periodic tail makes the plan itself eventually periodic; report when
  // the computed window already shows it.
  if (spec.tail.kind == TailRule::Kind::PeriodicCycle && horizon >= 3) {
    const std::uint64_t g1 = plan.n_seq[horizon] - plan.n_seq[horizon - 1];
    const std::uint64_t g2 = plan.n_seq[horizon - 1] - plan.n_seq[horizon - 2];
    if (g1 == g2 && plan.l_seq[horizon] == plan.l_seq[horizon - 1] &&
        plan.m_caps[horizon - 1] == plan.m_caps[horizon - 2]) {
      plan.notes.push_back("plan is eventually periodic: consecutive factors repeat with gap " +
                           std::to_string(g1));
    }
  }
  return plan;
}

bool verify_plan(const EmbeddingPlan& plan) {
  const std::uint64_t horizon = plan.horizon;
  if (plan.n_seq.size() != horizon + 1 || plan.l_seq.size() != horizon + 1 ||
      plan.k_seq.size() != horizon + 1 || plan.certificates.size() != horizon + 1 ||
      plan.m_caps.size() != horizon || plan.n_caps.size() != horizon + 1) {
    return false;
  }
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    if (plan.n_seq[k] <= plan.n_seq[k - 1]) return false;
  }
  if (plan.n_caps[0] != 1) return false;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (plan.n_caps[n] != plan.n_caps[n - 1] + plan.m_caps[n - 1] + 1) return false;
  }
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    DivNormalForm hull;
    try {
      hull = divisible_hull(plan.l_seq[n]);
    } catch (const NonTorsionInput&) {
      return false;
    }
    std::uint64_t row_max = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto it = plan.m_table.find({n, k});
      if (it == plan.m_table.end()) return false;
      const auto mult = hull.at(nth_prime(k));
      if (mult.fin_sup || mult.count != it->second) return false;
      row_max = std::max(row_max, it->second);
    }
    if (plan.m_caps[n - 1] != row_max) return false;
  }
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    std::vector<GroupExpr> parts = {a_n(n)};
    for (std::uint64_t i = plan.n_caps[n - 1]; i < plan.n_caps[n]; ++i) {
      parts.push_back(h_infinity(i));
    }
    if (!(plan.k_seq[n] == GroupExpr::sum(std::move(parts)))) return false;
  }
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    EmbedCertificate fresh;
    try {
      fresh = embeds(plan.l_seq[n], plan.k_seq[n]);
    } catch (const Error&) {
      return false;
    }
    if (!fresh.ok || !plan.certificates[n].ok) return false;
    if (fresh.universal_sink != plan.certificates[n].universal_sink) return false;
  }
  return true;
}

}  // namespace cosettree
