#ifndef COSETTREE_UNIVERSAL_HPP
#define COSETTREE_UNIVERSAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosettree/abelian.hpp"
#include "cosettree/classify.hpp"

namespace cosettree {

/// The universal countable discrete abelian group: the sum over all primes
/// of Z(p^inf)^{<w}, plus Q^{<w}.
GroupExpr a_infinity();

/// The quasicyclic slack blocks: a_n(0) is trivial, a_n(k) for k >= 1 is the
/// sum of Z(p_i^inf)^{<w} over prime indices i >= k.
GroupExpr a_n(std::uint64_t n);

/// Factors of the universal tame product: h_infinity(0) = a_infinity();
/// h_infinity(n) for n >= 1 has one copy of Z(p_i^inf) for each i < n and
/// fin-sup copies for every larger prime.
GroupExpr h_infinity(std::uint64_t n);

/// The spec whose product is the universal tame product group.
SeqSpec h_infinity_spec();

/// Output of the embedding planner: the p_k-compactness thresholds n_k, the
/// regrouped factors L_k, the quasicyclic multiplicities m(n, k), their row
/// maxima M_n, the block boundaries N_n, the receiving factors K_n, and one
/// embedding certificate per index up to the horizon.
struct EmbeddingPlan {
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> n_seq;            // n_0 .. n_horizon
  std::vector<GroupExpr> l_seq;                // L_0 .. L_horizon
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> m_table;  // (n, k), k < n
  std::vector<std::uint64_t> m_caps;           // M_1 .. M_horizon
  std::vector<std::uint64_t> n_caps;           // N_1 .. N_{horizon+1}
  std::vector<GroupExpr> k_seq;                // K_0 .. K_horizon
  std::vector<EmbedCertificate> certificates;  // per index 0 .. horizon
  std::vector<std::string> notes;
};

/// Plans the embedding of a tame product into the universal tame product up
/// to the horizon. Requires the spec to be a tame product; throws NotTame,
/// MalformedSpec for a filtration role, HorizonTooSmall below 2.
EmbeddingPlan embedding_plan(const SeqSpec& spec, std::uint64_t horizon);

/// Rechecks the arithmetic identities (N recurrence, M row maxima, the
/// m-table against the hulls of the L factors, the K factor shapes) and
/// recomputes every certificate.
bool verify_plan(const EmbeddingPlan& plan);

}  // namespace cosettree

#endif  // COSETTREE_UNIVERSAL_HPP
