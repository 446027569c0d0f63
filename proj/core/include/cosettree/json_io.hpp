#ifndef COSETTREE_JSON_IO_HPP
#define COSETTREE_JSON_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cosettree/classify.hpp"
#include "cosettree/trees.hpp"
#include "cosettree/universal.hpp"

namespace cosettree {

/// Insertion-ordered documents keep the emitted key order canonical.
using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatTag = "cosettree/1";

/// Parses a file into a document; throws ParseError with the path on
/// malformed JSON or an unreadable file.
Json load_json_file(const std::string& path);

// Tree documents: {"format", "levels": [[orders], ...],
// "nodes": {"1": [[residues], ...], ...}} with canonical node order.
Json tree_to_json(const LevelTree& tree);
LevelTree tree_from_json(const Json& doc, const std::string& source,
                         std::uint64_t node_cap = kDefaultNodeCap,
                         std::uint64_t order_cap = kDefaultOrderCap);
LevelTree read_tree_file(const std::string& path,
                         std::uint64_t node_cap = kDefaultNodeCap,
                         std::uint64_t order_cap = kDefaultOrderCap);

// Sequence specs: {"format", "role": "product"|"filtration",
// "prefix": [expr, ...], "tail": {"cycle": [...]} or
// {"family": "all_quasicyclic"} or {"family": "hinf", "offset": n}}.
Json spec_to_json(const SeqSpec& spec);
SeqSpec spec_from_json(const Json& doc, const std::string& source);
SeqSpec read_spec_file(const std::string& path);

Json report_to_json(const TamenessReport& report);
Json plan_to_json(const EmbeddingPlan& plan);

// Witness profiles: {"format", "profile": [[f(1,1)..f(1,d)], [f(2,2)..], ...]}.
std::vector<std::vector<std::uint64_t>> profile_from_json(const Json& doc,
                                                          const std::string& source);
std::vector<std::vector<std::uint64_t>> read_profile_file(const std::string& path);

}  // namespace cosettree

#endif  // COSETTREE_JSON_IO_HPP
