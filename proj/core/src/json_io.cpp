#include "cosettree/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace cosettree {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where,
                       const std::string& message) {
  throw ParseError(source + ": " + where, message);
}

void check_format(const Json& doc, const std::string& source) {
  if (!doc.is_object()) fail(source, "$", "expected a JSON object");
  if (!doc.contains("format") || !doc["format"].is_string()) {
    fail(source, "format", "missing format tag; expected \"" + std::string(kFormatTag) + "\"");
  }
  if (doc["format"].get<std::string>() != kFormatTag) {
    fail(source, "format", "unsupported format \"" + doc["format"].get<std::string>() + "\"");
  }
}

std::uint64_t get_u64(const Json& value, const std::string& source, const std::string& where) {
  if (!value.is_number_unsigned()) {
    fail(source, where, "expected a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, "cannot open file");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

Json tree_to_json(const LevelTree& tree) {
  Json doc;
  doc["format"] = kFormatTag;
  Json levels = Json::array();
  for (const auto& level : tree.structure().levels()) {
    levels.push_back(level.orders());
  }
  doc["levels"] = std::move(levels);
  Json nodes = Json::object();
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    Json list = Json::array();
    for (const auto code : tree.level(n)) {
      list.push_back(tree.structure().decode(n, code));
    }
    nodes[std::to_string(n)] = std::move(list);
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

LevelTree tree_from_json(const Json& doc, const std::string& source,
                         std::uint64_t node_cap, std::uint64_t order_cap) {
  check_format(doc, source);
  if (!doc.contains("levels") || !doc["levels"].is_array() || doc["levels"].empty()) {
    fail(source, "levels", "expected a nonempty array of order tuples");
  }
  std::vector<FiniteAbelian> levels;
  for (std::size_t i = 0; i < doc["levels"].size(); ++i) {
    const auto& entry = doc["levels"][i];
    const std::string where = "levels[" + std::to_string(i) + "]";
    if (!entry.is_array() || entry.empty()) {
      fail(source, where, "expected a nonempty array of cyclic orders");
    }
    std::vector<std::uint64_t> orders;
    for (std::size_t j = 0; j < entry.size(); ++j) {
      const std::uint64_t o = get_u64(entry[j], source, where + "[" + std::to_string(j) + "]");
      if (o == 0) fail(source, where + "[" + std::to_string(j) + "]", "orders must be >= 1");
      orders.push_back(o);
    }
    levels.emplace_back(std::move(orders));
  }
  LevelStructure structure = [&] {
    try {
      return LevelStructure(std::move(levels), order_cap);
    } catch (const CapExceeded& e) {
      fail(source, "levels", e.what());
    }
  }();

  if (!doc.contains("nodes") || !doc["nodes"].is_object()) {
    fail(source, "nodes", "expected an object keyed by level");
  }
  const std::size_t depth = structure.depth();
  std::vector<std::vector<std::uint64_t>> level_codes(depth);
  std::uint64_t total = 0;
  for (const auto& [key, value] : doc["nodes"].items()) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
      fail(source, "nodes." + key, "level keys must be integers in [1, depth]");
    }
    const std::size_t n = std::stoul(key);
    if (n < 1 || n > depth) {
      fail(source, "nodes." + key, "level key out of range [1, " + std::to_string(depth) + "]");
    }
    if (!value.is_array()) fail(source, "nodes." + key, "expected an array of residue tuples");
    const std::size_t expected = structure.coords(n);
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string where = "nodes." + key + "[" + std::to_string(i) + "]";
      const auto& tuple = value[i];
      if (!tuple.is_array() || tuple.size() != expected) {
        fail(source, where,
             "expected a residue tuple of length " + std::to_string(expected));
      }
      std::vector<std::uint64_t> residues;
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        residues.push_back(get_u64(tuple[j], source, where + "[" + std::to_string(j) + "]"));
      }
      try {
        level_codes[n - 1].push_back(structure.encode(n, residues));
      } catch (const ShapeMismatch& e) {
        fail(source, where, e.what());
      }
      if (++total > node_cap) {
        fail(source, "nodes", "node count exceeds cap " + std::to_string(node_cap));
      }
    }
  }
  for (std::size_t i = 0; i < depth; ++i) {
    auto& codes = level_codes[i];
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end()) {
      fail(source, "nodes." + std::to_string(i + 1), "duplicate node");
    }
  }
  try {
    return LevelTree(std::move(structure), std::move(level_codes));
  } catch (const InvalidTree& e) {
    fail(source, "nodes", e.what());
  }
}

LevelTree read_tree_file(const std::string& path, std::uint64_t node_cap,
                         std::uint64_t order_cap) {
  return tree_from_json(load_json_file(path), path, node_cap, order_cap);
}

// ---------------------------------------------------------------------------
// Sequence specs
// ---------------------------------------------------------------------------

Json spec_to_json(const SeqSpec& spec) {
  Json doc;
  doc["format"] = kFormatTag;
  doc["role"] = spec.role == SeqRole::ProductFactors ? "product" : "filtration";
  Json prefix = Json::array();
  for (const auto& e : spec.prefix) prefix.push_back(e.to_text());
  doc["prefix"] = std::move(prefix);
  Json tail = Json::object();
  switch (spec.tail.kind) {
    case TailRule::Kind::PeriodicCycle: {
      Json cycle = Json::array();
      for (const auto& e : spec.tail.cycle) cycle.push_back(e.to_text());
      tail["cycle"] = std::move(cycle);
      break;
    }
    case TailRule::Kind::AllQuasicyclic:
      tail["family"] = "all_quasicyclic";
      break;
    case TailRule::Kind::HInfinityTail:
      tail["family"] = "hinf";
      tail["offset"] = spec.tail.offset;
      break;
  }
  doc["tail"] = std::move(tail);
  return doc;
}

SeqSpec spec_from_json(const Json& doc, const std::string& source) {
  check_format(doc, source);
  SeqSpec spec;
  if (!doc.contains("role") || !doc["role"].is_string()) {
    fail(source, "role", "expected \"product\" or \"filtration\"");
  }
  const std::string role = doc["role"].get<std::string>();
  if (role == "product") {
    spec.role = SeqRole::ProductFactors;
  } else if (role == "filtration") {
    spec.role = SeqRole::FiltrationQuotients;
  } else {
    fail(source, "role", "unknown role \"" + role + "\"");
  }

  if (!doc.contains("prefix") || !doc["prefix"].is_array()) {
    fail(source, "prefix", "expected an array of expression strings");
  }
  for (std::size_t i = 0; i < doc["prefix"].size(); ++i) {
    const std::string where = "prefix[" + std::to_string(i) + "]";
    if (!doc["prefix"][i].is_string()) fail(source, where, "expected an expression string");
    try {
      spec.prefix.push_back(GroupExpr::parse(doc["prefix"][i].get<std::string>()));
    } catch (const ParseError& e) {
      fail(source, where, e.what());
    }
  }

  if (!doc.contains("tail") || !doc["tail"].is_object()) {
    fail(source, "tail", "expected an object with \"cycle\" or \"family\"");
  }
  const Json& tail = doc["tail"];
  if (tail.contains("cycle")) {
    if (!tail["cycle"].is_array() || tail["cycle"].empty()) {
      fail(source, "tail.cycle", "expected a nonempty array of expression strings");
    }
    std::vector<GroupExpr> cycle;
    for (std::size_t i = 0; i < tail["cycle"].size(); ++i) {
      const std::string where = "tail.cycle[" + std::to_string(i) + "]";
      if (!tail["cycle"][i].is_string()) fail(source, where, "expected an expression string");
      try {
        cycle.push_back(GroupExpr::parse(tail["cycle"][i].get<std::string>()));
      } catch (const ParseError& e) {
        fail(source, where, e.what());
      }
    }
    spec.tail = TailRule::periodic(std::move(cycle));
  } else if (tail.contains("family")) {
    if (!tail["family"].is_string()) fail(source, "tail.family", "expected a string");
    const std::string family = tail["family"].get<std::string>();
    if (family == "all_quasicyclic") {
      spec.tail = TailRule::all_quasicyclic();
    } else if (family == "hinf") {
      std::uint64_t offset = 0;
      if (tail.contains("offset")) {
        offset = get_u64(tail["offset"], source, "tail.offset");
      }
      spec.tail = TailRule::h_infinity_tail(offset);
    } else {
      fail(source, "tail.family", "unknown family \"" + family + "\"");
    }
  } else {
    fail(source, "tail", "expected \"cycle\" or \"family\"");
  }
  return spec;
}

SeqSpec read_spec_file(const std::string& path) {
  return spec_from_json(load_json_file(path), path);
}

// ---------------------------------------------------------------------------
// Reports and plans
// ---------------------------------------------------------------------------

namespace {

Json prime_set_to_json(const PrimeSet& set) {
  Json out;
  out["primes"] = set.primes;
  if (set.all_from_index.has_value()) {
    out["all_from_index"] = *set.all_from_index;
  } else {
    out["all_from_index"] = nullptr;
  }
  return out;
}

Json mult_to_json(const DivNormalForm::Mult& mult) {
  return mult.fin_sup ? Json("finsup") : Json(mult.count);
}

Json certificate_to_json(const EmbedCertificate& cert) {
  Json out;
  out["ok"] = cert.ok;
  out["universal_sink"] = cert.universal_sink;
  Json rows = Json::array();
  for (const auto& row : cert.rows) {
    Json r;
    r["p"] = row.prime;
    r["left"] = mult_to_json(row.left);
    r["right"] = mult_to_json(row.right);
    r["ok"] = row.ok;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  out["left_tail"] = cert.left_tail.has_value() ? Json(*cert.left_tail) : Json(nullptr);
  out["right_tail"] = cert.right_tail.has_value() ? Json(*cert.right_tail) : Json(nullptr);
  out["tail_ok"] = cert.tail_ok;
  return out;
}

}  // namespace

Json report_to_json(const TamenessReport& report) {
  Json doc;
  doc["format"] = kFormatTag;
  doc["tame"] = report.tame;
  doc["tier"] = to_string(report.tier);
  doc["nontorsion_tail"] = report.nontorsion_tail;
  doc["bad_tail_primes"] = prime_set_to_json(report.bad_tail_primes);
  Json obstructions = Json::array();
  for (const auto& o : report.obstructions) {
    Json entry;
    if (o.kind == Obstruction::Kind::ZOmega) {
      entry["kind"] = "z_omega";
    } else {
      entry["kind"] = "zp_finsup_omega";
      entry["p"] = o.p;
    }
    obstructions.push_back(std::move(entry));
  }
  doc["obstructions"] = std::move(obstructions);
  doc["locally_compact"] = report.locally_compact;
  doc["group_tree_bound"] =
      report.group_tree_bound.has_value() ? Json(report.group_tree_bound->to_string()) : Json(nullptr);
  doc["coset_tree_bound"] =
      report.coset_tree_bound.has_value() ? Json(report.coset_tree_bound->to_string()) : Json(nullptr);
  doc["complexity_bound"] =
      report.complexity_bound.has_value() ? Json(to_string(*report.complexity_bound)) : Json(nullptr);
  doc["notes"] = report.notes;
  return doc;
}

Json plan_to_json(const EmbeddingPlan& plan) {
  Json doc;
  doc["format"] = kFormatTag;
  doc["horizon"] = plan.horizon;
  doc["n_seq"] = plan.n_seq;
  Json l_seq = Json::array();
  for (const auto& e : plan.l_seq) l_seq.push_back(e.to_text());
  doc["l_seq"] = std::move(l_seq);
  Json m_table = Json::array();
  for (const auto& [key, m] : plan.m_table) {
    Json row;
    row["n"] = key.first;
    row["k"] = key.second;
    row["m"] = m;
    m_table.push_back(std::move(row));
  }
  doc["m_table"] = std::move(m_table);
  doc["m_caps"] = plan.m_caps;
  doc["n_caps"] = plan.n_caps;
  Json k_seq = Json::array();
  for (const auto& e : plan.k_seq) k_seq.push_back(e.to_text());
  doc["k_seq"] = std::move(k_seq);
  Json certificates = Json::array();
  for (std::size_t n = 0; n < plan.certificates.size(); ++n) {
    Json entry = certificate_to_json(plan.certificates[n]);
    entry["n"] = n;
    certificates.push_back(std::move(entry));
  }
  doc["certificates"] = std::move(certificates);
  doc["notes"] = plan.notes;
  return doc;
}

// ---------------------------------------------------------------------------
// Witness profiles
// ---------------------------------------------------------------------------

std::vector<std::vector<std::uint64_t>> profile_from_json(const Json& doc,
                                                          const std::string& source) {
  check_format(doc, source);
  if (!doc.contains("profile") || !doc["profile"].is_array()) {
    fail(source, "profile", "expected an array of rows");
  }
  std::vector<std::vector<std::uint64_t>> profile;
  for (std::size_t j = 0; j < doc["profile"].size(); ++j) {
    const auto& row = doc["profile"][j];
    const std::string where = "profile[" + std::to_string(j) + "]";
    if (!row.is_array()) fail(source, where, "expected an array of values");
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < row.size(); ++i) {
      values.push_back(get_u64(row[i], source, where + "[" + std::to_string(i) + "]"));
    }
    profile.push_back(std::move(values));
  }
  return profile;
}

std::vector<std::vector<std::uint64_t>> read_profile_file(const std::string& path) {
  return profile_from_json(load_json_file(path), path);
}

}  // namespace cosettree
