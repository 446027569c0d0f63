#include <doctest.h>

#include <random>

#include "cosettree/json_io.hpp"
#include "support/generators.hpp"

using cosettree::Json;
using cosettree::LevelTree;
using cosettree::SeqSpec;

namespace {

Json minimal_tree_doc() {
  return Json::parse(R"json({
    "format": "cosettree/1",
    "levels": [[2], [2, 2]],
    "nodes": {"1": [[0], [1]], "2": [[0, 0, 0], [0, 1, 1]]}
  })json");
}

}  // namespace

TEST_CASE("tree documents round-trip") {
  const LevelTree tree = cosettree::tree_from_json(minimal_tree_doc(), "inline");
  CHECK(tree.depth() == 2);
  CHECK(tree.level(1).size() == 2);
  CHECK(tree.level(2).size() == 2);

  const Json emitted = cosettree::tree_to_json(tree);
  CHECK(cosettree::tree_from_json(emitted, "emitted") == tree);
  CHECK(emitted["format"] == "cosettree/1");

  std::mt19937_64 rng(5501);
  const cosettree::LevelStructure structure(
      {cosettree::FiniteAbelian({2, 2}), cosettree::FiniteAbelian({4})});
  for (int i = 0; i < 30; ++i) {
    const LevelTree random = generators::random_tree(rng, structure);
    CHECK(cosettree::tree_from_json(cosettree::tree_to_json(random), "round") == random);
  }
}

TEST_CASE("tree reader rejects malformed documents with positions") {
  auto doc = minimal_tree_doc();
  doc["nodes"]["2"][1][2] = 7;  // residue out of range
  CHECK_THROWS_WITH_AS(cosettree::tree_from_json(doc, "bad"),
                       doctest::Contains("bad: nodes.2[1]"), cosettree::ParseError);

  doc = minimal_tree_doc();
  doc["nodes"]["2"].push_back({1, 0, 0});  // orphan: parent [1] missing? no, [1] present
  doc["nodes"]["1"] = {{0}};               // now the parent of [1,...] is gone
  CHECK_THROWS_AS(cosettree::tree_from_json(doc, "bad"), cosettree::ParseError);

  doc = minimal_tree_doc();
  doc.erase("format");
  CHECK_THROWS_WITH_AS(cosettree::tree_from_json(doc, "bad"),
                       doctest::Contains("bad: format"), cosettree::ParseError);

  doc = minimal_tree_doc();
  doc["nodes"]["3"] = Json::array();  // level key out of range
  CHECK_THROWS_AS(cosettree::tree_from_json(doc, "bad"), cosettree::ParseError);

  doc = minimal_tree_doc();
  doc["nodes"]["2"][0] = {0, 0};  // tuple too short
  CHECK_THROWS_WITH_AS(cosettree::tree_from_json(doc, "bad"),
                       doctest::Contains("length 3"), cosettree::ParseError);

  doc = minimal_tree_doc();
  doc["levels"] = Json::array();
  CHECK_THROWS_AS(cosettree::tree_from_json(doc, "bad"), cosettree::ParseError);
}

TEST_CASE("spec documents round-trip") {
  const Json doc = Json::parse(R"json({
    "format": "cosettree/1",
    "role": "product",
    "prefix": ["sum(Z,Zq(2))"],
    "tail": {"cycle": ["Z(2)", "Zq(3)"]}
  })json");
  const SeqSpec spec = cosettree::spec_from_json(doc, "inline");
  CHECK(spec.role == cosettree::SeqRole::ProductFactors);
  CHECK(spec.prefix.size() == 1);
  CHECK(spec.tail.cycle.size() == 2);
  CHECK(cosettree::spec_from_json(cosettree::spec_to_json(spec), "again") == spec);

  const Json family = Json::parse(R"json({
    "format": "cosettree/1",
    "role": "filtration",
    "prefix": [],
    "tail": {"family": "hinf", "offset": 1}
  })json");
  const SeqSpec hinf = cosettree::spec_from_json(family, "inline");
  CHECK(hinf.tail.kind == cosettree::TailRule::Kind::HInfinityTail);
  CHECK(hinf.tail.offset == 1);
  CHECK(cosettree::spec_from_json(cosettree::spec_to_json(hinf), "again") == hinf);

  Json bad = doc;
  bad["tail"] = Json::object();
  CHECK_THROWS_WITH_AS(cosettree::spec_from_json(bad, "bad"), doctest::Contains("bad: tail"),
                       cosettree::ParseError);
  bad = doc;
  bad["prefix"][0] = "nonsense";
  CHECK_THROWS_WITH_AS(cosettree::spec_from_json(bad, "bad"),
                       doctest::Contains("bad: prefix[0]"), cosettree::ParseError);
  bad = doc;
  bad["role"] = "other";
  CHECK_THROWS_AS(cosettree::spec_from_json(bad, "bad"), cosettree::ParseError);
}

TEST_CASE("report and plan documents carry the required keys") {
  const SeqSpec spec = cosettree::spec_from_json(Json::parse(R"json({
    "format": "cosettree/1",
    "role": "product",
    "prefix": [],
    "tail": {"cycle": ["Zq(2)"]}
  })json"),
                                                 "inline");
  const Json report = cosettree::report_to_json(cosettree::classify(spec));
  for (const auto* key : {"format", "tame", "tier", "nontorsion_tail", "bad_tail_primes",
                          "obstructions", "locally_compact", "group_tree_bound",
                          "coset_tree_bound", "complexity_bound", "notes"}) {
    CHECK(report.contains(key));
  }
  CHECK(report["tame"] == true);
  CHECK(report["tier"] == "all_p_compact");
  CHECK(report["complexity_bound"] == "(E0^w)^+");
  CHECK(report["group_tree_bound"] == "w");
  CHECK(report["coset_tree_bound"] == "w*2");

  const Json plan = cosettree::plan_to_json(cosettree::embedding_plan(spec, 3));
  for (const auto* key : {"format", "horizon", "n_seq", "l_seq", "m_table", "m_caps", "n_caps",
                          "k_seq", "certificates", "notes"}) {
    CHECK(plan.contains(key));
  }
  CHECK(plan["certificates"].size() == 4);
  CHECK(plan["certificates"][0]["universal_sink"] == true);
  CHECK(plan["certificates"][1]["rows"][0]["p"] == 2);
}

TEST_CASE("profile documents") {
  const Json doc = Json::parse(R"json({
    "format": "cosettree/1",
    "profile": [[2, 1, 0], [2, 1], [2]]
  })json");
  const auto profile = cosettree::profile_from_json(doc, "inline");
  REQUIRE(profile.size() == 3);
  CHECK(profile[0] == std::vector<std::uint64_t>{2, 1, 0});

  Json bad = doc;
  bad["profile"][1] = "x";
  CHECK_THROWS_AS(cosettree::profile_from_json(bad, "bad"), cosettree::ParseError);
}
