#include "doctest.h"

#include <algorithm>
#include <set>

#include "sac/cascade.hpp"
#include "test_support.hpp"

using namespace sac;
using sactest::must_build;
using sactest::node;

TEST_CASE("rank table") {
  CHECK(rank_of(CascadeBlock::TopClaim) == 0);
  CHECK(rank_of(CascadeBlock::WhiteHatAssets) == 1);
  CHECK(rank_of(CascadeBlock::WhiteHatDecomp) == 2);
  CHECK(rank_of(CascadeBlock::WhiteHatGoals) == 3);
  CHECK(rank_of(CascadeBlock::BlackHatThreats) == 4);
  CHECK(rank_of(CascadeBlock::BlackHatPaths) == 5);
  CHECK(rank_of(CascadeBlock::ResolverTreatment) == 6);
  CHECK(rank_of(CascadeBlock::ResolverRequirements) == 7);
  CHECK(rank_of(CascadeBlock::Evidence) == 8);
  CHECK(!rank_of(CascadeBlock::Generic).has_value());
  CHECK(!rank_of(CascadeBlock::QualityCompleteness).has_value());
  CHECK(!rank_of(CascadeBlock::QualityConfidence).has_value());
}

TEST_CASE("rank moving upwards through a strategy is an inversion") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("G1", NodeKind::Goal, "req", CascadeBlock::ResolverRequirements),
       node("S1", NodeKind::Strategy, "argue"),
       node("G2", NodeKind::Goal, "goal", CascadeBlock::WhiteHatGoals),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "G1", EdgeKind::SupportedBy},
       {"G1", "S1", EdgeKind::SupportedBy},
       {"S1", "G2", EdgeKind::SupportedBy},
       {"G2", "Sn", EdgeKind::SupportedBy}});
  auto findings = validate_cascade(c);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::LevelInversion);
  CHECK(findings[0].subject == "G2");
}

TEST_CASE("evidence may back any level") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("G1", NodeKind::Goal, "assets", CascadeBlock::WhiteHatAssets),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "G1", EdgeKind::SupportedBy}, {"G1", "Sn", EdgeKind::SupportedBy}});
  CHECK(validate_cascade(c).empty());
}

TEST_CASE("skipping levels downwards is allowed") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("G1", NodeKind::Goal, "assets", CascadeBlock::WhiteHatAssets),
       node("G2", NodeKind::Goal, "goal", CascadeBlock::WhiteHatGoals),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "G1", EdgeKind::SupportedBy},
       {"G1", "G2", EdgeKind::SupportedBy},  // decomp level skipped
       {"G2", "Sn", EdgeKind::SupportedBy}});
  CHECK(validate_cascade(c).empty());
}

TEST_CASE("generic subtrees are exempt from rank checks") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("GG", NodeKind::Goal, "policy", CascadeBlock::Generic),
       node("GR", NodeKind::Goal, "rule", CascadeBlock::ResolverRequirements),
       node("GA", NodeKind::Goal, "asset", CascadeBlock::WhiteHatAssets),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "GG", EdgeKind::SupportedBy},
       {"GG", "GR", EdgeKind::SupportedBy},
       {"GR", "GA", EdgeKind::SupportedBy},  // 7 -> 1 would invert outside generic
       {"GA", "Sn", EdgeKind::SupportedBy}});
  CHECK(validate_cascade(c).empty());
}

TEST_CASE("generic sub-case must hang beneath the top claim") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("G1", NodeKind::Goal, "assets", CascadeBlock::WhiteHatAssets),
       node("GG", NodeKind::Goal, "policy", CascadeBlock::Generic),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence),
       node("Sn2", NodeKind::Solution, "ev2", CascadeBlock::Evidence)},
      {{"G0", "G1", EdgeKind::SupportedBy},
       {"G1", "GG", EdgeKind::SupportedBy},  // hangs below the assets level
       {"GG", "Sn", EdgeKind::SupportedBy},
       {"G1", "Sn2", EdgeKind::SupportedBy}});
  auto findings = validate_cascade(c);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::BadEdge);
  CHECK(findings[0].subject == "GG");
}

TEST_CASE("generic sub-case may hang beneath one strategy under the top claim") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("S1", NodeKind::Strategy, "argue"),
       node("GG", NodeKind::Goal, "policy", CascadeBlock::Generic),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "S1", EdgeKind::SupportedBy},
       {"S1", "GG", EdgeKind::SupportedBy},
       {"GG", "Sn", EdgeKind::SupportedBy}});
  CHECK(validate_cascade(c).empty());
}

TEST_CASE("blockless goals outside generic subtrees are flagged") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("G1", NodeKind::Goal, "naked"),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "G1", EdgeKind::SupportedBy}, {"G1", "Sn", EdgeKind::SupportedBy}});
  auto findings = validate_cascade(c);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::UnknownBlock);
  CHECK(findings[0].subject == "G1");
}

TEST_CASE("solutions must carry the evidence block") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::WhiteHatAssets)},
      {{"G0", "Sn", EdgeKind::SupportedBy}});
  auto findings = validate_cascade(c);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::KindMismatch);

  auto c2 = must_build("x",
                       {node("G0", NodeKind::Goal, "top", CascadeBlock::TopClaim),
                        node("Sn", NodeKind::Solution, "ev")},
                       {{"G0", "Sn", EdgeKind::SupportedBy}});
  auto findings2 = validate_cascade(c2);
  REQUIRE(findings2.size() == 1);
  CHECK(findings2[0].code == FindingCode::UnknownBlock);
}

TEST_CASE("root goal must carry the top_claim block") {
  auto c = must_build(
      "x",
      {node("G0", NodeKind::Goal, "top", CascadeBlock::WhiteHatAssets),
       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence)},
      {{"G0", "Sn", EdgeKind::SupportedBy}});
  auto findings = validate_cascade(c);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::UnknownBlock);
  CHECK(findings[0].subject == "G0");
}

TEST_CASE("inversions never point at solutions") {
  // Evidence carries the maximal rank, so a solution child cannot decrease.
  SplitMix64 rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    AssuranceCase c = sactest::random_case(rng);
    for (const Finding& f : validate_cascade(c)) {
      if (f.code != FindingCode::LevelInversion) continue;
      const Node* subject = c.find(f.subject);
      REQUIRE(subject != nullptr);
      CHECK(subject->kind != NodeKind::Solution);
    }
  }
}

TEST_CASE("property: cascade-clean cases have non-decreasing ranks on paths") {
  SplitMix64 rng(4242);
  int clean = 0;
  for (int iter = 0; iter < 400; ++iter) {
    AssuranceCase c = sactest::random_case(rng);
    if (!validate_cascade(c).empty()) continue;
    ++clean;
    // Recompute effective ranks independently: block rank, or for
    // strategies the max parent goal rank; generic descendants excluded.
    std::set<NodeId> generic;
    std::vector<NodeId> stack;
    for (const Node& n : c.nodes())
      if (n.block == CascadeBlock::Generic) {
        generic.insert(n.id);
        stack.push_back(n.id);
      }
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      for (const Edge* e : c.edges_from(cur, EdgeKind::SupportedBy))
        if (generic.insert(e->target).second) stack.push_back(e->target);
    }
    auto rank_at = [&](const NodeId& id) -> std::optional<int> {
      const Node* n = c.find(id);
      if (!n || generic.count(id)) return std::nullopt;
      if (n->kind == NodeKind::Strategy) {
        std::optional<int> best;
        for (const Edge* e : c.edges_to(id, EdgeKind::SupportedBy)) {
          const Node* p = c.find(e->source);
          if (p && p->block && !generic.count(p->id))
            if (auto r = rank_of(*p->block))
              best = best ? std::max(*best, *r) : *r;
        }
        return best;
      }
      return n->block ? rank_of(*n->block) : std::nullopt;
    };
    for (const Edge& e : c.edges()) {
      if (e.kind != EdgeKind::SupportedBy) continue;
      auto ru = rank_at(e.source);
      auto rv = rank_at(e.target);
      if (ru && rv) CHECK(*rv >= *ru);
    }
  }
  CHECK(clean > 0);
}

TEST_CASE("derive_security_goals: one pair") {
  std::vector<Asset> assets = {
      {"a1", "VIN", {SecurityProperty::Confidentiality}, {}}};
  auto goals = derive_security_goals(assets);
  REQUIRE(goals.size() == 1);
  CHECK(goals[0].text == "Asset VIN preserves Confidentiality");
  CHECK(goals[0].block == CascadeBlock::WhiteHatGoals);
  CHECK(goals[0].attrs.at("asset") == "a1");
  CHECK(goals[0].attrs.at("cia") == "C");
  CHECK(goals[0].kind == NodeKind::Goal);
}

TEST_CASE("derive_security_goals: CIA order and empty input") {
  std::vector<Asset> assets = {{"a1",
                                "Key",
                                {SecurityProperty::Availability,
                                 SecurityProperty::Confidentiality,
                                 SecurityProperty::Integrity},
                                {}}};
  auto goals = derive_security_goals(assets);
  REQUIRE(goals.size() == 3);
  CHECK(goals[0].attrs.at("cia") == "C");
  CHECK(goals[1].attrs.at("cia") == "I");
  CHECK(goals[2].attrs.at("cia") == "A");

  CHECK(derive_security_goals({}).empty());
}

TEST_CASE("derive_security_goals: enumeration oracle over random inputs") {
  SplitMix64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Asset> assets;
    const size_t n = 1 + rng.next_index(5);
    size_t expected_pairs = 0;
    for (size_t i = 0; i < n; ++i) {
      Asset a;
      a.id = "a" + std::to_string(i);
      a.name = "Asset" + std::to_string(i);
      do {
        a.properties.clear();
        if (rng.next_index(2)) a.properties.insert(SecurityProperty::Confidentiality);
        if (rng.next_index(2)) a.properties.insert(SecurityProperty::Integrity);
        if (rng.next_index(2)) a.properties.insert(SecurityProperty::Availability);
      } while (a.properties.empty());
      expected_pairs += a.properties.size();
      assets.push_back(std::move(a));
    }
    auto goals = derive_security_goals(assets);
    CHECK(goals.size() == expected_pairs);
    std::set<std::string> ids;
    for (const Node& g : goals) ids.insert(g.id);
    CHECK(ids.size() == goals.size());  // injective (asset, property) -> id
    CHECK(std::is_sorted(goals.begin(), goals.end(), [](const Node& x, const Node& y) {
      return x.attrs.at("asset") < y.attrs.at("asset");
    }));
  }
}

TEST_CASE("derive_security_goals rejects bad inputs") {
  CHECK_THROWS_WITH_AS(derive_security_goals({{"a1", "VIN", {}, {}}}),
                       doctest::Contains("a1"), std::invalid_argument);
  std::vector<Asset> rel = {{"a1",
                             "VIN",
                             {SecurityProperty::Confidentiality},
                             {{"missing", "depends on"}}}};
  CHECK_THROWS_AS(derive_security_goals(rel), std::invalid_argument);
}

TEST_CASE("derive_counter_claims: threat scenarios") {
  Node goal = node("g1", NodeKind::Goal, "Asset VIN preserves Confidentiality",
                   CascadeBlock::WhiteHatGoals);
  auto claims =
      derive_counter_claims(goal, {"CAN spoofing"}, CounterLevel::Threats, {});
  REQUIRE(claims.size() == 1);
  CHECK(claims[0].block == CascadeBlock::BlackHatThreats);
  CHECK(claims[0].text ==
        "Threat scenario 'CAN spoofing' does not compromise Asset VIN preserves "
        "Confidentiality");
  CHECK(claims[0].attrs.count("risk") == 0);

  CHECK(derive_counter_claims(goal, {}, CounterLevel::Threats, {}).empty());
}

TEST_CASE("derive_counter_claims: attack paths with treatment") {
  Node threat = node("t1", NodeKind::Goal, "threat claim",
                     CascadeBlock::BlackHatThreats);
  auto claims = derive_counter_claims(threat, {"OBD port"}, CounterLevel::Paths,
                                      RiskTreatment::Mitigate);
  REQUIRE(claims.size() == 1);
  CHECK(claims[0].block == CascadeBlock::BlackHatPaths);
  CHECK(claims[0].text == "Attack path 'OBD port' is not realizable");
  CHECK(claims[0].attrs.at("risk") == "mitigate");
}

TEST_CASE("derive_counter_claims rejects bad inputs") {
  Node wrong = node("g1", NodeKind::Goal, "claim", CascadeBlock::BlackHatPaths);
  CHECK_THROWS_AS(derive_counter_claims(wrong, {"s"}, CounterLevel::Threats, {}),
                  std::invalid_argument);
  Node goal = node("g1", NodeKind::Goal, "claim", CascadeBlock::WhiteHatGoals);
  CHECK_THROWS_AS(derive_counter_claims(goal, {""}, CounterLevel::Threats, {}),
                  std::invalid_argument);
}
