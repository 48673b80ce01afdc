#include "doctest.h"

#include <algorithm>

#include "sac/evidence.hpp"
#include "test_support.hpp"

using namespace sac;
using sactest::must_build;
using sactest::node;

namespace {

EvidenceItem item(std::string id, std::optional<int> valid_days = {},
                  Date created = {2024, 1, 1}) {
  EvidenceItem e;
  e.id = std::move(id);
  e.title = "Artifact " + e.id;
  e.etype = EvidenceType::Verification;
  e.uri = "reports/" + e.id + ".html";
  e.created_at = created;
  e.valid_days = valid_days;
  e.owner_role = Role::Developer;
  return e;
}

}  // namespace

TEST_CASE("registry keeps items in id order and rejects duplicates") {
  EvidenceRegistry reg;
  reg.add(item("e2"));
  reg.add(item("e1"));
  CHECK(reg.size() == 2);
  auto items = reg.items();
  CHECK(items[0]->id == "e1");
  CHECK(items[1]->id == "e2");
  CHECK_THROWS_AS(reg.add(item("e1")), std::invalid_argument);
  CHECK_THROWS_AS(reg.add(item("e9", 0)), std::invalid_argument);
}

TEST_CASE("linked solutions and referenced items produce no findings") {
  EvidenceRegistry reg;
  reg.add(item("e1"));
  auto c = must_build("x",
                      {node("G1", NodeKind::Goal, "top", CascadeBlock::TopClaim),
                       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence,
                            {{"item", "e1"}})},
                      {{"G1", "Sn", EdgeKind::SupportedBy}});
  CHECK(link_report(c, reg).empty());
}

TEST_CASE("unknown item references and unreferenced items warn") {
  EvidenceRegistry reg;
  reg.add(item("e1"));
  auto c = must_build("x",
                      {node("G1", NodeKind::Goal, "top", CascadeBlock::TopClaim),
                       node("Sn", NodeKind::Solution, "ev", CascadeBlock::Evidence,
                            {{"item", "e9"}})},
                      {{"G1", "Sn", EdgeKind::SupportedBy}});
  auto findings = link_report(c, reg);
  REQUIRE(findings.size() == 2);  // unknown e9 and unreferenced e1
  for (const Finding& f : findings) {
    CHECK(f.code == FindingCode::OrphanSolution);
    CHECK(f.severity == Severity::Warning);
  }
}

TEST_CASE("property: warning count equals unlinked plus unreferenced") {
  SplitMix64 rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    // Random registry and random solutions, some linked, some not.
    EvidenceRegistry reg;
    const size_t n_items = rng.next_index(5);
    for (size_t i = 0; i < n_items; ++i) reg.add(item("e" + std::to_string(i)));

    std::vector<Node> nodes = {
        node("G1", NodeKind::Goal, "top", CascadeBlock::TopClaim)};
    std::vector<Edge> edges;
    const size_t n_solutions = rng.next_index(6);
    for (size_t i = 0; i < n_solutions; ++i) {
      std::map<std::string, std::string> attrs;
      switch (rng.next_index(3)) {
        case 0: break;  // no item link
        case 1: attrs["item"] = "e" + std::to_string(rng.next_index(5)); break;
        case 2: attrs["item"] = "missing" + std::to_string(i); break;
      }
      nodes.push_back(node("Sn" + std::to_string(i), NodeKind::Solution, "ev",
                           CascadeBlock::Evidence, attrs));
      edges.push_back({"G1", "Sn" + std::to_string(i), EdgeKind::SupportedBy});
    }
    auto c = must_build("x", nodes, edges);

    // Brute-force recount.
    size_t unlinked = 0;
    std::set<std::string> referenced;
    for (const Node& n : c.nodes()) {
      if (n.kind != NodeKind::Solution) continue;
      auto it = n.attrs.find("item");
      if (it == n.attrs.end() || !reg.contains(it->second)) ++unlinked;
      else referenced.insert(it->second);
    }
    const size_t unreferenced = reg.size() - referenced.size();
    CHECK(link_report(c, reg).size() == unlinked + unreferenced);
  }
}

TEST_CASE("staleness uses strict expiry against as_of") {
  EvidenceRegistry reg;
  reg.add(item("e1", 365, {2024, 1, 1}));
  CHECK(staleness_report(reg, {2025, 6, 1}).size() == 1);
  CHECK(staleness_report(reg, {2024, 12, 31}).empty());
  // expiry day itself: 2024-01-01 + 365 = 2024-12-31
  CHECK(staleness_report(reg, {2025, 1, 1}).size() == 1);

  EvidenceRegistry unlimited;
  unlimited.add(item("e2"));
  CHECK(staleness_report(unlimited, {2999, 1, 1}).empty());
}

TEST_CASE("property: staleness is monotone in as_of") {
  SplitMix64 rng(8);
  for (int iter = 0; iter < 200; ++iter) {
    EvidenceRegistry reg;
    Date created = Date::from_days(long(rng.next_index(20000)));
    reg.add(item("e", 1 + int(rng.next_index(1000)), created));
    Date d1 = Date::from_days(long(rng.next_index(40000)));
    Date d2 = d1.plus_days(long(rng.next_index(3000)));
    const bool stale1 = !staleness_report(reg, d1).empty();
    const bool stale2 = !staleness_report(reg, d2).empty();
    if (stale1) CHECK(stale2);
  }
}

TEST_CASE("responsibility matrix matches the fixed table") {
  const auto& m = responsibility_matrix();
  using R = Responsibility;
  CHECK(m.at(Role::Developer) == std::set<R>{R::Creation, R::Maintenance});
  CHECK(m.at(Role::ProductOwner) == std::set<R>{R::Ownership, R::Governance});
  CHECK(m.at(Role::RiskOwner) == std::set<R>{R::Ownership});
  CHECK(m.at(Role::Auditor) == std::set<R>{R::Governance});
  CHECK(m.at(Role::Management) == std::set<R>{R::Governance});
  CHECK(m.at(Role::SecurityOfficer) ==
        std::set<R>{R::Creation, R::Collection, R::Maintenance, R::Governance});
  CHECK(m.at(Role::LegalTeam) == std::set<R>{R::Collection});
  CHECK(m.size() == 7);
  for (const auto& [role, set] : m) CHECK(!set.empty());
  // Creation is held by the developer and the security officer only.
  for (const auto& [role, set] : m)
    if (set.count(R::Creation))
      CHECK((role == Role::Developer || role == Role::SecurityOfficer));
}

TEST_CASE("registry CSV round-trips") {
  EvidenceRegistry reg = load_registry(sactest::read_fixture("registry.csv"));
  CHECK(reg.size() == 6);
  const EvidenceItem* policy = reg.find("ev_policy_audit");
  REQUIRE(policy != nullptr);
  CHECK(!policy->valid_days.has_value());
  CHECK(policy->owner_role == Role::SecurityOfficer);
  CHECK(policy->etype == EvidenceType::GapAnalysis);

  const std::string out = registry_to_csv(reg);
  EvidenceRegistry again = load_registry(out);
  CHECK(registry_to_csv(again) == out);
}

TEST_CASE("malformed registry rows are rejected") {
  CHECK_THROWS_AS(load_registry("id,title\n"), std::runtime_error);
  const std::string header = "id,title,type,uri,created_at,valid_days,owner_role\n";
  CHECK_THROWS_AS(load_registry(header + "e1,t,verification,u,not-a-date,,developer\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(load_registry(header + "e1,t,verification,u,2024-01-01,-3,developer\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(load_registry(header + "e1,t,sorcery,u,2024-01-01,,developer\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(load_registry(header + "e1,t,verification,u,2024-01-01,,wizard\n"),
                  std::runtime_error);
}

TEST_CASE("dates parse strictly and do arithmetic") {
  CHECK(Date::parse("2024-02-29").has_value());
  CHECK(!Date::parse("2023-02-29").has_value());
  CHECK(!Date::parse("2024-13-01").has_value());
  CHECK(!Date::parse("2024-1-1").has_value());
  CHECK(!Date::parse("20240101").has_value());
  Date d = *Date::parse("2024-01-01");
  CHECK(d.plus_days(365).to_string() == "2024-12-31");  // 2024 is a leap year
  CHECK(d.plus_days(366).to_string() == "2025-01-01");
  CHECK(Date{2024, 3, 1} > Date{2024, 2, 29});
}
