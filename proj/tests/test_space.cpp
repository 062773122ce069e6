#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace sspace;

namespace {

StructuredSpace with_opens(const std::vector<std::vector<PointId>>& opens, std::vector<NamedStructure> structures,
                           const std::map<PointId, std::string>& assignment) {
  Universe u(carrier_union(structures));
  std::vector<PointSet> fam;
  for (const auto& o : opens) fam.push_back(u.set_of(o));
  return StructuredSpace::assemble(FiniteSpace::from_opens(u, fam), std::move(structures), assignment);
}

bool has_kind(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("F1 validates and carries the generated topology") {
  auto s = fx::f1();
  CHECK(validate(s).passed());
  using V = std::vector<std::vector<PointId>>;
  V opens;
  for (const auto& o : s.space().opens()) opens.push_back(s.space().names_of(o));
  std::sort(opens.begin(), opens.end());
  CHECK(opens == V{{}, {"1", "2"}, {"1", "2", "3"}, {"2"}, {"2", "3"}});
  CHECK(s.assignment() == std::map<PointId, std::string>{{"1", "U_a"}, {"2", "U_a"}, {"3", "U_b"}});
}

TEST_CASE("validation failures") {
  SECTION("carrier is not a neighborhood of its point") {
    auto s = with_opens({{}, {"2", "3"}, {"1", "2", "3"}},
                        {{"U", fx::zn({"1", "2"})}, {"V", fx::zn({"2", "3"})}},
                        {{"1", "U"}, {"2", "V"}, {"3", "V"}});
    auto r = validate(s);
    REQUIRE_FALSE(r.passed());
    CHECK(r.violations.front().kind == ViolationKind::NotANeighborhood);
    CHECK(r.violations.front().neighborhood == "U");
    CHECK(r.violations.front().point == "1");
  }
  SECTION("point outside its fixed carrier") {
    auto s = with_opens({{}, {"1", "2", "3"}}, {{"U", fx::zn({"1", "2"})}, {"V", fx::zn({"2", "3"})}},
                        {{"1", "V"}, {"2", "V"}, {"3", "V"}});
    CHECK(has_kind(validate(s), ViolationKind::PointNotInCarrier));
  }
  SECTION("declared property fails") {
    auto lp = samples::left_projection({"1", "2"}, {{PropertyKind::Commutativity, "*"}}, "*");
    auto s = with_opens({{}, {"1", "2"}}, {{"U", lp}}, {{"1", "U"}, {"2", "U"}});
    auto r = validate(s);
    REQUIRE(has_kind(r, ViolationKind::PropertyFails));
    CHECK(r.violations.front().witness == fx::names({"1", "2"}));
  }
  SECTION("unknown names in the assignment") {
    CHECK_THROWS_AS(with_opens({{}, {"1", "2"}}, {{"U", fx::zn({"1", "2"})}}, {{"1", "W"}, {"2", "U"}}), Error);
    CHECK_THROWS_AS(with_opens({{}, {"1", "2"}}, {{"U", fx::zn({"1", "2"})}}, {{"1", "U"}}), Error);
  }
}

TEST_CASE("build_from_collection rejects bad inputs") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::SyntaxError;
  };
  CHECK(code([] { build_from_collection({}); }) == Errc::EmptyCollection);
  auto lp = samples::left_projection({"1", "2"}, {{PropertyKind::Commutativity, "*"}}, "*");
  CHECK(code([&] { build_from_collection({{"U", lp}}); }) == Errc::UnverifiedStructure);
  CHECK(code([] { build_from_collection({{"U", fx::zn({"1", "2"})}}, {{"1", "W"}}); }) == Errc::UnknownNeighborhood);
  CHECK(code([] {
          build_from_collection({{"U", fx::zn({"1", "2"})}, {"V", fx::zn({"2", "3"})}}, {{"1", "V"}});
        }) == Errc::InvalidAssignment);
}

TEST_CASE("structure maps") {
  auto s = fx::f1();
  CHECK(structure_map(s, "U_a") == structure_map(s, "U_b"));
  CHECK(modified_structure_map(s, "3") == structure_map(s, "U_b"));
  CHECK(descriptor_catalog(s).size() == 1);
  CHECK_THROWS_AS(structure_map(s, "nope"), Error);

  auto mixed = build_from_collection(
      {{"G", fx::zn({"1", "2"})}, {"M", samples::constant_magma({"2", "3"}, "2", "*")}});
  auto cat = descriptor_catalog(mixed);
  REQUIRE(cat.size() == 2);
  CHECK(cat[0].neighborhoods == std::vector<std::string>{"G"});
}

TEST_CASE("identical duplicate neighborhoods collapse") {
  auto s = build_from_collection({{"A", fx::zn({"1", "2"})}, {"B", fx::zn({"1", "2"})}});
  CHECK(s.neighborhoods().size() == 1);
  CHECK(s.neighborhood_names() == std::vector<std::string>{"A"});
}

TEST_CASE("subspace on a subfamily") {
  auto s = build_from_collection(
      {{"A", fx::zn({"1", "2"})}, {"B", fx::zn({"2", "3"})}, {"C", fx::zn({"3", "4"})}});
  auto sub = subspace(s, {"A", "B"});
  CHECK(sub.universe().names() == fx::names({"1", "2", "3"}));
  CHECK(validate(sub).passed());
  CHECK_THROWS_AS(subspace(s, {}), Error);
  CHECK_THROWS_AS(subspace(s, {"Z"}), Error);
}

TEST_CASE("subspace opens are traces of opens") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<NamedStructure> ns;
    int k = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      std::set<PointId> pts;
      while (pts.size() < 2) pts.insert(std::to_string(rng() % 6));
      ns.emplace_back("N" + std::to_string(i), fx::zn({pts.begin(), pts.end()}));
    }
    StructuredSpace s;
    try {
      s = build_from_collection(ns);
    } catch (const Error&) {
      continue;
    }
    auto names = s.neighborhood_names();
    std::vector<std::string> sub(names.begin(), names.begin() + 1 + static_cast<std::ptrdiff_t>(rng() % names.size()));
    auto t = subspace(s, sub);
    PointSet span = s.universe().set_of(t.universe().names());
    std::set<std::vector<PointId>> traces, got;
    for (const auto& o : s.space().opens()) traces.insert(s.universe().names_of(o & span));
    for (const auto& o : t.space().opens()) got.insert(t.universe().names_of(o));
    CHECK(traces == got);
  }
}
