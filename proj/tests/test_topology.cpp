#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace sspace;

namespace {

Universe abc() { return Universe({"a", "b", "c"}); }

FiniteSpace sierpinski() {
  Universe u({"a", "b"});
  return FiniteSpace::from_opens(u, {u.empty_set(), u.set_of({"a"}), u.full_set()});
}

FiniteSpace discrete(const Universe& u) {
  std::vector<std::vector<PointId>> singletons;
  for (const auto& p : u.names()) singletons.push_back({p});
  return generate_topology(u, singletons);
}

std::vector<std::vector<PointId>> open_names(const FiniteSpace& s) {
  std::vector<std::vector<PointId>> out;
  for (const auto& o : s.opens()) out.push_back(s.names_of(o));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("generate_topology closes the subbasis") {
  auto s = generate_topology(abc(), {{"a", "b"}, {"b", "c"}});
  using V = std::vector<std::vector<PointId>>;
  CHECK(open_names(s) == V{{}, {"a", "b"}, {"a", "b", "c"}, {"b"}, {"b", "c"}});

  Universe ab({"a", "b"});
  CHECK(generate_topology(ab, std::vector<PointSet>{}).opens().size() == 2);

  Universe five({"1", "2", "3", "4", "5"});
  CHECK(discrete(five).opens().size() == 32);
}

TEST_CASE("generate_topology rejects members outside the universe") {
  try {
    generate_topology(abc(), {{"a", "q"}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MemberOutsideUniverse);
  }
}

TEST_CASE("generate_topology agrees with the pairwise fixpoint on 4 points") {
  // every family of at most two subsets of a 4-point universe
  Universe u({"a", "b", "c", "d"});
  for (oracle::Mask x = 0; x < 16; ++x) {
    for (oracle::Mask y = x; y < 16; ++y) {
      std::vector<PointSet> sb = {oracle::to_set(4, x), oracle::to_set(4, y)};
      auto s = generate_topology(u, sb);
      REQUIRE(oracle::opens_of(s) == oracle::fixpoint_topology(4, {x, y}));
    }
  }
}

TEST_CASE("generated topologies are idempotent and keep the subbasis open") {
  std::mt19937 rng(7);
  Universe u({"a", "b", "c", "d", "e"});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PointSet> sb;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) sb.push_back(oracle::to_set(5, rng() % 32));
    auto s = generate_topology(u, sb);
    for (const auto& m : sb) CHECK(s.is_open(m));
    CHECK(generate_topology(u, s.opens()) == s);
  }
}

TEST_CASE("is_topology reports the first violation") {
  Universe ab({"a", "b"});
  CHECK(is_topology(ab, std::vector<PointSet>{ab.empty_set(), ab.set_of({"a"}), ab.full_set()}).ok);

  auto u = abc();
  auto v = is_topology(u, std::vector<PointSet>{u.empty_set(), u.set_of({"a"}), u.set_of({"b"}), u.full_set()});
  CHECK_FALSE(v.ok);
  CHECK(v.violation == TopologyViolation::MissingUnion);
  CHECK(u.names_of(v.missing) == fx::names({"a", "b"}));

  auto w = is_topology(ab, std::vector<PointSet>{ab.set_of({"a"}), ab.full_set()});
  CHECK_FALSE(w.ok);
  CHECK(w.violation == TopologyViolation::MissingEmpty);
  CHECK(w.missing.empty());

  CHECK_THROWS_AS(FiniteSpace::from_opens(Universe(std::vector<PointId>{}), {}), Error);
}

TEST_CASE("is_neighborhood") {
  auto s = sierpinski();
  CHECK(is_neighborhood(s, s.set_of({"a"}), "a"));
  CHECK_FALSE(is_neighborhood(s, s.set_of({"b"}), "b"));
  CHECK(is_neighborhood(s, s.universe().full_set(), "b"));
  CHECK_THROWS_AS(is_neighborhood(s, s.set_of({"a"}), "z"), Error);
}

TEST_CASE("borel atoms") {
  Universe ab({"a", "b"});
  CHECK(borel_atoms(discrete(ab)).size() == 2);
  auto indiscrete = generate_topology(ab, std::vector<PointSet>{});
  REQUIRE(borel_atoms(indiscrete).size() == 1);
  CHECK(borel_atoms(indiscrete)[0] == ab.full_set());

  auto s = generate_topology(abc(), {{"a", "b"}, {"b", "c"}});
  auto atoms = borel_atoms(s);
  REQUIRE(atoms.size() == 3);
  for (const auto& a : atoms) CHECK(a.size() == 1);
}

TEST_CASE("borel atoms match open-membership signatures") {
  std::mt19937 rng(11);
  Universe u({"a", "b", "c", "d", "e"});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PointSet> sb;
    for (int i = 0; i < 3; ++i) sb.push_back(oracle::to_set(5, rng() % 32));
    auto s = generate_topology(u, sb);
    std::set<oracle::Mask> got;
    oracle::Mask cover = 0;
    for (const auto& a : borel_atoms(s)) {
      auto m = oracle::to_mask(a);
      CHECK(m != 0);
      CHECK((cover & m) == 0);
      cover |= m;
      got.insert(m);
    }
    CHECK(cover == 31);
    CHECK(got == oracle::atoms_by_signature(5, oracle::opens_of(s)));
    // every open is a union of atoms
    for (const auto& o : s.opens())
      for (const auto& a : borel_atoms(s)) CHECK((a.is_subset_of(o) || !a.intersects(o)));
  }
}

TEST_CASE("extension topology") {
  Universe ab({"a", "b"});
  auto indiscrete = generate_topology(ab, std::vector<PointSet>{});
  auto e = extension_topology(indiscrete, {"z"});
  using V = std::vector<std::vector<PointId>>;
  CHECK(open_names(e) == V{{}, {"a", "b"}, {"a", "b", "z"}, {"z"}});
  CHECK(extension_topology(indiscrete, {}) == indiscrete);
  CHECK(extension_topology(sierpinski(), {"z"}).opens().size() == 6);
  CHECK_THROWS_AS(extension_topology(sierpinski(), {"a"}), Error);
}

TEST_CASE("extension topology is K ∪ Q and restricts to the old topology") {
  std::mt19937 rng(5);
  Universe u({"a", "b", "c"});
  for (int trial = 0; trial < 50; ++trial) {
    auto s = generate_topology(u, std::vector<PointSet>{oracle::to_set(3, rng() % 8), oracle::to_set(3, rng() % 8)});
    auto e = extension_topology(s, {"y", "z"});
    // a, b, c keep indices 0..2 only if names sort first; compare by names
    std::set<std::vector<PointId>> expect;
    for (const auto& k : s.opens())
      for (int q = 0; q < 4; ++q) {
        auto n = s.names_of(k);
        if (q & 1) n.push_back("y");
        if (q & 2) n.push_back("z");
        std::sort(n.begin(), n.end());
        expect.insert(n);
      }
    std::set<std::vector<PointId>> got;
    for (const auto& o : e.opens()) got.insert(e.names_of(o));
    CHECK(got == expect);

    std::set<std::vector<PointId>> restricted;
    for (const auto& o : e.opens()) {
      auto n = e.names_of(o);
      n.erase(std::remove_if(n.begin(), n.end(), [](const PointId& p) { return p == "y" || p == "z"; }), n.end());
      restricted.insert(n);
    }
    std::set<std::vector<PointId>> old;
    for (const auto& o : s.opens()) old.insert(s.names_of(o));
    CHECK(restricted == old);
  }
}

TEST_CASE("product topology") {
  Universe ab({"a", "b"}), cd({"c", "d"});
  CHECK(product_topology(discrete(ab), discrete(cd)).opens().size() == 16);
  auto ind = product_topology(generate_topology(ab, std::vector<PointSet>{}), generate_topology(cd, std::vector<PointSet>{}));
  CHECK(ind.opens().size() == 2);

  auto s = sierpinski();
  auto p = product_topology(s, s);
  CHECK(p.opens().size() == 6);
  // against the fixpoint of all 9 open rectangles
  std::vector<oracle::Mask> rects;
  for (const auto& a : s.opens())
    for (const auto& b : s.opens()) {
      oracle::Mask m = 0;
      for (auto x : a.members())
        for (auto y : b.members()) m |= oracle::Mask{1} << p.universe().index_of(pair_name(s.universe().name(x), s.universe().name(y)));
      rects.push_back(m);
    }
  CHECK(oracle::opens_of(p) == oracle::fixpoint_topology(4, rects));
}

TEST_CASE("connectivity") {
  auto s = connectivity_report(sierpinski());
  CHECK(s.connected);
  CHECK(s.hyperconnected);
  CHECK(s.ultraconnected);

  Universe ab({"a", "b"});
  auto d = connectivity_report(discrete(ab));
  CHECK_FALSE(d.connected);
  REQUIRE(d.disconnection);
  CHECK(d.disconnection->first == ab.set_of({"a"}));
  CHECK(d.disconnection->second == ab.set_of({"b"}));
  CHECK_FALSE(d.hyperconnected);
  CHECK_FALSE(d.ultraconnected);

  auto i = connectivity_report(generate_topology(abc(), std::vector<PointSet>{}));
  CHECK((i.connected && i.hyperconnected && i.ultraconnected));
}

TEST_CASE("hyper- and ultraconnectedness imply connectedness") {
  std::mt19937 rng(3);
  Universe u({"a", "b", "c", "d"});
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PointSet> sb;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) sb.push_back(oracle::to_set(4, rng() % 16));
    auto s = generate_topology(u, sb);
    auto r = connectivity_report(s);
    if (r.hyperconnected || r.ultraconnected) CHECK(r.connected);
    // brute force over pairs of opens
    bool disjoint_opens = false, splits = false, disjoint_closed = false;
    for (const auto& a : s.opens())
      for (const auto& b : s.opens()) {
        if (a.empty() || b.empty() || a.intersects(b)) continue;
        disjoint_opens = true;
        if ((a | b) == u.full_set()) splits = true;
      }
    for (const auto& a : s.opens())
      for (const auto& b : s.opens()) {
        auto ca = a.complement(), cb = b.complement();
        if (!ca.empty() && !cb.empty() && !ca.intersects(cb)) disjoint_closed = true;
      }
    CHECK(r.connected == !splits);
    CHECK(r.hyperconnected == !disjoint_opens);
    CHECK(r.ultraconnected == !disjoint_closed);
    // a completely open collection with two distinct members in a
    // hyperconnected space has an intersecting pair
    if (r.hyperconnected && s.opens().size() >= 4) {
      std::vector<PointSet> nonempty;
      for (const auto& o : s.opens())
        if (!o.empty()) nonempty.push_back(o);
      CHECK(nonempty[0].intersects(nonempty[1]));
    }
  }
}

TEST_CASE("complete openness") {
  Universe ab({"a", "b"});
  auto d = discrete(ab);
  std::vector<PointSet> any = {ab.set_of({"a"}), ab.set_of({"b"})};
  auto r = check_complete_openness(d, any);
  CHECK((r.completely_open && r.completely_closed));

  auto s = sierpinski();
  std::vector<PointSet> a = {s.set_of({"a"})};
  auto q = check_complete_openness(s, a);
  CHECK(q.completely_open);
  CHECK_FALSE(q.completely_closed);

  Universe u({"a", "b", "c", "d"});
  auto c = FiniteSpace::from_opens(u, {u.empty_set(), u.set_of({"a", "b"}), u.set_of({"c", "d"}), u.full_set()});
  std::vector<PointSet> halves = {u.set_of({"a", "b"}), u.set_of({"c", "d"})};
  auto h = check_complete_openness(c, halves);
  CHECK((h.completely_open && h.completely_closed));
  CHECK_FALSE(connectivity_report(c).connected);
}
