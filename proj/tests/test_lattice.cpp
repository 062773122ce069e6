#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace sspace;

namespace {

Poset diamond() { return Poset::from_covers({"b", "l", "r", "t"}, {{"b", "l"}, {"b", "r"}, {"l", "t"}, {"r", "t"}}); }

Poset from_matrix(const std::vector<std::vector<bool>>& r) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r.size(); ++i) labels.push_back("p" + std::to_string(i));
  return Poset::from_relation(labels, r);
}

// Random order: a random DAG on a shuffled ranking, transitively closed.
std::vector<std::vector<bool>> random_order(int n, std::mt19937& rng) {
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rank[i] < rank[j] && rng() % 4 == 0) r[i][j] = true;
  auto o = oracle::close(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = o.up[i] >> j & 1;
  return r;
}

void check_against_oracle(const std::vector<std::vector<bool>>& r) {
  const int n = static_cast<int>(r.size());
  auto o = oracle::close(n, r);
  auto v = verify_lattice(from_matrix(r));
  REQUIRE(v.is_lattice == oracle::is_lattice(o));
  if (!v.is_lattice) return;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      REQUIRE(static_cast<int>(v.join_table[a][b]) == *oracle::join(o, a, b));
      REQUIRE(static_cast<int>(v.meet_table[a][b]) == *oracle::meet(o, a, b));
    }
}

}  // namespace

TEST_CASE("h map of F1") {
  auto s = fx::f1();
  auto h = h_map(s);
  CHECK(h.at("1") == std::vector<std::string>{"U_a"});
  CHECK(h.at("2") == std::vector<std::string>{"U_a", "U_b"});
  CHECK(h.at("3") == std::vector<std::string>{"U_b"});
  CHECK(is_h_surjective(s).holds);
}

TEST_CASE("h surjectivity reports missing subcollections") {
  auto split = build_from_collection({{"A", fx::zn({"1", "2"})}, {"B", fx::zn({"3", "4"})}});
  auto v = is_h_surjective(split);
  CHECK_FALSE(v.holds);
  CHECK(v.missing == std::vector<std::vector<std::string>>{{"A", "B"}});

  auto three = build_from_collection(
      {{"A", fx::zn({"1", "2"})}, {"B", fx::zn({"2", "3"})}, {"C", fx::zn({"3", "4"})}});
  auto w = is_h_surjective(three);
  CHECK(w.missing == std::vector<std::vector<std::string>>{{"B"}, {"A", "C"}, {"A", "B", "C"}});
}

TEST_CASE("induced poset of F1 has no meet of the extremes") {
  auto q = induced_poset(fx::f1());
  CHECK(q.order.labels() == std::vector<std::string>{"[1]", "[2]", "[3]"});
  CHECK(q.surjective);
  auto v = verify_lattice(q);
  CHECK_FALSE(v.is_lattice);
  CHECK(v.counterexample == std::make_pair(std::string("[1]"), std::string("[3]")));
  CHECK(v.missing == "meet");
  CHECK(v.join_is_union == true);
}

TEST_CASE("poset construction") {
  auto d = diamond();
  CHECK(d.leq(*d.find("b"), *d.find("t")));
  CHECK_FALSE(d.leq(*d.find("l"), *d.find("r")));
  CHECK(d.covers().size() == 4);
  try {
    Poset::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    FAIL("expected NotAPartialOrder");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAPartialOrder);
  }
  CHECK_THROWS_AS(Poset::from_covers({"a"}, {{"a", "z"}}), Error);
}

TEST_CASE("verify_lattice agrees with the oracle on every poset of up to 4 elements") {
  std::size_t count = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& r : oracle::all_posets(n)) {
      check_against_oracle(r);
      ++count;
    }
  CHECK(count == 1 + 3 + 19 + 219);
}

TEST_CASE("verify_lattice agrees with the oracle on random posets up to 12 elements") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 400; ++trial) check_against_oracle(random_order(2 + static_cast<int>(rng() % 11), rng));
}

TEST_CASE("chains and power sets are lattices") {
  for (int n = 2; n <= 8; ++n) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) r[i][j] = true;
    CHECK(verify_lattice(from_matrix(r)).is_lattice);
  }
  std::vector<std::vector<bool>> cube(8, std::vector<bool>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) cube[i][j] = (i & ~j) == 0;
  CHECK(verify_lattice(from_matrix(cube)).is_lattice);
}

TEST_CASE("surjective h makes joins unions") {
  std::mt19937 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<NamedStructure> ns;
    int k = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < k; ++i) {
      std::set<PointId> pts;
      int size = 2 + static_cast<int>(rng() % 4);
      while (static_cast<int>(pts.size()) < size) pts.insert(std::to_string(rng() % 7));
      ns.emplace_back(std::string(1, static_cast<char>('A' + i)), fx::zn({pts.begin(), pts.end()}));
    }
    StructuredSpace s;
    try {
      s = build_from_collection(ns);
    } catch (const Error&) {
      continue;
    }
    auto q = induced_poset(s);
    if (!q.surjective) continue;
    ++checked;
    CHECK(verify_lattice(q).join_is_union == true);
  }
  CHECK(checked > 0);
}

TEST_CASE("converse construction") {
  auto c = lattice_to_structured_space(diamond());
  CHECK(validate(c.space).passed());
  CHECK(c.space.neighborhood_names() == std::vector<std::string>{"Y"});
  CHECK(c.space.space().opens().size() == 2);
  CHECK(c.equivalence.size() == 4);
  CHECK(c.h_hat.at("l") == std::vector<std::string>{"Y"});
  const auto& y = c.space.neighborhood("Y").structure;
  const auto& u = y.carrier();
  CHECK(u.name(y.table("join").at(u.index_of("l"), u.index_of("r"))) == "t");
  CHECK(u.name(y.table("meet").at(u.index_of("l"), u.index_of("r"))) == "b");

  auto vee = Poset::from_covers({"b", "l", "r"}, {{"b", "l"}, {"b", "r"}});
  try {
    lattice_to_structured_space(vee);
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotALattice);
    CHECK(e.witness() == fx::names({"l", "r"}));
  }
  try {
    lattice_to_structured_space(Poset::from_covers({"x"}, {}));
    FAIL("expected TooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooSmall);
  }
}

TEST_CASE("converse tables satisfy the lattice laws") {
  std::mt19937 rng(67);
  int built = 0;
  for (int trial = 0; trial < 300 && built < 40; ++trial) {
    auto r = random_order(2 + static_cast<int>(rng() % 7), rng);
    auto p = from_matrix(r);
    if (!verify_lattice(p).is_lattice) continue;
    ++built;
    auto c = lattice_to_structured_space(p);
    const auto& y = c.space.neighborhood("Y").structure;
    CHECK(verify_descriptor(y).passed());
    const auto& j = y.table("join");
    const auto& m = y.table("meet");
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) {
        CHECK(j.at(a, m.at(a, b)) == a);
        CHECK(m.at(a, j.at(a, b)) == a);
      }
  }
  CHECK(built > 0);
}

TEST_CASE("DOT output") {
  auto dot = to_dot(induced_poset(fx::f1()));
  CHECK(dot.find("rankdir=BT;") != std::string::npos);
  CHECK(dot.find("n0 -> n1;") != std::string::npos);
  CHECK(dot.find("n2 -> n1;") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 2);
  CHECK(quote_dot("a\"b") == "\"a\\\"b\"");
}
