#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace sspace;

namespace {

FiniteStructure left_proj01(std::vector<PropertySpec> props = {}) {
  return samples::left_projection({"0", "1"}, std::move(props), "*");
}

Residual eval(const FiniteStructure& s, PropertyKind k, const std::string& op) { return evaluate_encoding(s, {k, op}); }

}  // namespace

TEST_CASE("encoding residuals on small tables") {
  auto z3 = samples::cyclic_group(3);
  CHECK(eval(z3, PropertyKind::Commutativity, "+").zero());

  auto lp = left_proj01();
  auto comm = eval(lp, PropertyKind::Commutativity, "*");
  CHECK_FALSE(comm.zero());
  CHECK(comm.witness == fx::names({"0", "1"}));
  CHECK(eval(lp, PropertyKind::RightIdentity, "*").zero());
  CHECK_FALSE(eval(lp, PropertyKind::LeftIdentity, "*").zero());

  Universe c({"0", "1"});
  OperationTable t("*", 2);
  t.set(0, 0, 0);
  t.set(0, 1, 1);
  t.set(1, 0, 1);
  auto partial = FiniteStructure::make(c, {t}, {});
  auto cl = eval(partial, PropertyKind::Closure, "*");
  CHECK_FALSE(cl.zero());
  CHECK(cl.witness == fx::names({"1", "1"}));
}

TEST_CASE("encoding errors") {
  auto z3 = samples::cyclic_group(3);
  CHECK_THROWS_AS(eval(z3, PropertyKind::Closure, "·"), Error);
  // Invertibility needs a declared identity
  auto lp = left_proj01();
  try {
    eval(lp, PropertyKind::Invertibility, "*");
    FAIL("expected MissingIdentityPrerequisite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingIdentityPrerequisite);
  }
  CHECK_THROWS_AS(StructureDescriptor::make({"*"}, {{PropertyKind::Invertibility, "*"}}), Error);
}

TEST_CASE("verify_descriptor") {
  auto z3 = samples::cyclic_group(3);
  auto r = verify_descriptor(z3);
  CHECK(r.passed());
  CHECK(r.properties.size() == 5);

  auto bad = verify_descriptor(left_proj01({{PropertyKind::Commutativity, "*"}}));
  CHECK_FALSE(bad.passed());
  CHECK(bad.properties.front().second.witness == fx::names({"0", "1"}));

  CHECK(verify_descriptor(left_proj01()).passed());
}

TEST_CASE("encoding residuals agree with direct predicates on all 2-element tables") {
  for (int code = 0; code < 16; ++code) {
    oracle::Table m{2, {code & 1, code >> 1 & 1, code >> 2 & 1, code >> 3 & 1}};
    auto s = oracle::to_structure(m, "*", {});
    for (auto k : kAllPropertyKinds) {
      if (k == PropertyKind::Invertibility) continue;
      CHECK(eval(s, k, "*").zero() == oracle::holds(m, k));
    }
  }
}

TEST_CASE("invertibility agrees with the direct predicate on unital 3-element tables") {
  int checked = 0;
  for (int code = 0; code < 19683; ++code) {
    oracle::Table m{3, std::vector<int>(9)};
    int c = code;
    for (int i = 0; i < 9; ++i, c /= 3) m.t[i] = c % 3;
    if (!oracle::identity(m)) continue;
    auto s = oracle::to_structure(m, "*", {{PropertyKind::Identity, "*"}, {PropertyKind::Invertibility, "*"}});
    REQUIRE(eval(s, PropertyKind::Invertibility, "*").zero() == oracle::invertible(m));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("partial tables: matched definedness for commutativity and associativity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    oracle::Table m{n, std::vector<int>(n * n)};
    for (auto& v : m.t) v = static_cast<int>(rng() % (n + 1)) - 1;
    auto s = oracle::to_structure(m);
    for (auto k : {PropertyKind::Closure, PropertyKind::Commutativity, PropertyKind::Associativity,
                   PropertyKind::LeftIdentity, PropertyKind::RightIdentity, PropertyKind::Identity})
      REQUIRE(eval(s, k, "*").zero() == oracle::holds(m, k));
  }
}

TEST_CASE("total tables always pass closure") {
  for (int n = 2; n <= 4; ++n) {
    auto t = OperationTable::from_function("*", n, [](std::size_t a, std::size_t) { return a; });
    std::vector<PointId> pts;
    for (int i = 0; i < n; ++i) pts.push_back(std::to_string(i));
    CHECK(eval(FiniteStructure::make(Universe(pts), {t}, {}), PropertyKind::Closure, "*").zero());
  }
}

TEST_CASE("descriptor equivalence") {
  auto plus = samples::cyclic_group(3, "", "+").descriptor();
  auto dot = samples::cyclic_group(3, "", "·").descriptor();
  auto v = descriptors_equivalent(plus, dot);
  CHECK(v.equivalent);
  CHECK(v.bijection.at("+") == "·");

  auto magma = samples::constant_magma({"0", "1", "2"}, "0", "·");
  auto closure_only = StructureDescriptor::make({"·"}, {{PropertyKind::Closure, "·"}});
  CHECK_FALSE(descriptors_equivalent(plus, closure_only).equivalent);
  CHECK_FALSE(descriptors_equivalent(plus, magma.descriptor()).equivalent);

  auto two = StructureDescriptor::make({"+", "*"}, {});
  auto one = StructureDescriptor::make({"+"}, {});
  auto r = descriptors_equivalent(two, one);
  CHECK_FALSE(r.equivalent);
  CHECK(r.reason == EquivalenceFailure::OperationCount);

  auto tagged = StructureDescriptor::make({"+"}, {}, {{"chart", "R"}});
  CHECK(descriptors_equivalent(one, tagged).reason == EquivalenceFailure::NonAlgebraic);
}

TEST_CASE("descriptor equivalence is an equivalence relation on a random pool") {
  std::mt19937 rng(23);
  const std::vector<std::string> pool = {"+", "*", "o"};
  std::vector<StructureDescriptor> ds;
  for (int i = 0; i < 40; ++i) {
    std::size_t k = 1 + rng() % 2;
    std::vector<std::string> ops(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<PropertySpec> props;
    for (const auto& op : ops)
      for (auto kind : {PropertyKind::Closure, PropertyKind::Commutativity, PropertyKind::Identity})
        if (rng() % 2) props.push_back({kind, op});
    ds.push_back(StructureDescriptor::make(ops, props));
  }
  const std::size_t n = ds.size();
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eq[i][j] = descriptors_equivalent(ds[i], ds[j]).equivalent;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(eq[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(eq[i][j] == eq[j][i]);
      for (std::size_t k = 0; k < n; ++k)
        if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
    }
  }
}

TEST_CASE("homomorphisms") {
  auto z2 = samples::cyclic_group(2);
  auto z4 = samples::cyclic_group(4);
  CHECK(is_homomorphism(z2, z4, {{"+", "+"}}, {{"0", "0"}, {"1", "2"}}).holds);
  auto bad = is_homomorphism(z2, z4, {{"+", "+"}}, {{"0", "0"}, {"1", "1"}});
  CHECK_FALSE(bad.holds);
  CHECK(bad.witness == fx::names({"1", "1"}));

  auto z3 = samples::cyclic_group(3);
  CHECK(is_homomorphism(z3, z3, {{"+", "+"}}, sspace::detail::identity_map(z3)).holds);
  CHECK_THROWS_AS(is_homomorphism(z3, z3, {{"x", "+"}}, sspace::detail::identity_map(z3)), Error);
}

TEST_CASE("identity maps are homomorphisms") {
  for (const auto& s : {samples::cyclic_group(5), samples::klein_four(), samples::symmetric_group_s3(),
                        samples::constant_magma({"p", "q"}, "p")}) {
    std::map<std::string, std::string> ops;
    for (const auto& op : s.descriptor().operations) ops[op] = op;
    CHECK(is_homomorphism(s, s, ops, sspace::detail::identity_map(s)).holds);
  }
}

TEST_CASE("isomorphisms") {
  auto z3 = samples::cyclic_group(3);
  auto relabeled = transport(z3, {{"0", "x"}, {"1", "y"}, {"2", "z"}});
  auto iso = find_isomorphism(z3, relabeled);
  REQUIRE(iso);
  CHECK(is_homomorphism(z3, relabeled, iso->operations, iso->elements).holds);

  CHECK_FALSE(find_isomorphism(samples::cyclic_group(4), samples::klein_four()));
  CHECK_FALSE(find_isomorphism(samples::cyclic_group(3), samples::cyclic_group(4)));
  CHECK(find_isomorphism(samples::cyclic_group(6), samples::cyclic_group(6, "g")));
  CHECK_FALSE(find_isomorphism(samples::cyclic_group(6), samples::symmetric_group_s3()));
}

TEST_CASE("find_isomorphism is symmetric on random 3-element magmas") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    oracle::Table a{3, std::vector<int>(9)}, b{3, std::vector<int>(9)};
    for (auto& v : a.t) v = static_cast<int>(rng() % 3);
    // b is either a relabelling of a or random
    if (rng() % 2) {
      std::vector<int> p = {0, 1, 2};
      std::shuffle(p.begin(), p.end(), rng);
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) b.t[p[x] * 3 + p[y]] = p[a.at(x, y)];
    } else {
      for (auto& v : b.t) v = static_cast<int>(rng() % 3);
    }
    auto sa = oracle::to_structure(a), sb = oracle::to_structure(b);
    CHECK(find_isomorphism(sa, sb).has_value() == find_isomorphism(sb, sa).has_value());
  }
}
