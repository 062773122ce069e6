#ifndef SSPACE_CONSTRUCTIONS_HPP
#define SSPACE_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sspace/algebra.hpp"
#include "sspace/error.hpp"
#include "sspace/space.hpp"
#include "sspace/topology.hpp"

namespace sspace {

using Partition = std::vector<std::vector<PointId>>;

// ---------------------------------------------------------------- products

inline const NonAlgTag kEmptyTag{"\xE2\x88\x85", ""};  // "∅"

// Componentwise product (x1,y1)·(x2,y2) = (x1·x2, y1·y2) for every pair of
// operations; a pair entry is defined iff both components are.
inline FiniteStructure product_structure(const FiniteStructure& a, const FiniteStructure& b) {
  auto origin = std::make_shared<ProductOrigin>();
  origin->left = std::make_shared<const FiniteStructure>(a);
  origin->right = std::make_shared<const FiniteStructure>(b);

  std::vector<PointId> names;
  for (const auto& x : a.carrier().names())
    for (const auto& y : b.carrier().names()) names.push_back(pair_name(x, y));
  Universe carrier(names);
  if (carrier.size() != a.size() * b.size())
    throw Error(Errc::DuplicatePoint, "pair names collide in product carrier");
  origin->elements.resize(carrier.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      origin->elements[carrier.index_of(pair_name(a.carrier().name(x), b.carrier().name(y)))] = {x, y};

  auto index = [&](std::size_t x, std::size_t y) {
    return carrier.index_of(pair_name(a.carrier().name(x), b.carrier().name(y)));
  };
  std::vector<OperationTable> tables;
  std::vector<std::string> ops;
  std::vector<PairPropertySpec> pairs;
  for (const auto& ta : a.tables()) {
    for (const auto& tb : b.tables()) {
      std::string op = pair_name(ta.name(), tb.name());
      OperationTable t(op, carrier.size());
      for (std::size_t p = 0; p < carrier.size(); ++p) {
        for (std::size_t q = 0; q < carrier.size(); ++q) {
          auto [p1, p2] = origin->elements[p];
          auto [q1, q2] = origin->elements[q];
          if (ta.defined(p1, q1) && tb.defined(p2, q2)) t.set(p, q, index(ta.at(p1, q1), tb.at(p2, q2)));
        }
      }
      for (const auto& l : a.descriptor().properties)
        if (l.op == ta.name())
          for (const auto& r : b.descriptor().properties)
            if (r.op == tb.name()) pairs.push_back({op, l, r});
      origin->operations[op] = {ta.name(), tb.name()};
      ops.push_back(op);
      tables.push_back(std::move(t));
    }
  }
  std::vector<NonAlgTag> tags;
  if (!a.descriptor().nonalg.empty() || !b.descriptor().nonalg.empty()) {
    auto left = a.descriptor().nonalg.empty() ? std::vector<NonAlgTag>{kEmptyTag} : a.descriptor().nonalg;
    auto right = b.descriptor().nonalg.empty() ? std::vector<NonAlgTag>{kEmptyTag} : b.descriptor().nonalg;
    for (const auto& l : left)
      for (const auto& r : right) tags.push_back({pair_name(l.label, r.label), pair_name(l.payload, r.payload)});
  }
  auto d = StructureDescriptor::make(std::move(ops), {}, std::move(tags), std::move(pairs));
  return FiniteStructure(std::move(carrier), std::move(tables), std::move(d), std::move(origin));
}

struct ProjectionMaps {
  std::map<std::string, std::string> operations;
  std::map<PointId, PointId> elements;
};

// Canonical projection of a product structure onto its left (0) or right (1) factor.
inline ProjectionMaps projection(const FiniteStructure& product, int side) {
  const auto& origin = product.product_origin();
  if (!origin) throw Error(Errc::InvalidDescriptor, "structure is not a product");
  const auto& factor = side == 0 ? *origin->left : *origin->right;
  ProjectionMaps m;
  for (const auto& [op, parts] : origin->operations) m.operations[op] = side == 0 ? parts.first : parts.second;
  for (std::size_t p = 0; p < product.size(); ++p) {
    auto idx = side == 0 ? origin->elements[p].first : origin->elements[p].second;
    m.elements[product.carrier().name(p)] = factor.carrier().name(idx);
  }
  return m;
}

inline void require_valid(const StructuredSpace& s, const std::string& what) {
  auto r = validate(s);
  if (!r.passed()) throw Error(Errc::ValidationFailed, what + ": " + r.violations.front().message);
}

inline StructuredSpace product(const StructuredSpace& s1, const StructuredSpace& s2) {
  require_valid(s1, "left factor");
  require_valid(s2, "right factor");
  auto space = product_topology(s1.space(), s2.space());
  std::vector<NamedStructure> structures;
  for (const auto& u : s1.neighborhoods())
    for (const auto& v : s2.neighborhoods())
      structures.emplace_back(pair_name(u.name, v.name), product_structure(u.structure, v.structure));
  std::map<PointId, std::string> assignment;
  for (std::size_t p = 0; p < s1.universe().size(); ++p) {
    for (std::size_t q = 0; q < s2.universe().size(); ++q) {
      assignment[pair_name(s1.universe().name(p), s2.universe().name(q))] =
          pair_name(s1.neighborhoods()[s1.assigned(p)].name, s2.neighborhoods()[s2.assigned(q)].name);
    }
  }
  auto out = StructuredSpace::assemble(std::move(space), std::move(structures), assignment);
  require_valid(out, "product");
  return out;
}

// ---------------------------------------------------- isomorphic replacement

// Transports tables (and product provenance) along a bijection of carriers.
inline FiniteStructure transport(const FiniteStructure& s, const std::map<PointId, PointId>& bijection) {
  std::vector<PointId> images;
  for (const auto& x : s.carrier().names()) {
    auto it = bijection.find(x);
    if (it == bijection.end()) throw Error(Errc::NonBijectiveReplacement, "replacement is not defined on '" + x + "'", {x});
    images.push_back(it->second);
  }
  if (bijection.size() != s.size())
    throw Error(Errc::NonBijectiveReplacement, "replacement maps points outside the carrier");
  std::vector<PointId> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw Error(Errc::NonBijectiveReplacement, "replacement collapses two points onto '" + *dup + "'", {*dup});
  Universe carrier(images);
  std::vector<std::size_t> to(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) to[x] = carrier.index_of(images[x]);
  std::vector<OperationTable> tables;
  for (const auto& t : s.tables()) {
    OperationTable u(t.name(), carrier.size());
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y)
        if (t.defined(x, y)) u.set(to[x], to[y], to[t.at(x, y)]);
    tables.push_back(std::move(u));
  }
  std::shared_ptr<const ProductOrigin> origin;
  if (s.product_origin()) {
    auto o = std::make_shared<ProductOrigin>(*s.product_origin());
    for (std::size_t x = 0; x < s.size(); ++x) o->elements[to[x]] = s.product_origin()->elements[x];
    origin = std::move(o);
  }
  return FiniteStructure(std::move(carrier), std::move(tables), s.descriptor(), std::move(origin));
}

// Replaces each listed neighborhood by an isomorphic copy on a new carrier and
// rebuilds the space on the union of the new carriers.
inline StructuredSpace replace_isomorphic(const StructuredSpace& s,
                                          const std::map<std::string, std::map<PointId, PointId>>& replacements) {
  for (const auto& [name, _] : replacements) s.neighborhood(name);
  std::vector<NamedStructure> structures;
  std::vector<std::map<PointId, PointId>> maps;
  for (const auto& n : s.neighborhoods()) {
    auto it = replacements.find(n.name);
    std::map<PointId, PointId> bijection;
    if (it != replacements.end()) {
      bijection = it->second;
    } else {
      for (const auto& p : n.structure.carrier().names()) bijection[p] = p;
    }
    structures.emplace_back(n.name, transport(n.structure, bijection));
    maps.push_back(std::move(bijection));
  }
  std::map<PointId, std::string> hints;
  for (std::size_t p = 0; p < s.universe().size(); ++p) {
    auto k = s.assigned(p);
    hints.emplace(maps[k].at(s.universe().name(p)), s.neighborhoods()[k].name);
  }
  return build_from_collection(std::move(structures), hints);
}

// ---------------------------------------------------------------- quotients

struct CongruenceSpec {
  std::string neighborhood;
  Partition blocks;
};

namespace detail {

// Validates a partition of the carrier and returns block index per element.
inline std::vector<std::size_t> block_of(const FiniteStructure& s, const Partition& blocks) {
  std::vector<std::size_t> out(s.size(), kUndefined);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error(Errc::InvalidPartition, "empty block");
    for (const auto& p : blocks[b]) {
      auto i = s.carrier().find(p);
      if (!i) throw Error(Errc::InvalidPartition, "block member '" + p + "' is outside the carrier", {p});
      if (out[*i] != kUndefined) throw Error(Errc::InvalidPartition, "point '" + p + "' lies in two blocks", {p});
      out[*i] = b;
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (out[i] == kUndefined)
      throw Error(Errc::InvalidPartition, "point '" + s.carrier().name(i) + "' is in no block", {s.carrier().name(i)});
  return out;
}

}  // namespace detail

struct CongruenceVerdict {
  bool holds = true;
  std::string op;
  std::vector<PointId> witness;  // a, a', b, b' with a~a', b~b' but a·b ≁ a'·b'
};

// A partition is a congruence when related operands give related results,
// and for partial operations when related operands are defined together.
inline CongruenceVerdict check_congruence(const FiniteStructure& s, const Partition& blocks) {
  auto block = detail::block_of(s, blocks);
  CongruenceVerdict v;
  const auto& c = s.carrier();
  const std::size_t n = s.size();
  for (const auto& t : s.tables()) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a2 = 0; a2 < n; ++a2) {
          if (block[a2] != block[a]) continue;
          for (std::size_t b2 = 0; b2 < n; ++b2) {
            if (block[b2] != block[b]) continue;
            auto r1 = t.at(a, b);
            auto r2 = t.at(a2, b2);
            bool ok = (r1 == kUndefined || r2 == kUndefined) ? r1 == r2 : block[r1] == block[r2];
            if (ok) continue;
            v.holds = false;
            v.op = t.name();
            v.witness = {c.name(a), c.name(a2), c.name(b), c.name(b2)};
            return v;
          }
        }
      }
    }
  }
  return v;
}

// Quotient structure on the blocks. `labels[k]` names block k; by default
// blocks are labeled "[b0]", "[b1]", ... in canonical block order.
inline FiniteStructure quotient_structure(const FiniteStructure& s, Partition blocks,
                                          std::optional<std::vector<PointId>> labels = std::nullopt) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  if (!labels) {
    std::vector<std::pair<PointSet, std::size_t>> order;
    for (std::size_t k = 0; k < blocks.size(); ++k) order.emplace_back(s.carrier().set_of(blocks[k]), k);
    std::sort(order.begin(), order.end());
    labels.emplace(blocks.size());
    for (std::size_t r = 0; r < order.size(); ++r) (*labels)[order[r].second] = "[b" + std::to_string(r) + "]";
  }
  auto verdict = check_congruence(s, blocks);
  if (!verdict.holds) {
    const auto& w = verdict.witness;
    throw Error(Errc::NotACongruence,
                "operation '" + verdict.op + "': " + w[0] + "~" + w[1] + " and " + w[2] + "~" + w[3] +
                    " but the products are not related",
                w);
  }
  if (blocks.size() < 2) throw Error(Errc::QuotientTooSmall, "quotient has fewer than two elements");
  auto block = detail::block_of(s, blocks);
  Universe carrier(*labels);
  std::vector<std::size_t> to(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) to[k] = carrier.index_of((*labels)[k]);
  std::vector<OperationTable> tables;
  for (const auto& t : s.tables()) {
    OperationTable q(t.name(), carrier.size());
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = 0; b < s.size(); ++b)
        if (t.defined(a, b)) q.set(to[block[a]], to[block[b]], to[block[t.at(a, b)]]);
    tables.push_back(std::move(q));
  }
  FiniteStructure out(std::move(carrier), std::move(tables), s.descriptor());
  auto report = verify_descriptor(out);
  if (!report.passed()) throw Error(Errc::DescriptorLost, "a declared property fails on the quotient");
  return out;
}

// Quotients every neighborhood by its congruence. Blocks are points of the
// new space; equal blocks (as subsets of the universe) coming from different
// neighborhoods are the same point. Labels follow canonical block order.
inline StructuredSpace quotient(const StructuredSpace& s, const std::vector<CongruenceSpec>& specs) {
  std::map<std::string, Partition> by_name;
  for (const auto& spec : specs) {
    s.neighborhood(spec.neighborhood);
    by_name[spec.neighborhood] = spec.blocks;
  }
  std::set<PointSet> all_blocks;
  for (const auto& n : s.neighborhoods()) {
    auto it = by_name.find(n.name);
    if (it == by_name.end())
      throw Error(Errc::InvalidPartition, "no congruence given for neighborhood '" + n.name + "'", {n.name});
    detail::block_of(n.structure, it->second);
    for (const auto& b : it->second) all_blocks.insert(s.universe().set_of(b));
  }
  std::map<PointSet, PointId> label;
  for (const auto& b : all_blocks) label.emplace(b, "[b" + std::to_string(label.size()) + "]");

  std::vector<NamedStructure> structures;
  std::map<PointId, std::string> hints;
  for (const auto& n : s.neighborhoods()) {
    const auto& blocks = by_name.at(n.name);
    std::vector<PointId> labels;
    for (const auto& b : blocks) labels.push_back(label.at(s.universe().set_of(b)));
    structures.emplace_back(n.name, quotient_structure(n.structure, blocks, labels));
  }
  for (std::size_t p = 0; p < s.universe().size(); ++p) {
    const auto& n = s.neighborhoods()[s.assigned(p)];
    for (const auto& b : by_name.at(n.name)) {
      if (std::find(b.begin(), b.end(), s.universe().name(p)) != b.end()) {
        hints.emplace(label.at(s.universe().set_of(b)), n.name);
        break;
      }
    }
  }
  return build_from_collection(std::move(structures), hints);
}

struct GroupView {
  std::string op;
  std::size_t identity;
  std::vector<std::size_t> inverse;
};

// Locates an operation declared and verified as a group operation.
inline GroupView group_view(const FiniteStructure& g) {
  for (const auto& t : g.tables()) {
    auto kinds = g.descriptor().kinds_of(t.name());
    bool declared = kinds.count(PropertyKind::Closure) && kinds.count(PropertyKind::Associativity) &&
                    kinds.count(PropertyKind::Identity) && kinds.count(PropertyKind::Invertibility);
    if (!declared) continue;
    bool verified = true;
    for (auto k : kinds) verified = verified && evaluate_encoding(g, {k, t.name()}).zero();
    if (!verified) continue;
    GroupView v{t.name(), *detail::find_two_sided_identity(t), std::vector<std::size_t>(g.size())};
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = 0; y < g.size(); ++y)
        if (t.at(x, y) == v.identity) v.inverse[x] = y;
    return v;
  }
  throw Error(Errc::NotAGroup, "no operation is declared and verified as a group operation");
}

// Left cosets of a normal subgroup, in canonical order.
inline Partition normal_subgroup_congruence(const FiniteStructure& g, const std::vector<PointId>& subgroup) {
  auto view = group_view(g);
  const auto& t = g.table(view.op);
  const auto& c = g.carrier();
  PointSet n = c.set_of(subgroup);
  if (!n.contains(view.identity))
    throw Error(Errc::NotASubgroup, "subgroup does not contain the identity", {c.name(view.identity)});
  for (auto a : n.members()) {
    if (!n.contains(view.inverse[a]))
      throw Error(Errc::NotASubgroup, "inverse of '" + c.name(a) + "' is missing", {c.name(a)});
    for (auto b : n.members())
      if (!n.contains(t.at(a, b)))
        throw Error(Errc::NotASubgroup, "subset is not closed", {c.name(a), c.name(b), c.name(t.at(a, b))});
  }
  for (std::size_t x = 0; x < g.size(); ++x) {
    for (auto a : n.members()) {
      auto conj = t.at(t.at(x, a), view.inverse[x]);
      if (!n.contains(conj))
        throw Error(Errc::NotNormal, "conjugate of '" + c.name(a) + "' by '" + c.name(x) + "' leaves the subgroup",
                    {c.name(x), c.name(a), c.name(conj)});
    }
  }
  std::set<PointSet> cosets;
  for (std::size_t x = 0; x < g.size(); ++x) {
    PointSet coset = c.empty_set();
    for (auto a : n.members()) coset.insert(t.at(x, a));
    cosets.insert(coset);
  }
  Partition out;
  for (const auto& coset : cosets) out.push_back(c.names_of(coset));
  return out;
}

// ----------------------------------------------------------- direct limits

// A finite directed system of algebras. `order` lists generating relations
// i <= j; `maps` holds f_{i,j} for i <= j (f_{i,i} may be omitted and is
// then the identity).
struct DirectSystem {
  std::string name;
  std::vector<std::string> index;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::string, FiniteStructure> algebras;
  std::map<std::pair<std::string, std::string>, std::map<PointId, PointId>> maps;
};

enum class SystemFault {
  BadIndex,
  NotPartialOrder,
  NotDirected,
  MissingMap,
  BadMap,
  IdentityViolated,
  CompositionViolated,
  NotHomomorphism,
  DescriptorMismatch
};

inline std::string_view to_string(SystemFault f) {
  switch (f) {
    case SystemFault::BadIndex: return "BadIndex";
    case SystemFault::NotPartialOrder: return "NotPartialOrder";
    case SystemFault::NotDirected: return "NotDirected";
    case SystemFault::MissingMap: return "MissingMap";
    case SystemFault::BadMap: return "BadMap";
    case SystemFault::IdentityViolated: return "IdentityViolated";
    case SystemFault::CompositionViolated: return "CompositionViolated";
    case SystemFault::NotHomomorphism: return "NotHomomorphism";
    case SystemFault::DescriptorMismatch: return "DescriptorMismatch";
  }
  return "?";
}

struct SystemViolation {
  SystemFault fault;
  std::vector<std::string> indices;  // (i), (i,j) or (i,j,k)
  std::vector<PointId> elements;
  std::string message;
};

struct SystemReport {
  std::vector<SystemViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace detail {

struct IndexOrder {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;
  std::size_t at(const std::string& i) const {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), i) - names.begin());
  }
};

inline std::optional<IndexOrder> index_order(const DirectSystem& d, SystemReport& report) {
  IndexOrder o{d.index, {}};
  const std::size_t n = d.index.size();
  std::set<std::string> unique(d.index.begin(), d.index.end());
  if (n == 0 || unique.size() != n) {
    report.violations.push_back({SystemFault::BadIndex, {}, {}, "index set must be nonempty and duplicate-free"});
    return std::nullopt;
  }
  bool bad = false;
  for (const auto& i : d.index) {
    if (!d.algebras.count(i)) {
      report.violations.push_back({SystemFault::BadIndex, {i}, {}, "index '" + i + "' has no algebra"});
      bad = true;
    }
  }
  o.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) o.leq[i][i] = true;
  for (const auto& [i, j] : d.order) {
    if (!unique.count(i) || !unique.count(j)) {
      report.violations.push_back({SystemFault::BadIndex, {i, j}, {}, "order relation names an unknown index"});
      bad = true;
      continue;
    }
    o.leq[o.at(i)][o.at(j)] = true;
  }
  if (bad) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (o.leq[i][k] && o.leq[k][j]) o.leq[i][j] = true;
  return o;
}

inline std::map<PointId, PointId> identity_map(const FiniteStructure& a) {
  std::map<PointId, PointId> m;
  for (const auto& p : a.carrier().names()) m[p] = p;
  return m;
}

// Operation pairing from algebra `a` to the reference algebra.
inline std::map<std::string, std::string> op_pairing(const FiniteStructure& a, const FiniteStructure& ref) {
  if (a.descriptor().operations == ref.descriptor().operations) {
    std::map<std::string, std::string> m;
    for (const auto& op : a.descriptor().operations) m[op] = op;
    return m;
  }
  return descriptors_equivalent(a.descriptor(), ref.descriptor()).bijection;
}

}  // namespace detail

// Fills in f_{i,i} and any f_{i,j} obtainable by composing known maps.
inline DirectSystem complete_by_composition(DirectSystem d) {
  SystemReport scratch;
  auto order = detail::index_order(d, scratch);
  if (!order) return d;
  const auto& idx = d.index;
  for (const auto& i : idx)
    if (!d.maps.count({i, i}) && d.algebras.count(i)) d.maps[{i, i}] = detail::identity_map(d.algebras.at(i));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& i : idx) {
      for (const auto& j : idx) {
        if (!order->leq[order->at(i)][order->at(j)] || d.maps.count({i, j})) continue;
        for (const auto& m : idx) {
          if (m == i || m == j) continue;
          auto a = d.maps.find({i, m});
          auto b = d.maps.find({m, j});
          if (a == d.maps.end() || b == d.maps.end()) continue;
          std::map<PointId, PointId> composed;
          for (const auto& [x, y] : a->second) {
            auto z = b->second.find(y);
            if (z != b->second.end()) composed[x] = z->second;
          }
          d.maps[{i, j}] = std::move(composed);
          changed = true;
          break;
        }
      }
    }
  }
  return d;
}

// Maps missing for related pairs are first filled in by composition; maps that
// are given are checked as given.
inline SystemReport validate_direct_system(const DirectSystem& input) {
  const DirectSystem d = complete_by_composition(input);
  SystemReport r;
  auto order = detail::index_order(d, r);
  if (!order) return r;
  const auto& idx = d.index;
  const std::size_t n = idx.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && order->leq[i][j] && order->leq[j][i])
        r.violations.push_back({SystemFault::NotPartialOrder, {idx[i], idx[j]}, {}, "indices are mutually related"});
  if (!r.passed()) return r;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool bound = false;
      for (std::size_t k = 0; k < n && !bound; ++k) bound = order->leq[i][k] && order->leq[j][k];
      if (!bound)
        r.violations.push_back({SystemFault::NotDirected, {idx[i], idx[j]}, {}, "indices have no common upper bound"});
    }
  }

  const auto& ref = d.algebras.at(idx.front());
  for (const auto& i : idx) {
    const auto& a = d.algebras.at(i);
    if (!descriptors_equivalent(a.descriptor(), ref.descriptor()).equivalent)
      r.violations.push_back({SystemFault::DescriptorMismatch, {i}, {}, "descriptor differs from the first algebra"});
  }
  if (!r.passed()) return r;

  // Resolved maps as index vectors; identity where f_{i,i} is omitted.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> f;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!order->leq[i][j]) continue;
      const auto& a = d.algebras.at(idx[i]);
      const auto& b = d.algebras.at(idx[j]);
      auto it = d.maps.find({idx[i], idx[j]});
      if (it == d.maps.end()) {
        if (i == j) {
          std::vector<std::size_t> id(a.size());
          std::iota(id.begin(), id.end(), 0);
          f[{i, j}] = std::move(id);
        } else {
          r.violations.push_back({SystemFault::MissingMap, {idx[i], idx[j]}, {}, "no map given for a related pair"});
        }
        continue;
      }
      std::vector<std::size_t> v(a.size(), kUndefined);
      bool ok = true;
      for (std::size_t x = 0; x < a.size() && ok; ++x) {
        auto e = it->second.find(a.carrier().name(x));
        auto y = e == it->second.end() ? std::nullopt : b.carrier().find(e->second);
        if (!y) {
          r.violations.push_back({SystemFault::BadMap, {idx[i], idx[j]}, {a.carrier().name(x)},
                                  "map is undefined on this element or leaves the target carrier"});
          ok = false;
        } else {
          v[x] = *y;
        }
      }
      if (ok) f[{i, j}] = std::move(v);
    }
  }
  if (!r.passed()) return r;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = f.at({i, i});
    for (std::size_t x = 0; x < v.size(); ++x) {
      if (v[x] != x) {
        const auto& c = d.algebras.at(idx[i]).carrier();
        r.violations.push_back({SystemFault::IdentityViolated, {idx[i]}, {c.name(x)}, "f_{i,i} moves this element"});
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !order->leq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || !order->leq[j][k]) continue;
        const auto& fij = f.at({i, j});
        const auto& fjk = f.at({j, k});
        const auto& fik = f.at({i, k});
        for (std::size_t x = 0; x < fij.size(); ++x) {
          if (fik[x] != fjk[fij[x]]) {
            const auto& c = d.algebras.at(idx[i]).carrier();
            r.violations.push_back({SystemFault::CompositionViolated, {idx[i], idx[j], idx[k]}, {c.name(x)},
                                    "f_{i,k}(x) differs from f_{j,k}(f_{i,j}(x))"});
            break;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!order->leq[i][j]) continue;
      const auto& a = d.algebras.at(idx[i]);
      const auto& b = d.algebras.at(idx[j]);
      auto to_ref = detail::op_pairing(a, ref);
      auto from_ref = detail::op_pairing(ref, b);
      std::vector<std::size_t> ops;
      for (const auto& t : a.tables()) ops.push_back(*b.table_index(from_ref.at(to_ref.at(t.name()))));
      auto h = is_homomorphism_indexed(a, b, ops, f.at({i, j}));
      if (!h.holds)
        r.violations.push_back({SystemFault::NotHomomorphism, {idx[i], idx[j]}, h.witness,
                                "f_{i,j} is not a homomorphism on '" + h.op + "': " + h.detail});
    }
  }
  return r;
}

struct DirectLimit {
  FiniteStructure algebra;
  std::map<std::string, std::map<PointId, PointId>> canonical;  // index -> (element -> class label)
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller root survives so every root is its class minimum.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Disjoint union of the algebras modulo x_i ~ f_{i,j}(x_i). Operations are
// computed at a common upper index and checked for independence from the
// choice of representatives and of that index.
inline DirectLimit direct_limit(const DirectSystem& system) {
  auto d = complete_by_composition(system);
  auto report = validate_direct_system(d);
  if (!report.passed())
    throw Error(Errc::InvalidDirectSystem, report.violations.front().message, report.violations.front().indices);
  SystemReport scratch;
  auto order = *detail::index_order(d, scratch);
  const auto& idx = d.index;
  const std::size_t n = idx.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + d.algebras.at(idx[i]).size();

  auto image = [&](std::size_t i, std::size_t j, std::size_t x) -> std::size_t {
    if (i == j) return x;
    const auto& a = d.algebras.at(idx[i]);
    const auto& b = d.algebras.at(idx[j]);
    return b.carrier().index_of(d.maps.at({idx[i], idx[j]}).at(a.carrier().name(x)));
  };

  detail::UnionFind uf(offset[n]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && order.leq[i][j])
        for (std::size_t x = 0; x < d.algebras.at(idx[i]).size(); ++x) uf.unite(offset[i] + x, offset[j] + image(i, j, x));

  std::map<std::size_t, std::size_t> class_of_root;
  std::vector<std::size_t> cls(offset[n]);
  for (std::size_t node = 0; node < offset[n]; ++node) {
    auto root = uf.find(node);
    auto it = class_of_root.emplace(root, class_of_root.size()).first;
    cls[node] = it->second;
  }
  const std::size_t classes = class_of_root.size();
  std::vector<PointId> labels;
  for (std::size_t k = 0; k < classes; ++k) labels.push_back("[b" + std::to_string(k) + "]");
  Universe carrier(labels);
  std::vector<std::size_t> to(classes);
  for (std::size_t k = 0; k < classes; ++k) to[k] = carrier.index_of(labels[k]);

  std::vector<std::pair<std::size_t, std::size_t>> members;  // node -> (index, element)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < d.algebras.at(idx[i]).size(); ++x) members.emplace_back(i, x);

  const auto& ref = d.algebras.at(idx.front());
  std::vector<std::map<std::string, std::string>> pairing;
  for (std::size_t i = 0; i < n; ++i) {
    auto to_ref = detail::op_pairing(d.algebras.at(idx[i]), ref);
    std::map<std::string, std::string> from_ref;
    for (const auto& [op, r] : to_ref) from_ref[r] = op;
    pairing.push_back(std::move(from_ref));
  }

  std::vector<OperationTable> tables;
  for (const auto& rt : ref.tables()) {
    OperationTable t(rt.name(), classes);
    std::vector<bool> seen(classes * classes, false);
    std::vector<std::size_t> value(classes * classes, kUndefined);
    for (std::size_t p = 0; p < members.size(); ++p) {
      for (std::size_t q = 0; q < members.size(); ++q) {
        auto [i, x] = members[p];
        auto [j, y] = members[q];
        for (std::size_t k = 0; k < n; ++k) {
          if (!order.leq[i][k] || !order.leq[j][k]) continue;
          const auto& tk = d.algebras.at(idx[k]).table(pairing[k].at(rt.name()));
          auto r = tk.at(image(i, k, x), image(j, k, y));
          std::size_t result = r == kUndefined ? kUndefined : cls[offset[k] + r];
          std::size_t cell = cls[p] * classes + cls[q];
          if (!seen[cell]) {
            seen[cell] = true;
            value[cell] = result;
          } else if (value[cell] != result) {
            throw Error(Errc::IllDefinedOperation,
                        "operation '" + rt.name() + "' depends on the chosen representatives",
                        {idx[i], d.algebras.at(idx[i]).carrier().name(x), idx[j],
                         d.algebras.at(idx[j]).carrier().name(y), idx[k]});
          }
        }
      }
    }
    for (std::size_t a = 0; a < classes; ++a)
      for (std::size_t b = 0; b < classes; ++b)
        if (value[a * classes + b] != kUndefined) t.set(to[a], to[b], to[value[a * classes + b]]);
    tables.push_back(std::move(t));
  }
  DirectLimit out{FiniteStructure(std::move(carrier), std::move(tables), ref.descriptor()), {}};
  if (!verify_descriptor(out.algebra).passed())
    throw Error(Errc::DescriptorLost, "a declared property fails on the direct limit");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = d.algebras.at(idx[i]);
    auto& phi = out.canonical[idx[i]];
    for (std::size_t x = 0; x < a.size(); ++x) phi[a.carrier().name(x)] = labels[cls[offset[i] + x]];
  }
  return out;
}

// One neighborhood per system, named after the system. Class labels are
// prefixed by the system name unless a gluing map (label -> point) is given.
inline StructuredSpace union_of_direct_limits(
    const std::vector<DirectSystem>& systems,
    const std::map<std::string, std::map<PointId, PointId>>& gluing = {}) {
  if (systems.empty()) throw Error(Errc::EmptyCollection, "no direct systems given");
  std::vector<NamedStructure> structures;
  for (const auto& d : systems) {
    auto limit = direct_limit(d);
    if (limit.algebra.size() < 2)
      throw Error(Errc::CarrierTooSmall, "direct limit of '" + d.name + "' has fewer than two elements", {d.name});
    std::map<PointId, PointId> relabel;
    auto g = gluing.find(d.name);
    for (const auto& label : limit.algebra.carrier().names()) {
      if (g != gluing.end() && g->second.count(label))
        relabel[label] = g->second.at(label);
      else
        relabel[label] = d.name + label;
    }
    structures.emplace_back(d.name, transport(limit.algebra, relabel));
  }
  return build_from_collection(std::move(structures));
}

}  // namespace sspace

#endif  // SSPACE_CONSTRUCTIONS_HPP
