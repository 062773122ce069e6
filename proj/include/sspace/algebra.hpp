#ifndef SSPACE_ALGEBRA_HPP
#define SSPACE_ALGEBRA_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sspace/error.hpp"
#include "sspace/pointset.hpp"

namespace sspace {

enum class PropertyKind { Closure, Commutativity, Associativity, LeftIdentity, RightIdentity, Identity, Invertibility };

inline constexpr std::array<PropertyKind, 7> kAllPropertyKinds = {
    PropertyKind::Closure,      PropertyKind::Commutativity, PropertyKind::Associativity, PropertyKind::LeftIdentity,
    PropertyKind::RightIdentity, PropertyKind::Identity,     PropertyKind::Invertibility};

inline std::string_view to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::Closure: return "Closure";
    case PropertyKind::Commutativity: return "Commutativity";
    case PropertyKind::Associativity: return "Associativity";
    case PropertyKind::LeftIdentity: return "LeftIdentity";
    case PropertyKind::RightIdentity: return "RightIdentity";
    case PropertyKind::Identity: return "Identity";
    case PropertyKind::Invertibility: return "Invertibility";
  }
  return "?";
}

inline std::optional<PropertyKind> parse_property_kind(std::string_view s) {
  for (auto k : kAllPropertyKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct PropertySpec {
  PropertyKind kind;
  std::string op;
  auto operator<=>(const PropertySpec&) const = default;
};

// Property of a componentwise product operation: `left` holds on the left
// factor's operation and `right` on the right factor's.
struct PairPropertySpec {
  std::string op;
  PropertySpec left;
  PropertySpec right;
  auto operator<=>(const PairPropertySpec&) const = default;
};

struct NonAlgTag {
  std::string label;
  std::string payload;
  auto operator<=>(const NonAlgTag&) const = default;
};

// The value of the structure map on one neighborhood: the operations (as a
// sorted name list), the declared properties (as sets) and the
// non-algebraic tags (as a sorted multiset; empty means "no extra
// structure").
struct StructureDescriptor {
  std::vector<std::string> operations;
  std::set<PropertySpec> properties;
  std::set<PairPropertySpec> pair_properties;
  std::vector<NonAlgTag> nonalg;

  static StructureDescriptor make(std::vector<std::string> operations, std::vector<PropertySpec> properties,
                                  std::vector<NonAlgTag> nonalg = {},
                                  std::vector<PairPropertySpec> pair_properties = {}) {
    StructureDescriptor d;
    std::sort(operations.begin(), operations.end());
    if (std::adjacent_find(operations.begin(), operations.end()) != operations.end())
      throw Error(Errc::InvalidDescriptor, "duplicate operation name");
    d.operations = std::move(operations);
    auto known = [&](const std::string& op) {
      return std::binary_search(d.operations.begin(), d.operations.end(), op);
    };
    for (auto& p : properties) {
      if (!known(p.op))
        throw Error(Errc::UnknownOperation, "property " + std::string(to_string(p.kind)) + " names unknown operation '" +
                                                p.op + "'", {p.op});
      d.properties.insert(std::move(p));
    }
    for (const auto& p : d.properties) {
      if (p.kind == PropertyKind::Invertibility && !d.properties.count({PropertyKind::Identity, p.op}))
        throw Error(Errc::MissingIdentityPrerequisite,
                    "Invertibility on '" + p.op + "' requires an Identity property on the same operation", {p.op});
    }
    for (auto& p : pair_properties) {
      if (!known(p.op)) throw Error(Errc::UnknownOperation, "pair property names unknown operation '" + p.op + "'", {p.op});
      d.pair_properties.insert(std::move(p));
    }
    std::sort(nonalg.begin(), nonalg.end());
    d.nonalg = std::move(nonalg);
    return d;
  }

  // Property kinds declared on one operation.
  std::set<PropertyKind> kinds_of(const std::string& op) const {
    std::set<PropertyKind> out;
    for (const auto& p : properties)
      if (p.op == op) out.insert(p.kind);
    return out;
  }
  std::set<std::pair<PropertyKind, PropertyKind>> pair_kinds_of(const std::string& op) const {
    std::set<std::pair<PropertyKind, PropertyKind>> out;
    for (const auto& p : pair_properties)
      if (p.op == op) out.emplace(p.left.kind, p.right.kind);
    return out;
  }

  bool operator==(const StructureDescriptor&) const = default;
};

inline constexpr std::size_t kUndefined = std::numeric_limits<std::size_t>::max();

// Partial binary operation on carrier indices 0..n-1, stored densely.
class OperationTable {
 public:
  OperationTable() = default;
  OperationTable(std::string name, std::size_t carrier_size)
      : name_(std::move(name)), n_(carrier_size), cells_(carrier_size * carrier_size, kUndefined) {}

  template <class F>
  static OperationTable from_function(std::string name, std::size_t n, F&& f) {
    OperationTable t(std::move(name), n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t.set(a, b, f(a, b));
    return t;
  }

  const std::string& name() const { return name_; }
  std::size_t carrier_size() const { return n_; }

  bool defined(std::size_t a, std::size_t b) const { return cells_[a * n_ + b] != kUndefined; }
  // kUndefined when the pair is outside the domain.
  std::size_t at(std::size_t a, std::size_t b) const { return cells_[a * n_ + b]; }

  void set(std::size_t a, std::size_t b, std::size_t c) {
    if (a >= n_ || b >= n_ || (c >= n_ && c != kUndefined))
      throw Error(Errc::InvalidTable, "entry outside carrier in operation '" + name_ + "'");
    cells_[a * n_ + b] = c;
  }
  void unset(std::size_t a, std::size_t b) { cells_[a * n_ + b] = kUndefined; }

  std::size_t domain_size() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](auto c) { return c != kUndefined; }));
  }
  bool is_total() const { return domain_size() == cells_.size(); }

  OperationTable renamed(std::string name) const {
    OperationTable t = *this;
    t.name_ = std::move(name);
    return t;
  }

  bool operator==(const OperationTable&) const = default;

 private:
  std::string name_;
  std::size_t n_ = 0;
  std::vector<std::size_t> cells_;
};

class FiniteStructure;

// Records that a structure is the componentwise product of two factors.
struct ProductOrigin {
  std::shared_ptr<const FiniteStructure> left;
  std::shared_ptr<const FiniteStructure> right;
  std::vector<std::pair<std::size_t, std::size_t>> elements;              // carrier index -> factor indices
  std::map<std::string, std::pair<std::string, std::string>> operations;  // product op -> factor ops
};

// A finite carrier with named operation tables and a declared descriptor.
class FiniteStructure {
 public:
  FiniteStructure() = default;

  FiniteStructure(Universe carrier, std::vector<OperationTable> tables, StructureDescriptor descriptor,
                  std::shared_ptr<const ProductOrigin> product = nullptr)
      : carrier_(std::move(carrier)),
        tables_(std::move(tables)),
        descriptor_(std::move(descriptor)),
        product_(std::move(product)) {
    std::sort(tables_.begin(), tables_.end(), [](const auto& a, const auto& b) { return a.name() < b.name(); });
    std::vector<std::string> names;
    for (const auto& t : tables_) {
      if (t.carrier_size() != carrier_.size())
        throw Error(Errc::InvalidTable, "operation '" + t.name() + "' is not sized to the carrier");
      names.push_back(t.name());
    }
    if (names != descriptor_.operations)
      throw Error(Errc::InvalidDescriptor, "descriptor operations do not match the operation tables");
  }

  static FiniteStructure make(Universe carrier, std::vector<OperationTable> tables,
                              std::vector<PropertySpec> properties, std::vector<NonAlgTag> nonalg = {}) {
    std::vector<std::string> names;
    for (const auto& t : tables) names.push_back(t.name());
    auto d = StructureDescriptor::make(std::move(names), std::move(properties), std::move(nonalg));
    return FiniteStructure(std::move(carrier), std::move(tables), std::move(d));
  }

  // Builds a table from [a, b, c] entries meaning a·b = c.
  static OperationTable table_from_entries(const Universe& carrier, const std::string& name,
                                           const std::vector<std::array<PointId, 3>>& entries) {
    OperationTable t(name, carrier.size());
    for (const auto& e : entries) {
      std::array<std::size_t, 3> idx{};
      for (std::size_t k = 0; k < 3; ++k) {
        auto i = carrier.find(e[k]);
        if (!i)
          throw Error(Errc::InvalidTable,
                      "entry [" + e[0] + "," + e[1] + "," + e[2] + "] of operation '" + name + "' references unknown point '" +
                          e[k] + "'",
                      {e[0], e[1], e[2]});
        idx[k] = *i;
      }
      if (t.defined(idx[0], idx[1]) && t.at(idx[0], idx[1]) != idx[2])
        throw Error(Errc::InvalidTable,
                    "conflicting entries for (" + e[0] + "," + e[1] + ") in operation '" + name + "'", {e[0], e[1]});
      t.set(idx[0], idx[1], idx[2]);
    }
    return t;
  }

  const Universe& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  const std::vector<OperationTable>& tables() const { return tables_; }
  const StructureDescriptor& descriptor() const { return descriptor_; }
  const std::shared_ptr<const ProductOrigin>& product_origin() const { return product_; }

  std::optional<std::size_t> table_index(const std::string& op) const {
    for (std::size_t i = 0; i < tables_.size(); ++i)
      if (tables_[i].name() == op) return i;
    return std::nullopt;
  }
  const OperationTable& table(const std::string& op) const {
    auto i = table_index(op);
    if (!i) throw Error(Errc::UnknownOperation, "no operation named '" + op + "'", {op});
    return tables_[*i];
  }

  // Structural equality; product provenance is compared by content.
  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
    if (!(a.carrier_ == b.carrier_ && a.tables_ == b.tables_ && a.descriptor_ == b.descriptor_)) return false;
    if (!a.product_ || !b.product_) return !a.product_ && !b.product_;
    const auto& p = *a.product_;
    const auto& q = *b.product_;
    return *p.left == *q.left && *p.right == *q.right && p.elements == q.elements && p.operations == q.operations;
  }

 private:
  Universe carrier_;
  std::vector<OperationTable> tables_;
  StructureDescriptor descriptor_;
  std::shared_ptr<const ProductOrigin> product_;
};

enum class ResidualStatus { ZeroEverywhere, NonzeroWitness };

// Outcome of an encoding function. The witness names carrier elements (or a
// missing domain pair) at which the residual is nonzero.
struct Residual {
  ResidualStatus status = ResidualStatus::ZeroEverywhere;
  std::vector<PointId> witness;
  std::string detail;

  bool zero() const { return status == ResidualStatus::ZeroEverywhere; }

  static Residual ok() { return {}; }
  static Residual fail(std::vector<PointId> witness, std::string detail) {
    return {ResidualStatus::NonzeroWitness, std::move(witness), std::move(detail)};
  }
};

namespace detail {

inline bool agrees(const OperationTable& t, std::size_t a, std::size_t b, std::size_t expect) {
  return t.defined(a, b) && t.at(a, b) == expect;
}

// First x with x·e != x (right) or e·x != x (left); nullopt when e is an identity on that side.
inline std::optional<std::size_t> identity_failure(const OperationTable& t, std::size_t e, bool right) {
  for (std::size_t x = 0; x < t.carrier_size(); ++x) {
    bool good = right ? agrees(t, x, e, x) : agrees(t, e, x, x);
    if (!good) return x;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> find_two_sided_identity(const OperationTable& t) {
  for (std::size_t e = 0; e < t.carrier_size(); ++e)
    if (!identity_failure(t, e, true) && !identity_failure(t, e, false)) return e;
  return std::nullopt;
}

inline Residual closure_residual(const Universe& c, const OperationTable& t) {
  for (std::size_t a = 0; a < t.carrier_size(); ++a)
    for (std::size_t b = 0; b < t.carrier_size(); ++b)
      if (!t.defined(a, b)) return Residual::fail({c.name(a), c.name(b)}, "pair outside the domain");
  return Residual::ok();
}

inline Residual commutativity_residual(const Universe& c, const OperationTable& t) {
  for (std::size_t a = 0; a < t.carrier_size(); ++a) {
    for (std::size_t b = 0; b < t.carrier_size(); ++b) {
      if (t.defined(a, b) != t.defined(b, a))
        return Residual::fail({c.name(a), c.name(b)}, "only one of a·b, b·a is defined");
      if (t.defined(a, b) && t.at(a, b) != t.at(b, a))
        return Residual::fail({c.name(a), c.name(b)},
                              c.name(a) + "·" + c.name(b) + "=" + c.name(t.at(a, b)) + " but " + c.name(b) + "·" +
                                  c.name(a) + "=" + c.name(t.at(b, a)));
    }
  }
  return Residual::ok();
}

inline Residual associativity_residual(const Universe& c, const OperationTable& t) {
  const std::size_t n = t.carrier_size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = t.at(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t yz = t.at(y, z);
        const std::size_t left = xy == kUndefined ? kUndefined : t.at(xy, z);
        const std::size_t right = yz == kUndefined ? kUndefined : t.at(x, yz);
        if (left != right) {
          std::string what = (left == kUndefined || right == kUndefined) ? "only one grouping is defined"
                                                                         : "(x·y)·z differs from x·(y·z)";
          return Residual::fail({c.name(x), c.name(y), c.name(z)}, std::move(what));
        }
      }
    }
  }
  return Residual::ok();
}

inline Residual identity_residual(const Universe& c, const OperationTable& t, PropertyKind kind) {
  std::vector<PointId> witness;
  for (std::size_t e = 0; e < t.carrier_size(); ++e) {
    std::optional<std::size_t> fail;
    if (kind != PropertyKind::LeftIdentity) fail = identity_failure(t, e, true);
    if (!fail && kind != PropertyKind::RightIdentity) fail = identity_failure(t, e, false);
    if (!fail) return Residual::ok();
    witness.push_back(c.name(e));
    witness.push_back(c.name(*fail));
  }
  return Residual::fail(std::move(witness), "every candidate e is refuted by the element following it");
}

inline Residual invertibility_residual(const Universe& c, const OperationTable& t) {
  auto e = find_two_sided_identity(t);
  if (!e) return Residual::fail({}, "no two-sided identity element");
  for (std::size_t x = 0; x < t.carrier_size(); ++x) {
    bool found = false;
    for (std::size_t y = 0; y < t.carrier_size() && !found; ++y) found = agrees(t, x, y, *e) && agrees(t, y, x, *e);
    if (!found) return Residual::fail({c.name(x)}, c.name(x) + " has no two-sided inverse");
  }
  return Residual::ok();
}

inline Residual evaluate_kind(const Universe& c, const OperationTable& t, PropertyKind kind) {
  switch (kind) {
    case PropertyKind::Closure: return closure_residual(c, t);
    case PropertyKind::Commutativity: return commutativity_residual(c, t);
    case PropertyKind::Associativity: return associativity_residual(c, t);
    case PropertyKind::LeftIdentity:
    case PropertyKind::RightIdentity:
    case PropertyKind::Identity: return identity_residual(c, t, kind);
    case PropertyKind::Invertibility: return invertibility_residual(c, t);
  }
  return Residual::ok();
}

}  // namespace detail

// Encoding function of one property on one operation. The formal difference
// a - b is zero exactly when a == b, so every residual is an equality scan.
inline Residual evaluate_encoding(const FiniteStructure& s, const PropertySpec& p) {
  const auto& t = s.table(p.op);
  if (p.kind == PropertyKind::Invertibility &&
      !s.descriptor().properties.count(PropertySpec{PropertyKind::Identity, p.op}))
    throw Error(Errc::MissingIdentityPrerequisite, "Invertibility on '" + p.op + "' needs a declared Identity", {p.op});
  return detail::evaluate_kind(s.carrier(), t, p.kind);
}

// A pair property holds when the product operation is componentwise over the
// recorded factors and each component property holds on its factor.
inline Residual evaluate_pair_property(const FiniteStructure& s, const PairPropertySpec& p) {
  const auto& t = s.table(p.op);
  const auto& origin = s.product_origin();
  if (!origin) return Residual::fail({}, "structure carries no factor structures for pair property on '" + p.op + "'");
  auto ops = origin->operations.find(p.op);
  if (ops == origin->operations.end()) return Residual::fail({p.op}, "operation is not a product operation");
  if (ops->second.first != p.left.op || ops->second.second != p.right.op)
    return Residual::fail({p.op}, "pair property components do not match the factor operations");
  const auto& lt = origin->left->table(p.left.op);
  const auto& rt = origin->right->table(p.right.op);
  const auto& elems = origin->elements;
  const auto& c = s.carrier();
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      auto [a1, a2] = elems[a];
      auto [b1, b2] = elems[b];
      std::size_t l = lt.at(a1, b1);
      std::size_t r = rt.at(a2, b2);
      bool expect_defined = l != kUndefined && r != kUndefined;
      bool ok = expect_defined ? (t.defined(a, b) && elems[t.at(a, b)] == std::make_pair(l, r)) : !t.defined(a, b);
      if (!ok) return Residual::fail({c.name(a), c.name(b)}, "product table is not componentwise here");
    }
  }
  auto left = evaluate_encoding(*origin->left, p.left);
  if (!left.zero()) {
    left.detail = "left factor: " + left.detail;
    return left;
  }
  auto right = evaluate_encoding(*origin->right, p.right);
  if (!right.zero()) right.detail = "right factor: " + right.detail;
  return right;
}

struct DescriptorReport {
  std::vector<std::pair<PropertySpec, Residual>> properties;
  std::vector<std::pair<PairPropertySpec, Residual>> pair_properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& e) { return e.second.zero(); }) &&
           std::all_of(pair_properties.begin(), pair_properties.end(), [](const auto& e) { return e.second.zero(); });
  }
};

inline DescriptorReport verify_descriptor(const FiniteStructure& s) {
  DescriptorReport r;
  for (const auto& p : s.descriptor().properties) r.properties.emplace_back(p, evaluate_encoding(s, p));
  for (const auto& p : s.descriptor().pair_properties) r.pair_properties.emplace_back(p, evaluate_pair_property(s, p));
  return r;
}

enum class EquivalenceFailure { None, OperationCount, NonAlgebraic, NoBijection };

struct EquivalenceVerdict {
  bool equivalent = false;
  EquivalenceFailure reason = EquivalenceFailure::None;
  std::map<std::string, std::string> bijection;  // operation of d1 -> operation of d2
};

// d1 ≡ d2: same number of operations, same non-algebraic tags, and a
// bijection of operations matching property kinds exactly. The search runs
// over all bijections in lexicographic order of d2's operations.
inline EquivalenceVerdict descriptors_equivalent(const StructureDescriptor& d1, const StructureDescriptor& d2) {
  EquivalenceVerdict v;
  if (d1.operations.size() != d2.operations.size()) {
    v.reason = EquivalenceFailure::OperationCount;
    return v;
  }
  if (d1.nonalg != d2.nonalg) {
    v.reason = EquivalenceFailure::NonAlgebraic;
    return v;
  }
  const std::size_t n = d1.operations.size();
  using Signature = std::pair<std::set<PropertyKind>, std::set<std::pair<PropertyKind, PropertyKind>>>;
  std::vector<Signature> s1, s2;
  for (const auto& op : d1.operations) s1.emplace_back(d1.kinds_of(op), d1.pair_kinds_of(op));
  for (const auto& op : d2.operations) s2.emplace_back(d2.kinds_of(op), d2.pair_kinds_of(op));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = s1[i] == s2[perm[i]];
    if (match) {
      v.equivalent = true;
      for (std::size_t i = 0; i < n; ++i) v.bijection[d1.operations[i]] = d2.operations[perm[i]];
      return v;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  v.reason = EquivalenceFailure::NoBijection;
  return v;
}

struct HomomorphismVerdict {
  bool holds = true;
  std::string op;
  std::vector<PointId> witness;  // the pair (x, y) of a's carrier
  std::string detail;
};

// Index-level check: op_pairing[i] is the table of b paired with a's i-th
// table, map[x] the image of a's element x.
inline HomomorphismVerdict is_homomorphism_indexed(const FiniteStructure& a, const FiniteStructure& b,
                                                   const std::vector<std::size_t>& op_pairing,
                                                   const std::vector<std::size_t>& map) {
  HomomorphismVerdict v;
  for (std::size_t k = 0; k < a.tables().size(); ++k) {
    const auto& ta = a.tables()[k];
    const auto& tb = b.tables()[op_pairing[k]];
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (!ta.defined(x, y)) continue;
        std::size_t image = tb.at(map[x], map[y]);
        if (image == map[ta.at(x, y)]) continue;
        v.holds = false;
        v.op = ta.name();
        v.witness = {a.carrier().name(x), a.carrier().name(y)};
        v.detail = image == kUndefined
                       ? "image pair lies outside the target domain"
                       : "map(" + a.carrier().name(x) + "·" + a.carrier().name(y) + ")=" +
                             b.carrier().name(map[ta.at(x, y)]) + " but map(x)·map(y)=" + b.carrier().name(image);
        return v;
      }
    }
  }
  return v;
}

inline HomomorphismVerdict is_homomorphism(const FiniteStructure& a, const FiniteStructure& b,
                                           const std::map<std::string, std::string>& op_pairing,
                                           const std::map<PointId, PointId>& map) {
  std::vector<std::size_t> ops;
  for (const auto& t : a.tables()) {
    auto it = op_pairing.find(t.name());
    if (it == op_pairing.end())
      throw Error(Errc::UnknownOperation, "operation '" + t.name() + "' has no partner", {t.name()});
    auto j = b.table_index(it->second);
    if (!j) throw Error(Errc::UnknownOperation, "target has no operation '" + it->second + "'", {it->second});
    ops.push_back(*j);
  }
  std::vector<std::size_t> images;
  for (const auto& x : a.carrier().names()) {
    auto it = map.find(x);
    if (it == map.end()) throw Error(Errc::InvalidAssignment, "map is not defined on '" + x + "'", {x});
    images.push_back(b.carrier().index_of(it->second));
  }
  return is_homomorphism_indexed(a, b, ops, images);
}

struct Isomorphism {
  std::map<std::string, std::string> operations;
  std::map<PointId, PointId> elements;
};

namespace detail {

// Backtracking search for an element bijection compatible with a fixed
// operation pairing; candidates are tried in index order.
class IsoSearch {
 public:
  IsoSearch(const FiniteStructure& a, const FiniteStructure& b, const std::vector<std::size_t>& ops)
      : a_(a), b_(b), ops_(ops), fwd_(a.size(), kUndefined), inv_(a.size(), kUndefined) {}

  bool run() { return extend(0); }
  const std::vector<std::size_t>& mapping() const { return fwd_; }

 private:
  bool consistent(std::size_t x) const {
    for (std::size_t k = 0; k < ops_.size(); ++k) {
      const auto& ta = a_.tables()[k];
      const auto& tb = b_.tables()[ops_[k]];
      for (std::size_t y = 0; y <= x; ++y) {
        for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
          std::size_t ra = ta.at(p, q);
          std::size_t rb = tb.at(fwd_[p], fwd_[q]);
          if ((ra == kUndefined) != (rb == kUndefined)) return false;
          if (ra == kUndefined) continue;
          if (fwd_[ra] != kUndefined) {
            if (fwd_[ra] != rb) return false;
          } else if (inv_[rb] != kUndefined) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool extend(std::size_t x) {
    if (x == a_.size()) return true;
    for (std::size_t c = 0; c < b_.size(); ++c) {
      if (inv_[c] != kUndefined) continue;
      fwd_[x] = c;
      inv_[c] = x;
      if (consistent(x) && extend(x + 1)) return true;
      fwd_[x] = kUndefined;
      inv_[c] = kUndefined;
    }
    return false;
  }

  const FiniteStructure& a_;
  const FiniteStructure& b_;
  const std::vector<std::size_t>& ops_;
  std::vector<std::size_t> fwd_;
  std::vector<std::size_t> inv_;
};

}  // namespace detail

// First isomorphism in canonical order: operation pairings in lexicographic
// permutation order, then element bijections in lexicographic order. Domains
// must correspond exactly, so the inverse is a homomorphism as well.
inline std::optional<Isomorphism> find_isomorphism(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.size() != b.size() || a.tables().size() != b.tables().size()) return std::nullopt;
  const std::size_t m = a.tables().size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool sizes = true;
    for (std::size_t k = 0; k < m && sizes; ++k)
      sizes = a.tables()[k].domain_size() == b.tables()[perm[k]].domain_size();
    if (!sizes) continue;
    detail::IsoSearch search(a, b, perm);
    if (search.run()) {
      Isomorphism iso;
      for (std::size_t k = 0; k < m; ++k) iso.operations[a.tables()[k].name()] = b.tables()[perm[k]].name();
      for (std::size_t x = 0; x < a.size(); ++x)
        iso.elements[a.carrier().name(x)] = b.carrier().name(search.mapping()[x]);
      return iso;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace sspace

#endif  // SSPACE_ALGEBRA_HPP
