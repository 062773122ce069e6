#ifndef SSPACE_LATTICE_HPP
#define SSPACE_LATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sspace/algebra.hpp"
#include "sspace/error.hpp"
#include "sspace/space.hpp"
#include "sspace/topology.hpp"

namespace sspace {

// point -> sorted names of the fixed neighborhoods containing it
using HAssignment = std::map<PointId, std::vector<std::string>>;

namespace detail {

using Mask = std::uint64_t;

inline std::vector<Mask> h_masks(const StructuredSpace& s) {
  const auto& ns = s.neighborhoods();
  if (ns.size() > 63) throw Error(Errc::ResourceLimit, "too many neighborhoods for subcollection enumeration");
  std::vector<Mask> h(s.universe().size(), 0);
  for (std::size_t k = 0; k < ns.size(); ++k)
    for (auto x : ns[k].carrier.members()) h[x] |= Mask{1} << k;
  return h;
}

inline std::vector<std::string> mask_names(const StructuredSpace& s, Mask m) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < s.neighborhoods().size(); ++k)
    if (m >> k & 1) out.push_back(s.neighborhoods()[k].name);
  return out;
}

}  // namespace detail

inline HAssignment h_map(const StructuredSpace& s) {
  auto masks = detail::h_masks(s);
  HAssignment h;
  for (std::size_t x = 0; x < masks.size(); ++x) h[s.universe().name(x)] = detail::mask_names(s, masks[x]);
  return h;
}

struct SurjectivityVerdict {
  bool holds = true;
  std::vector<std::vector<std::string>> missing;  // by size, then lexicographically
};

// Surjective onto the nonempty subcollections of the neighborhood collection.
inline SurjectivityVerdict is_h_surjective(const StructuredSpace& s) {
  auto masks = detail::h_masks(s);
  std::set<detail::Mask> realized(masks.begin(), masks.end());
  const std::size_t k = s.neighborhoods().size();
  if (k > 24) throw Error(Errc::ResourceLimit, "too many neighborhoods for subcollection enumeration");
  SurjectivityVerdict v;
  for (detail::Mask m = 1; m < (detail::Mask{1} << k); ++m)
    if (!realized.count(m)) v.missing.push_back(detail::mask_names(s, m));
  std::sort(v.missing.begin(), v.missing.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  v.holds = v.missing.empty();
  return v;
}

// Finite partial order on labelled elements; leq[i][j] means i ≤ j.
class Poset {
 public:
  Poset() = default;

  static Poset from_relation(std::vector<std::string> labels, std::vector<std::vector<bool>> leq) {
    Poset p;
    p.labels_ = std::move(labels);
    p.leq_ = std::move(leq);
    p.check();
    return p;
  }

  // Reflexive-transitive closure of the given covering pairs (lower, upper).
  static Poset from_covers(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& covers) {
    const std::size_t n = labels.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
      if (!index.emplace(labels[i], i).second)
        throw Error(Errc::NotAPartialOrder, "duplicate element '" + labels[i] + "'", {labels[i]});
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& [a, b] : covers) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        throw Error(Errc::NotAPartialOrder, "cover (" + a + "," + b + ") names an unknown element", {a, b});
      leq[ia->second][ib->second] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq[k][j]) leq[i][j] = true;
    return from_relation(std::move(labels), std::move(leq));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  // Covering pairs (lower, upper) of the transitive reduction.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j || !leq_[i][j]) continue;
        bool direct = true;
        for (std::size_t k = 0; k < size() && direct; ++k)
          if (k != i && k != j && leq_[i][k] && leq_[k][j]) direct = false;
        if (direct) out.emplace_back(i, j);
      }
    }
    return out;
  }

 private:
  void check() const {
    const std::size_t n = labels_.size();
    if (leq_.size() != n) throw Error(Errc::NotAPartialOrder, "order matrix has the wrong size");
    for (const auto& row : leq_)
      if (row.size() != n) throw Error(Errc::NotAPartialOrder, "order matrix has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i][i]) throw Error(Errc::NotAPartialOrder, "'" + labels_[i] + "' is not ≤ itself", {labels_[i]});
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i])
          throw Error(Errc::NotAPartialOrder, "'" + labels_[i] + "' and '" + labels_[j] + "' are mutually ≤",
                      {labels_[i], labels_[j]});
        for (std::size_t k = 0; k < n; ++k)
          if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
            throw Error(Errc::NotAPartialOrder, "order is not transitive", {labels_[i], labels_[j], labels_[k]});
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

// Classes of points with equal h-value, ordered by inclusion of h-values.
struct QuotientPoset {
  std::vector<std::vector<std::string>> h_values;
  std::vector<std::vector<PointId>> members;
  Poset order;  // labels "[first member]"
  bool surjective = false;
};

inline QuotientPoset induced_poset(const StructuredSpace& s) {
  auto masks = detail::h_masks(s);
  std::vector<detail::Mask> keys;
  QuotientPoset q;
  for (std::size_t x = 0; x < masks.size(); ++x) {
    auto it = std::find(keys.begin(), keys.end(), masks[x]);
    if (it == keys.end()) {
      keys.push_back(masks[x]);
      q.h_values.push_back(detail::mask_names(s, masks[x]));
      q.members.push_back({});
      it = keys.end() - 1;
    }
    q.members[static_cast<std::size_t>(it - keys.begin())].push_back(s.universe().name(x));
  }
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(keys.size(), std::vector<bool>(keys.size()));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    labels.push_back("[" + q.members[i].front() + "]");
    for (std::size_t j = 0; j < keys.size(); ++j) leq[i][j] = (keys[i] & ~keys[j]) == 0;
  }
  q.order = Poset::from_relation(std::move(labels), std::move(leq));
  q.surjective = is_h_surjective(s).holds;
  return q;
}

struct LatticeVerdict {
  bool is_lattice = true;
  std::vector<std::vector<std::size_t>> join_table, meet_table;  // filled when is_lattice
  std::optional<std::pair<std::string, std::string>> counterexample;
  std::string missing;  // "join" or "meet"
  // Only for quotient posets of spaces with surjective h.
  std::optional<bool> join_is_union;
  std::optional<std::pair<std::string, std::string>> union_witness;
};

namespace detail {

inline std::optional<std::size_t> least_upper(const Poset& p, std::size_t a, std::size_t b, bool upper) {
  auto le = [&](std::size_t x, std::size_t y) { return upper ? p.leq(x, y) : p.leq(y, x); };
  std::vector<std::size_t> bounds;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (le(a, c) && le(b, c)) bounds.push_back(c);
  for (auto c : bounds)
    if (std::all_of(bounds.begin(), bounds.end(), [&](std::size_t d) { return le(c, d); })) return c;
  return std::nullopt;
}

}  // namespace detail

inline LatticeVerdict verify_lattice(const Poset& p) {
  LatticeVerdict v;
  const std::size_t n = p.size();
  v.join_table.assign(n, std::vector<std::size_t>(n));
  v.meet_table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      auto j = detail::least_upper(p, a, b, true);
      auto m = detail::least_upper(p, a, b, false);
      if (!j || !m) {
        v.is_lattice = false;
        v.counterexample = std::make_pair(p.label(a), p.label(b));
        v.missing = j ? "meet" : "join";
        v.join_table.clear();
        v.meet_table.clear();
        return v;
      }
      v.join_table[a][b] = v.join_table[b][a] = *j;
      v.meet_table[a][b] = v.meet_table[b][a] = *m;
    }
  }
  return v;
}

// Also checks, under surjective h, that each join class carries the union of
// the operands' h-values. Joins are checked even when a meet is missing.
inline LatticeVerdict verify_lattice(const QuotientPoset& q) {
  auto v = verify_lattice(q.order);
  if (!q.surjective) return v;
  v.join_is_union = true;
  const auto& p = q.order;
  for (std::size_t a = 0; a < p.size() && *v.join_is_union; ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      auto j = detail::least_upper(p, a, b, true);
      std::vector<std::string> u;
      std::set_union(q.h_values[a].begin(), q.h_values[a].end(), q.h_values[b].begin(), q.h_values[b].end(),
                     std::back_inserter(u));
      if (!j || q.h_values[*j] != u) {
        v.join_is_union = false;
        v.union_witness = std::make_pair(p.label(a), p.label(b));
        break;
      }
    }
  }
  return v;
}

struct ConverseSpace {
  StructuredSpace space;
  std::vector<std::vector<PointId>> equivalence;  // classes of the point relation; all singletons
  HAssignment h_hat;                                // constant: every class maps to the single neighborhood
};

inline constexpr const char* kConverseNeighborhood = "Y";

// A finite lattice as a structured space with one neighborhood, the whole
// carrier, holding the join and meet tables; the topology is indiscrete.
inline ConverseSpace lattice_to_structured_space(const Poset& l) {
  if (l.size() < 2) throw Error(Errc::TooSmall, "a fixed neighborhood must be strictly larger than its point");
  auto v = verify_lattice(l);
  if (!v.is_lattice)
    throw Error(Errc::NotALattice, "no " + v.missing + " for " + v.counterexample->first + " and " + v.counterexample->second,
                {v.counterexample->first, v.counterexample->second});
  Universe carrier(l.labels());
  const std::size_t n = l.size();
  OperationTable join("join", n), meet("meet", n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      join.set(carrier.index_of(l.label(a)), carrier.index_of(l.label(b)), carrier.index_of(l.label(v.join_table[a][b])));
      meet.set(carrier.index_of(l.label(a)), carrier.index_of(l.label(b)), carrier.index_of(l.label(v.meet_table[a][b])));
    }
  }
  std::vector<PropertySpec> props;
  for (const char* op : {"join", "meet"})
    for (auto k : {PropertyKind::Closure, PropertyKind::Associativity, PropertyKind::Commutativity}) props.push_back({k, op});
  auto structure = FiniteStructure::make(carrier, {std::move(join), std::move(meet)}, props);
  auto space = FiniteSpace::from_opens(carrier, {carrier.empty_set(), carrier.full_set()});
  std::map<PointId, std::string> assignment;
  ConverseSpace out;
  for (const auto& p : carrier.names()) {
    assignment[p] = kConverseNeighborhood;
    out.equivalence.push_back({p});
    out.h_hat[p] = {kConverseNeighborhood};
  }
  out.space = StructuredSpace::assemble(std::move(space), {{kConverseNeighborhood, std::move(structure)}}, assignment);
  return out;
}

inline std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Hasse diagram of the class order, edges pointing upward.
inline std::string to_dot(const QuotientPoset& q) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < q.order.size(); ++i)
    os << "  n" << i << " [label=" << quote_dot(format_set(q.h_values[i])) << "];\n";
  for (auto [a, b] : q.order.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace sspace

#endif  // SSPACE_LATTICE_HPP
