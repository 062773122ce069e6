#ifndef SSPACE_TOPOLOGY_HPP
#define SSPACE_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sspace/error.hpp"
#include "sspace/pointset.hpp"

namespace sspace {

// Upper bound on the number of open sets a generated topology may hold.
inline constexpr std::size_t kMaxOpens = std::size_t{1} << 20;

enum class TopologyViolation { None, MissingEmpty, MissingUniverse, MissingUnion, MissingIntersection, WrongUniverse };

struct TopologyVerdict {
  bool ok = true;
  TopologyViolation violation = TopologyViolation::None;
  std::vector<PointSet> pair;  // the violating pair, when one exists
  PointSet missing;            // the set that should have been in the family
};

// Checks the topology axioms on an explicit family. The first violation in
// canonical order is reported: empty set, universe, then pairwise unions and
// intersections over the sorted, deduplicated family.
inline TopologyVerdict is_topology(const Universe& universe, std::span<const PointSet> family) {
  TopologyVerdict v;
  for (const auto& s : family) {
    if (s.universe_size() != universe.size()) {
      v.ok = false;
      v.violation = TopologyViolation::WrongUniverse;
      v.missing = s;
      return v;
    }
  }
  std::set<PointSet> members(family.begin(), family.end());
  if (!members.count(universe.empty_set())) {
    v.ok = false;
    v.violation = TopologyViolation::MissingEmpty;
    v.missing = universe.empty_set();
    return v;
  }
  if (!members.count(universe.full_set())) {
    v.ok = false;
    v.violation = TopologyViolation::MissingUniverse;
    v.missing = universe.full_set();
    return v;
  }
  for (auto a = members.begin(); a != members.end(); ++a) {
    for (auto b = std::next(a); b != members.end(); ++b) {
      auto u = *a | *b;
      if (!members.count(u)) {
        v.ok = false;
        v.violation = TopologyViolation::MissingUnion;
        v.pair = {*a, *b};
        v.missing = u;
        return v;
      }
      auto n = *a & *b;
      if (!members.count(n)) {
        v.ok = false;
        v.violation = TopologyViolation::MissingIntersection;
        v.pair = {*a, *b};
        v.missing = n;
        return v;
      }
    }
  }
  return v;
}

// A nonempty finite universe with an explicit topology. Opens are stored in
// canonical order; the minimal open neighborhood of every point is cached.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  static FiniteSpace from_opens(Universe universe, std::vector<PointSet> opens) {
    if (universe.empty()) throw Error(Errc::EmptyUniverse, "a space needs at least one point");
    auto verdict = is_topology(universe, opens);
    if (!verdict.ok) {
      std::vector<PointId> witness = verdict.missing.universe_size() == universe.size()
                                         ? universe.names_of(verdict.missing)
                                         : std::vector<PointId>{};
      throw Error(Errc::NotATopology, "family is not a topology; missing " + format_set(witness), witness);
    }
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    return FiniteSpace(std::move(universe), std::move(opens));
  }

  const Universe& universe() const { return universe_; }
  const std::vector<PointSet>& opens() const { return opens_; }
  std::size_t size() const { return universe_.size(); }

  // Smallest open set containing point i.
  const PointSet& minimal_open(std::size_t i) const { return minimal_.at(i); }

  // Smallest closed set containing point i: {y : i lies in every open around y}.
  PointSet point_closure(std::size_t i) const {
    PointSet c = universe_.empty_set();
    for (std::size_t y = 0; y < size(); ++y)
      if (minimal_[y].contains(i)) c.insert(y);
    return c;
  }

  bool is_open(const PointSet& s) const {
    for (auto x : s.members())
      if (!minimal_[x].is_subset_of(s)) return false;
    return true;
  }
  bool is_closed(const PointSet& s) const { return is_open(s.complement()); }

  PointSet set_of(std::span<const PointId> names) const { return universe_.set_of(names); }
  PointSet set_of(std::initializer_list<PointId> names) const { return universe_.set_of(names); }
  std::vector<PointId> names_of(const PointSet& s) const { return universe_.names_of(s); }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.universe_ == b.universe_ && a.opens_ == b.opens_;
  }

 private:
  FiniteSpace(Universe universe, std::vector<PointSet> opens)
      : universe_(std::move(universe)), opens_(std::move(opens)) {
    minimal_.reserve(universe_.size());
    for (std::size_t x = 0; x < universe_.size(); ++x) {
      PointSet m = universe_.full_set();
      for (const auto& o : opens_)
        if (o.contains(x)) m &= o;
      minimal_.push_back(std::move(m));
    }
  }

  friend FiniteSpace generate_topology(const Universe&, std::span<const PointSet>);

  Universe universe_;
  std::vector<PointSet> opens_;
  std::vector<PointSet> minimal_;
};

// Smallest topology in which every subbasis member is open. A finite
// topology is determined by the minimal open set around each point (the
// intersection of the subbasis members containing it); the opens are then
// exactly the unions of those minimal sets.
inline FiniteSpace generate_topology(const Universe& universe, std::span<const PointSet> subbasis) {
  if (universe.empty()) throw Error(Errc::EmptyUniverse, "a space needs at least one point");
  for (const auto& s : subbasis)
    if (s.universe_size() != universe.size())
      throw Error(Errc::MemberOutsideUniverse, "subbasis member is not indexed over this universe");

  const std::size_t n = universe.size();
  std::vector<PointSet> minimal(n, universe.full_set());
  for (const auto& s : subbasis)
    for (auto x : s.members()) minimal[x] &= s;

  std::set<PointSet> opens{universe.empty_set()};
  std::vector<PointSet> frontier{universe.empty_set()};
  while (!frontier.empty()) {
    std::vector<PointSet> next;
    for (const auto& o : frontier) {
      for (std::size_t x = 0; x < n; ++x) {
        if (o.contains(x)) continue;
        auto grown = o | minimal[x];
        if (opens.insert(grown).second) {
          if (opens.size() > kMaxOpens)
            throw Error(Errc::ResourceLimit, "generated topology exceeds " + std::to_string(kMaxOpens) + " open sets");
          next.push_back(std::move(grown));
        }
      }
    }
    frontier = std::move(next);
  }
  FiniteSpace space(universe, std::vector<PointSet>(opens.begin(), opens.end()));
  return space;
}

inline FiniteSpace generate_topology(const Universe& universe, const std::vector<std::vector<PointId>>& subbasis) {
  std::vector<PointSet> sets;
  sets.reserve(subbasis.size());
  for (const auto& s : subbasis) sets.push_back(universe.set_of(s));
  return generate_topology(universe, sets);
}

inline bool is_neighborhood(const FiniteSpace& space, const PointSet& candidate, const PointId& p) {
  auto i = space.universe().index_of(p);
  for (const auto& o : space.opens())
    if (o.contains(i) && o.is_subset_of(candidate)) return true;
  return false;
}

// Classes of points lying in exactly the same open sets, ordered by first
// member. Every Borel set is a union of these atoms.
inline std::vector<PointSet> borel_atoms(const FiniteSpace& space) {
  std::vector<PointSet> atoms;
  std::vector<bool> placed(space.size(), false);
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (placed[x]) continue;
    PointSet atom = space.universe().empty_set();
    for (std::size_t y = x; y < space.size(); ++y) {
      if (!placed[y] && space.minimal_open(y) == space.minimal_open(x)) {
        atom.insert(y);
        placed[y] = true;
      }
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

// Opens of the result are K ∪ Q with K open in `space` and Q any subset of
// the added points.
inline FiniteSpace extension_topology(const FiniteSpace& space, const std::vector<PointId>& extra) {
  std::vector<PointId> names = space.universe().names();
  for (const auto& z : extra) {
    if (space.universe().contains(z))
      throw Error(Errc::OverlapWithUniverse, "point '" + z + "' already belongs to the universe", {z});
    names.push_back(z);
  }
  Universe bigger(std::move(names));
  std::vector<PointSet> subbasis;
  for (const auto& o : space.opens()) subbasis.push_back(remap(o, space.universe(), bigger));
  for (const auto& z : extra) {
    PointSet s = bigger.empty_set();
    s.insert(bigger.index_of(z));
    subbasis.push_back(std::move(s));
  }
  return generate_topology(bigger, subbasis);
}

inline PointId pair_name(const PointId& a, const PointId& b) { return "(" + a + "," + b + ")"; }

// Product of two spaces; the point (a,b) is named "(a,b)".
inline FiniteSpace product_topology(const FiniteSpace& s1, const FiniteSpace& s2) {
  std::vector<PointId> names;
  for (const auto& a : s1.universe().names())
    for (const auto& b : s2.universe().names()) names.push_back(pair_name(a, b));
  Universe product(std::move(names));
  if (product.size() != s1.size() * s2.size())
    throw Error(Errc::DuplicatePoint, "pair names collide; rename points containing ',' or parentheses");

  auto index = [&](std::size_t i, std::size_t j) {
    return product.index_of(pair_name(s1.universe().name(i), s2.universe().name(j)));
  };
  // Rectangles of minimal opens form a basis of the product topology.
  std::vector<PointSet> rectangles;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    for (std::size_t j = 0; j < s2.size(); ++j) {
      PointSet r = product.empty_set();
      for (auto a : s1.minimal_open(i).members())
        for (auto b : s2.minimal_open(j).members()) r.insert(index(a, b));
      rectangles.push_back(std::move(r));
    }
  }
  return generate_topology(product, rectangles);
}

struct ConnectivityReport {
  bool connected = true;
  bool hyperconnected = true;
  bool ultraconnected = true;
  std::optional<std::pair<PointSet, PointSet>> disconnection;       // disjoint opens covering X
  std::optional<std::pair<PointSet, PointSet>> disjoint_opens;      // two disjoint nonempty opens
  std::optional<std::pair<PointSet, PointSet>> disjoint_closed;     // two disjoint nonempty closed sets
};

// Two disjoint nonempty opens exist iff two minimal opens are disjoint, and
// likewise for closed sets and point closures, so the scans are quadratic in
// the number of points rather than in the number of opens.
inline ConnectivityReport connectivity_report(const FiniteSpace& space) {
  ConnectivityReport r;
  const auto full = space.universe().full_set();
  for (const auto& o : space.opens()) {
    if (o.empty() || o == full) continue;
    if (space.is_open(o.complement())) {
      r.connected = false;
      r.disconnection = std::make_pair(o, o.complement());
      break;
    }
  }
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n && r.hyperconnected; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!space.minimal_open(x).intersects(space.minimal_open(y))) {
        r.hyperconnected = false;
        r.disjoint_opens = std::make_pair(space.minimal_open(x), space.minimal_open(y));
        break;
      }
    }
  }
  std::vector<PointSet> closures;
  for (std::size_t x = 0; x < n; ++x) closures.push_back(space.point_closure(x));
  for (std::size_t x = 0; x < n && r.ultraconnected; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!closures[x].intersects(closures[y])) {
        r.ultraconnected = false;
        r.disjoint_closed = std::make_pair(closures[x], closures[y]);
        break;
      }
    }
  }
  return r;
}

struct OpennessReport {
  bool completely_open = true;
  bool completely_closed = true;
  std::optional<PointSet> not_open;    // first member that is not open
  std::optional<PointSet> not_closed;  // first member that is not closed
};

inline OpennessReport check_complete_openness(const FiniteSpace& space, std::span<const PointSet> collection) {
  OpennessReport r;
  for (const auto& c : collection) {
    if (c.universe_size() != space.size())
      throw Error(Errc::MemberOutsideUniverse, "collection member is not indexed over this universe");
    if (r.completely_open && !space.is_open(c)) {
      r.completely_open = false;
      r.not_open = c;
    }
    if (r.completely_closed && !space.is_closed(c)) {
      r.completely_closed = false;
      r.not_closed = c;
    }
  }
  return r;
}

}  // namespace sspace

#endif  // SSPACE_TOPOLOGY_HPP
