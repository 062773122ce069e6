#ifndef SSPACE_SPACE_HPP
#define SSPACE_SPACE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sspace/algebra.hpp"
#include "sspace/error.hpp"
#include "sspace/pointset.hpp"
#include "sspace/topology.hpp"

namespace sspace {

using NamedStructure = std::pair<std::string, FiniteStructure>;

struct Neighborhood {
  std::string name;
  FiniteStructure structure;
  PointSet carrier;  // over the space universe
};

// A finite space with its collection of fixed neighborhoods and the fixed
// choice of one neighborhood per point. Construction checks only that the
// names resolve; `validate` checks the structured-space conditions.
class StructuredSpace {
 public:
  StructuredSpace() = default;

  // Neighborhoods with equal carrier, tables and descriptor are the same
  // member of the collection; later duplicates are dropped and assignments
  // naming them are redirected to the first.
  static StructuredSpace assemble(FiniteSpace space, std::vector<NamedStructure> structures,
                                  const std::map<PointId, std::string>& assignment) {
    StructuredSpace s;
    s.space_ = std::move(space);
    std::sort(structures.begin(), structures.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<std::string, std::string> redirect;
    for (auto& [name, st] : structures) {
      if (name.empty()) throw Error(Errc::InvalidIdentifier, "neighborhood names must be nonempty");
      if (redirect.count(name)) throw Error(Errc::InvalidIdentifier, "duplicate neighborhood name '" + name + "'", {name});
      PointSet carrier = s.space_.universe().set_of(st.carrier().names());
      auto same = std::find_if(s.neighborhoods_.begin(), s.neighborhoods_.end(),
                               [&](const Neighborhood& n) { return n.carrier == carrier && n.structure == st; });
      if (same != s.neighborhoods_.end()) {
        redirect[name] = same->name;
        continue;
      }
      redirect[name] = name;
      s.neighborhoods_.push_back({name, std::move(st), std::move(carrier)});
    }
    const auto& u = s.space_.universe();
    for (const auto& [p, n] : assignment) {
      if (!u.contains(p)) throw Error(Errc::PointOutsideUniverse, "assignment names unknown point '" + p + "'", {p});
      if (!redirect.count(n)) throw Error(Errc::UnknownNeighborhood, "assignment names unknown neighborhood '" + n + "'", {n});
    }
    s.assigned_.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto it = assignment.find(u.name(i));
      if (it == assignment.end())
        throw Error(Errc::InvalidAssignment, "point '" + u.name(i) + "' has no fixed neighborhood", {u.name(i)});
      s.assigned_[i] = *s.neighborhood_index(redirect.at(it->second));
    }
    return s;
  }

  const FiniteSpace& space() const { return space_; }
  const Universe& universe() const { return space_.universe(); }
  const std::vector<Neighborhood>& neighborhoods() const { return neighborhoods_; }

  std::optional<std::size_t> neighborhood_index(const std::string& name) const {
    for (std::size_t i = 0; i < neighborhoods_.size(); ++i)
      if (neighborhoods_[i].name == name) return i;
    return std::nullopt;
  }
  const Neighborhood& neighborhood(const std::string& name) const {
    auto i = neighborhood_index(name);
    if (!i) throw Error(Errc::UnknownNeighborhood, "no neighborhood named '" + name + "'", {name});
    return neighborhoods_[*i];
  }

  // Index of the fixed neighborhood of point i.
  std::size_t assigned(std::size_t i) const { return assigned_.at(i); }

  std::map<PointId, std::string> assignment() const {
    std::map<PointId, std::string> out;
    for (std::size_t i = 0; i < assigned_.size(); ++i) out[universe().name(i)] = neighborhoods_[assigned_[i]].name;
    return out;
  }

  std::vector<std::string> neighborhood_names() const {
    std::vector<std::string> out;
    for (const auto& n : neighborhoods_) out.push_back(n.name);
    return out;
  }

  std::vector<NamedStructure> structures() const {
    std::vector<NamedStructure> out;
    for (const auto& n : neighborhoods_) out.emplace_back(n.name, n.structure);
    return out;
  }

  friend bool operator==(const StructuredSpace& a, const StructuredSpace& b) {
    if (!(a.space_ == b.space_) || a.assigned_ != b.assigned_ || a.neighborhoods_.size() != b.neighborhoods_.size())
      return false;
    for (std::size_t i = 0; i < a.neighborhoods_.size(); ++i) {
      const auto& x = a.neighborhoods_[i];
      const auto& y = b.neighborhoods_[i];
      if (x.name != y.name || !(x.carrier == y.carrier) || !(x.structure == y.structure)) return false;
    }
    return true;
  }

 private:
  FiniteSpace space_;
  std::vector<Neighborhood> neighborhoods_;
  std::vector<std::size_t> assigned_;
};

enum class ViolationKind { CarrierTooSmall, PointNotInCarrier, NotANeighborhood, PropertyFails, NotCovered };

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::CarrierTooSmall: return "CarrierTooSmall";
    case ViolationKind::PointNotInCarrier: return "PointNotInCarrier";
    case ViolationKind::NotANeighborhood: return "NotANeighborhood";
    case ViolationKind::PropertyFails: return "PropertyFails";
    case ViolationKind::NotCovered: return "NotCovered";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string neighborhood;
  PointId point;
  std::vector<std::string> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

inline ValidationReport validate(const StructuredSpace& s) {
  ValidationReport r;
  const auto& u = s.universe();
  for (const auto& n : s.neighborhoods()) {
    if (n.carrier.size() < 2) {
      r.violations.push_back({ViolationKind::CarrierTooSmall, n.name, {}, u.names_of(n.carrier),
                              "carrier of '" + n.name +
                                  "' has fewer than two points; a fixed neighborhood must strictly contain its point "
                                  "(1-generalised structured spaces are not supported)"});
    }
    auto report = verify_descriptor(n.structure);
    for (const auto& [spec, res] : report.properties) {
      if (res.zero()) continue;
      r.violations.push_back({ViolationKind::PropertyFails, n.name, {}, res.witness,
                              std::string(to_string(spec.kind)) + " on '" + spec.op + "' fails: " + res.detail});
    }
    for (const auto& [spec, res] : report.pair_properties) {
      if (res.zero()) continue;
      r.violations.push_back({ViolationKind::PropertyFails, n.name, {}, res.witness,
                              "pair property (" + std::string(to_string(spec.left.kind)) + "," +
                                  std::string(to_string(spec.right.kind)) + ") on '" + spec.op + "' fails: " + res.detail});
    }
  }
  PointSet covered = u.empty_set();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& n = s.neighborhoods()[s.assigned(i)];
    covered |= n.carrier;
    if (!n.carrier.contains(i)) {
      r.violations.push_back({ViolationKind::PointNotInCarrier, n.name, u.name(i), {},
                              "point '" + u.name(i) + "' is not in its fixed neighborhood '" + n.name + "'"});
    } else if (!is_neighborhood(s.space(), n.carrier, u.name(i))) {
      r.violations.push_back({ViolationKind::NotANeighborhood, n.name, u.name(i), {},
                              "no open set around '" + u.name(i) + "' lies inside '" + n.name + "'"});
    }
  }
  if (!(covered == u.full_set())) {
    r.violations.push_back({ViolationKind::NotCovered, {}, {}, u.names_of(covered.complement()),
                            "assigned neighborhoods do not cover the universe"});
  }
  return r;
}

inline const StructureDescriptor& structure_map(const StructuredSpace& s, const std::string& name) {
  return s.neighborhood(name).structure.descriptor();
}

inline const StructureDescriptor& modified_structure_map(const StructuredSpace& s, const PointId& p) {
  return s.neighborhoods()[s.assigned(s.universe().index_of(p))].structure.descriptor();
}

struct CatalogEntry {
  StructureDescriptor descriptor;
  std::vector<std::string> neighborhoods;
};

// Distinct values of the structure map with the neighborhoods taking them.
inline std::vector<CatalogEntry> descriptor_catalog(const StructuredSpace& s) {
  std::vector<CatalogEntry> out;
  for (const auto& n : s.neighborhoods()) {
    const auto& d = n.structure.descriptor();
    auto it = std::find_if(out.begin(), out.end(), [&](const CatalogEntry& e) { return e.descriptor == d; });
    if (it == out.end())
      out.push_back({d, {n.name}});
    else
      it->neighborhoods.push_back(n.name);
  }
  return out;
}

inline std::vector<PointId> carrier_union(const std::vector<NamedStructure>& structures) {
  std::vector<PointId> names;
  for (const auto& [_, st] : structures)
    for (const auto& p : st.carrier().names()) names.push_back(p);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

// Space on the union of the carriers, topologized by taking the carriers as
// a subbasis. A point's fixed neighborhood is its hint when given, else the
// first carrier (by name) containing it.
inline StructuredSpace build_from_collection(std::vector<NamedStructure> structures,
                                             const std::map<PointId, std::string>& hints = {}) {
  if (structures.empty()) throw Error(Errc::EmptyCollection, "no structures given");
  std::sort(structures.begin(), structures.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [name, st] : structures) {
    if (st.size() < 2)
      throw Error(Errc::CarrierTooSmall, "carrier of '" + name + "' has fewer than two points", {name});
    auto report = verify_descriptor(st);
    if (!report.passed()) {
      std::vector<std::string> witness{name};
      for (const auto& [spec, res] : report.properties) {
        if (res.zero()) continue;
        witness.push_back(std::string(to_string(spec.kind)));
        witness.insert(witness.end(), res.witness.begin(), res.witness.end());
        break;
      }
      throw Error(Errc::UnverifiedStructure, "declared properties of '" + name + "' do not hold", witness);
    }
  }
  Universe universe(carrier_union(structures));
  std::vector<PointSet> subbasis;
  for (const auto& [_, st] : structures) subbasis.push_back(universe.set_of(st.carrier().names()));
  auto space = generate_topology(universe, subbasis);

  std::map<PointId, std::string> assignment;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& p = universe.name(i);
    auto hint = hints.find(p);
    if (hint != hints.end()) {
      auto it = std::find_if(structures.begin(), structures.end(), [&](const auto& e) { return e.first == hint->second; });
      if (it == structures.end())
        throw Error(Errc::UnknownNeighborhood, "hint names unknown neighborhood '" + hint->second + "'", {hint->second});
      if (!it->second.carrier().contains(p))
        throw Error(Errc::InvalidAssignment, "hint for '" + p + "' names a carrier not containing it", {p, hint->second});
      assignment[p] = hint->second;
      continue;
    }
    for (std::size_t k = 0; k < structures.size(); ++k) {
      if (subbasis[k].contains(i)) {
        assignment[p] = structures[k].first;
        break;
      }
    }
  }
  auto s = StructuredSpace::assemble(std::move(space), std::move(structures), assignment);
  auto report = validate(s);
  if (!report.passed()) throw Error(Errc::ValidationFailed, report.violations.front().message);
  return s;
}

// Restriction to a subfamily of the collection, on the union of its carriers
// with the subspace topology.
inline StructuredSpace subspace(const StructuredSpace& s, const std::vector<std::string>& subfamily) {
  if (subfamily.empty()) throw Error(Errc::EmptySubfamily, "subfamily must name at least one neighborhood");
  std::vector<NamedStructure> chosen;
  PointSet span = s.universe().empty_set();
  for (const auto& name : subfamily) {
    const auto& n = s.neighborhood(name);
    if (std::any_of(chosen.begin(), chosen.end(), [&](const auto& e) { return e.first == name; })) continue;
    chosen.emplace_back(n.name, n.structure);
    span |= n.carrier;
  }
  std::sort(chosen.begin(), chosen.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  Universe universe(s.universe().names_of(span));
  std::vector<PointSet> traces;
  for (auto x : span.members()) traces.push_back(remap(s.space().minimal_open(x) & span, s.universe(), universe));
  auto space = generate_topology(universe, traces);

  std::map<PointId, std::string> assignment;
  for (auto x : span.members()) {
    const auto& p = s.universe().name(x);
    const auto& current = s.neighborhoods()[s.assigned(x)].name;
    if (std::any_of(chosen.begin(), chosen.end(), [&](const auto& e) { return e.first == current; })) {
      assignment[p] = current;
      continue;
    }
    for (const auto& [name, st] : chosen) {
      if (st.carrier().contains(p)) {
        assignment[p] = name;
        break;
      }
    }
  }
  return StructuredSpace::assemble(std::move(space), std::move(chosen), assignment);
}

}  // namespace sspace

#endif  // SSPACE_SPACE_HPP
