#ifndef SSPACE_MEASURE_HPP
#define SSPACE_MEASURE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sspace/algebra.hpp"
#include "sspace/error.hpp"
#include "sspace/rational.hpp"
#include "sspace/space.hpp"
#include "sspace/topology.hpp"

namespace sspace {

// A measure on the Borel sets of a finite space, given by one weight per
// Borel atom. Only unions of atoms are measurable.
class AtomMeasure {
 public:
  AtomMeasure() = default;

  static AtomMeasure from_atom_weights(const FiniteSpace& space, std::vector<ExtRational> weights) {
    AtomMeasure m;
    m.space_ = space;
    m.atoms_ = borel_atoms(space);
    if (weights.size() != m.atoms_.size()) throw Error(Errc::MissingWeight, "one weight per Borel atom is required");
    m.weights_ = std::move(weights);
    m.index_atoms();
    return m;
  }

  // Every atom needs a weight from at least one of its points, and points of
  // one atom must agree.
  static AtomMeasure from_point_weights(const FiniteSpace& space, const std::map<PointId, ExtRational>& weights) {
    AtomMeasure m;
    m.space_ = space;
    m.atoms_ = borel_atoms(space);
    m.index_atoms();
    std::vector<std::optional<ExtRational>> w(m.atoms_.size());
    for (const auto& [p, value] : weights) {
      auto a = m.atom_of_[space.universe().index_of(p)];
      if (w[a] && !(*w[a] == value))
        throw Error(Errc::InconsistentWeight, "points of one Borel atom carry different weights",
                    space.universe().names_of(m.atoms_[a]));
      w[a] = value;
    }
    for (std::size_t a = 0; a < w.size(); ++a) {
      if (!w[a])
        throw Error(Errc::MissingWeight, "Borel atom " + format_set(space.universe().names_of(m.atoms_[a])) + " has no weight",
                    space.universe().names_of(m.atoms_[a]));
      m.weights_.push_back(*w[a]);
    }
    return m;
  }

  const FiniteSpace& space() const { return space_; }
  const std::vector<PointSet>& atoms() const { return atoms_; }
  const std::vector<ExtRational>& weights() const { return weights_; }
  std::size_t atom_of(std::size_t point) const { return atom_of_.at(point); }

  // Weight keyed by the first point of each atom.
  std::map<PointId, ExtRational> representative_weights() const {
    std::map<PointId, ExtRational> out;
    for (std::size_t a = 0; a < atoms_.size(); ++a) out[space_.universe().name(*atoms_[a].first())] = weights_[a];
    return out;
  }

  ExtRational total() const {
    ExtRational t;
    for (const auto& w : weights_) t += w;
    return t;
  }

 private:
  void index_atoms() {
    atom_of_.assign(space_.size(), 0);
    for (std::size_t a = 0; a < atoms_.size(); ++a)
      for (auto x : atoms_[a].members()) atom_of_[x] = a;
  }

  FiniteSpace space_;
  std::vector<PointSet> atoms_;
  std::vector<ExtRational> weights_;
  std::vector<std::size_t> atom_of_;
};

inline ExtRational measure_of(const AtomMeasure& m, const PointSet& e) {
  ExtRational sum;
  std::vector<bool> counted(m.atoms().size(), false);
  for (auto x : e.members()) {
    auto a = m.atom_of(x);
    if (counted[a]) continue;
    if (!m.atoms()[a].is_subset_of(e)) {
      const auto& u = m.space().universe();
      throw Error(Errc::NotMeasurable,
                  format_set(u.names_of(e)) + " straddles the Borel atom " + format_set(u.names_of(m.atoms()[a])),
                  u.names_of(m.atoms()[a]));
    }
    counted[a] = true;
    sum += m.weights()[a];
  }
  return sum;
}

inline ExtRational measure_of(const AtomMeasure& m, const std::vector<PointId>& e) {
  return measure_of(m, m.space().universe().set_of(e));
}

namespace detail {

inline void require_same_space(const StructuredSpace& s, const AtomMeasure& m) {
  if (!(s.space() == m.space())) throw Error(Errc::NotMeasurable, "measure is defined on a different space");
}

inline void require_measurable_carriers(const StructuredSpace& s, const AtomMeasure& m) {
  require_same_space(s, m);
  for (const auto& n : s.neighborhoods()) measure_of(m, n.carrier);
}

inline std::vector<std::size_t> resolve(const StructuredSpace& s, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto i = s.neighborhood_index(n);
    if (!i) throw Error(Errc::UnknownNeighborhood, "no neighborhood named '" + n + "'", {n});
    if (std::find(out.begin(), out.end(), *i) == out.end()) out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

struct PartitionVerdict {
  bool holds = true;
  std::vector<std::string> overlapping;  // two neighborhood names
  PointId shared_point;
};

inline PartitionVerdict is_partitionable(const StructuredSpace& s) {
  PartitionVerdict v;
  const auto& ns = s.neighborhoods();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      auto common = ns[i].carrier & ns[j].carrier;
      if (!common.empty()) {
        v.holds = false;
        v.overlapping = {ns[i].name, ns[j].name};
        v.shared_point = s.universe().name(*common.first());
        return v;
      }
    }
  }
  return v;
}

struct LaPartition {
  std::vector<std::string> collection;
  PointSet remainder;
};

namespace detail {

// Whether a chosen subcollection is a local almost-partition: disjoint, null remainder, full total.
inline bool is_la_witness(const StructuredSpace& s, const AtomMeasure& m, const std::vector<std::size_t>& chosen,
                          const ExtRational& total) {
  const auto& ns = s.neighborhoods();
  PointSet covered = s.universe().empty_set();
  ExtRational sum;
  for (auto i : chosen) {
    if (covered.intersects(ns[i].carrier)) return false;
    covered |= ns[i].carrier;
    sum += measure_of(m, ns[i].carrier);
  }
  if (!measure_of(m, covered.complement()).is_zero()) return false;
  return sum == total;
}

}  // namespace detail

// Exhaustive search over subcollections, larger ones first, then in
// lexicographic order of neighborhood names.
inline std::optional<LaPartition> find_mu_la_partition(const StructuredSpace& s, const AtomMeasure& m) {
  detail::require_measurable_carriers(s, m);
  const std::size_t k = s.neighborhoods().size();
  if (k > 24) throw Error(Errc::ResourceLimit, "too many neighborhoods for exhaustive subcollection search");
  const auto total = measure_of(m, s.universe().full_set());
  for (std::size_t r = k + 1; r-- > 0;) {
    std::vector<bool> mask(k, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < k; ++i)
        if (mask[i]) chosen.push_back(i);
      if (detail::is_la_witness(s, m, chosen, total)) {
        LaPartition out{{}, s.universe().full_set()};
        for (auto i : chosen) {
          out.collection.push_back(s.neighborhoods()[i].name);
          out.remainder -= s.neighborhoods()[i].carrier;
        }
        return out;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return std::nullopt;
}

struct NullAdditionSpec {
  std::vector<PointId> new_points;
  std::string name;                      // name of the neighborhood on Y ∪ Z
  FiniteStructure structure;             // carrier must be exactly Y ∪ Z
  std::map<PointId, ExtRational> weights;  // for new points; default 0
};

// Adds fresh points Z so that the leftover Y = X \ ∪C becomes the carrier of
// a structure; the result is partitioned by C ∪ {Y ∪ Z}. The topology is the
// extension topology with Y ∪ Z adjoined as an open set (when Y is open the
// two coincide); the measure is unchanged on the old Borel sets.
inline std::pair<StructuredSpace, AtomMeasure> apply_null_addition(const StructuredSpace& s, const AtomMeasure& m,
                                                                    const std::vector<std::string>& collection,
                                                                    const NullAdditionSpec& spec) {
  detail::require_measurable_carriers(s, m);
  auto chosen = detail::resolve(s, collection);
  const auto& u = s.universe();
  if (!detail::is_la_witness(s, m, chosen, measure_of(m, u.full_set())))
    throw Error(Errc::SpecViolation, "collection is not a local almost-partition for this measure", collection);
  for (const auto& z : spec.new_points)
    if (u.contains(z)) throw Error(Errc::SpecViolation, "added point '" + z + "' already belongs to the space", {z});
  PointSet covered = u.empty_set();
  for (auto i : chosen) covered |= s.neighborhoods()[i].carrier;
  std::vector<PointId> expected = u.names_of(covered.complement());
  expected.insert(expected.end(), spec.new_points.begin(), spec.new_points.end());
  std::sort(expected.begin(), expected.end());
  if (expected != spec.structure.carrier().names())
    throw Error(Errc::SpecViolation, "structure carrier must be the leftover points plus the added points", expected);
  if (expected.size() < 2) throw Error(Errc::SpecViolation, "leftover plus added points has fewer than two elements");
  if (!verify_descriptor(spec.structure).passed())
    throw Error(Errc::SpecViolation, "declared properties of the added structure do not hold", {spec.name});
  for (const auto& [p, _] : spec.weights)
    if (std::find(spec.new_points.begin(), spec.new_points.end(), p) == spec.new_points.end())
      throw Error(Errc::SpecViolation, "weight given for '" + p + "', which is not an added point", {p});
  for (auto i : chosen)
    if (s.neighborhoods()[i].name == spec.name)
      throw Error(Errc::SpecViolation, "added neighborhood name clashes with the collection", {spec.name});

  auto extended = extension_topology(s.space(), spec.new_points);
  std::vector<PointSet> subbasis = extended.opens();
  subbasis.push_back(extended.universe().set_of(expected));
  auto space = generate_topology(extended.universe(), subbasis);

  std::vector<NamedStructure> structures;
  for (auto i : chosen) structures.emplace_back(s.neighborhoods()[i].name, s.neighborhoods()[i].structure);
  structures.emplace_back(spec.name, spec.structure);
  std::map<PointId, std::string> assignment;
  for (std::size_t p = 0; p < u.size(); ++p) {
    if (!covered.contains(p)) continue;
    auto current = s.assigned(p);
    if (std::find(chosen.begin(), chosen.end(), current) != chosen.end()) {
      assignment[u.name(p)] = s.neighborhoods()[current].name;
      continue;
    }
    for (auto i : chosen)
      if (s.neighborhoods()[i].carrier.contains(p)) assignment[u.name(p)] = s.neighborhoods()[i].name;
  }
  for (const auto& p : expected) assignment[p] = spec.name;
  auto out = StructuredSpace::assemble(std::move(space), std::move(structures), assignment);
  auto report = validate(out);
  if (!report.passed()) throw Error(Errc::ValidationFailed, report.violations.front().message);

  std::vector<ExtRational> weights;
  for (const auto& atom : borel_atoms(out.space())) {
    auto names = out.universe().names_of(atom);
    bool added = spec.structure.carrier().contains(names.front()) && !u.contains(names.front());
    if (added) {
      ExtRational w;
      for (const auto& z : names) {
        auto it = spec.weights.find(z);
        if (it != spec.weights.end()) w += it->second;
      }
      weights.push_back(w);
    } else {
      weights.push_back(measure_of(m, names));
    }
  }
  auto extended_measure = AtomMeasure::from_atom_weights(out.space(), std::move(weights));
  return {std::move(out), std::move(extended_measure)};
}

struct MuUnionVerdict {
  bool holds = true;
  bool covers = true;
  std::vector<PointId> uncovered;
  std::vector<std::string> overlapping;  // pair whose intersection has positive measure
  ExtRational overlap;
};

namespace detail {

inline MuUnionVerdict mu_union(const Universe& u, const AtomMeasure& m,
                               const std::vector<std::pair<std::string, PointSet>>& members) {
  MuUnionVerdict v;
  PointSet covered = u.empty_set();
  for (const auto& [_, c] : members) covered |= c;
  if (!(covered == u.full_set())) {
    v.holds = false;
    v.covers = false;
    v.uncovered = u.names_of(covered.complement());
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto w = measure_of(m, members[i].second & members[j].second);
      if (w.is_positive()) {
        v.holds = false;
        v.overlapping = {members[i].first, members[j].first};
        v.overlap = w;
        return v;
      }
    }
  }
  return v;
}

}  // namespace detail

inline MuUnionVerdict is_mu_union(const StructuredSpace& s, const AtomMeasure& m,
                                  const std::vector<std::string>& collection) {
  detail::require_measurable_carriers(s, m);
  std::vector<std::pair<std::string, PointSet>> members;
  for (auto i : detail::resolve(s, collection))
    members.emplace_back(s.neighborhoods()[i].name, s.neighborhoods()[i].carrier);
  return detail::mu_union(s.universe(), m, members);
}

struct RestrictionReport {
  bool is_mu_union = false;
  bool is_mu_cr = false;
  bool is_mu_cdr = false;
  MuUnionVerdict union_verdict;
  std::optional<std::string> missing_class;                          // neighborhood whose class is absent from C
  std::optional<std::pair<std::string, std::string>> equivalent_pair;  // two ≡ members of C
};

inline RestrictionReport classify_restriction(const StructuredSpace& s, const AtomMeasure& m,
                                              const std::vector<std::string>& collection) {
  RestrictionReport r;
  r.union_verdict = is_mu_union(s, m, collection);
  r.is_mu_union = r.union_verdict.holds;
  auto chosen = detail::resolve(s, collection);
  const auto& ns = s.neighborhoods();
  for (const auto& n : ns) {
    bool present = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) {
      return descriptors_equivalent(n.structure.descriptor(), ns[i].structure.descriptor()).equivalent;
    });
    if (!present) {
      r.missing_class = n.name;
      break;
    }
  }
  r.is_mu_cr = r.is_mu_union && !r.missing_class;
  for (std::size_t a = 0; a < chosen.size() && !r.equivalent_pair; ++a) {
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      if (descriptors_equivalent(ns[chosen[a]].structure.descriptor(), ns[chosen[b]].structure.descriptor()).equivalent) {
        r.equivalent_pair = std::make_pair(ns[chosen[a]].name, ns[chosen[b]].name);
        break;
      }
    }
  }
  r.is_mu_cdr = r.is_mu_cr && !r.equivalent_pair;
  return r;
}

struct ExtensionProposal {
  std::vector<PointId> added;  // Z_j, a subset of X containing j
  FiniteStructure structure;   // on U_p ∪ Z_j
  std::string name;            // optional; defaults to "<U_p>+<j>"
};

struct EssentialAction {
  PointId point;
  std::string outside;  // the neighborhood of `point` outside C
  std::string partner;  // the unique member of C with an equivalent descriptor
  std::string extension;  // name of the accepted extension; empty when none was needed
};

struct EssentialPart {
  std::vector<NamedStructure> collection;
  std::vector<PointSet> carriers;
  std::vector<EssentialAction> actions;
  bool is_mu_union = false;  // the extended collection need not be a μ-union
};

// Replaces the fixed neighborhoods outside a μ-CDR collection by null
// extensions of their equivalent partners in C. Proposals are checked, not
// searched for.
inline EssentialPart essential_part(const StructuredSpace& s, const AtomMeasure& m,
                                    const std::vector<std::string>& collection,
                                    const std::map<PointId, ExtensionProposal>& proposals) {
  auto cls = classify_restriction(s, m, collection);
  if (!cls.is_mu_cdr) throw Error(Errc::SpecViolation, "collection is not μ-CDR", collection);
  auto chosen = detail::resolve(s, collection);
  const auto& ns = s.neighborhoods();
  const auto& u = s.universe();
  EssentialPart out;
  for (auto i : chosen) {
    out.collection.emplace_back(ns[i].name, ns[i].structure);
    out.carriers.push_back(ns[i].carrier);
  }
  for (std::size_t j = 0; j < u.size(); ++j) {
    auto outside = s.assigned(j);
    if (std::find(chosen.begin(), chosen.end(), outside) != chosen.end()) continue;
    const auto& d = ns[outside].structure.descriptor();
    std::optional<std::size_t> partner;
    for (auto i : chosen)
      if (descriptors_equivalent(d, ns[i].structure.descriptor()).equivalent) partner = i;
    if (!partner)
      throw Error(Errc::NoEquivalentInC, "no member of C carries the structure of '" + ns[outside].name + "'",
                  {ns[outside].name});
    EssentialAction action{u.name(j), ns[outside].name, ns[*partner].name, {}};
    if (ns[*partner].carrier.contains(j)) {
      out.actions.push_back(std::move(action));
      continue;
    }
    auto it = proposals.find(u.name(j));
    if (it == proposals.end())
      throw Error(Errc::MissingProposal, "point '" + u.name(j) + "' needs an extension of '" + ns[*partner].name + "'",
                  {u.name(j)});
    const auto& prop = it->second;
    auto reject = [&](const std::string& why) {
      throw Error(Errc::ProposalRejected, "proposal for '" + u.name(j) + "': " + why, {u.name(j)});
    };
    PointSet added = u.empty_set();
    for (const auto& z : prop.added) {
      auto zi = u.find(z);
      if (!zi) reject("'" + z + "' is not a point of the space");
      added.insert(*zi);
    }
    if (!added.contains(j)) reject("the added set must contain the point itself");
    ExtRational w;
    try {
      w = measure_of(m, added);
    } catch (const Error&) {
      reject("the added set is not measurable");
    }
    if (!w.is_zero()) reject("the added set has positive measure " + w.str());
    if (added.intersects(ns[*partner].carrier)) reject("the added set meets the partner carrier");
    PointSet extended = ns[*partner].carrier | added;
    if (prop.structure.carrier().names() != u.names_of(extended))
      reject("structure carrier must be the partner carrier plus the added set");
    if (!verify_descriptor(prop.structure).passed()) reject("declared properties of the extension do not hold");
    if (!descriptors_equivalent(prop.structure.descriptor(), ns[*partner].structure.descriptor()).equivalent)
      reject("the extension does not keep the partner's structure");
    std::string name = prop.name.empty() ? ns[*partner].name + "+" + u.name(j) : prop.name;
    action.extension = name;
    bool present = std::any_of(out.collection.begin(), out.collection.end(), [&](const auto& e) { return e.first == name; });
    if (!present) {
      out.collection.emplace_back(name, prop.structure);
      out.carriers.push_back(extended);
    }
    out.actions.push_back(std::move(action));
  }
  std::vector<std::pair<std::string, PointSet>> members;
  for (std::size_t k = 0; k < out.collection.size(); ++k) members.emplace_back(out.collection[k].first, out.carriers[k]);
  out.is_mu_union = detail::mu_union(u, m, members).holds;
  return out;
}

struct HomogeneityReport {
  bool locally = true;
  bool globally = true;
  std::optional<std::pair<std::string, std::string>> local_witness;   // μ(U∩V) > 0 but U ≢ V
  std::optional<std::pair<std::string, std::string>> global_witness;  // first pair breaking the biconditional
};

inline HomogeneityReport homogeneity(const StructuredSpace& s, const AtomMeasure& m) {
  detail::require_measurable_carriers(s, m);
  HomogeneityReport r;
  const auto& ns = s.neighborhoods();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      bool near = measure_of(m, ns[i].carrier & ns[j].carrier).is_positive();
      bool same = descriptors_equivalent(ns[i].structure.descriptor(), ns[j].structure.descriptor()).equivalent;
      if (near && !same && r.locally) {
        r.locally = false;
        r.local_witness = std::make_pair(ns[i].name, ns[j].name);
      }
      if (near != same && r.globally) {
        r.globally = false;
        r.global_witness = std::make_pair(ns[i].name, ns[j].name);
      }
    }
  }
  return r;
}

}  // namespace sspace

#endif  // SSPACE_MEASURE_HPP
