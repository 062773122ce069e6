#ifndef SSPACE_TESTS_SUPPORT_HPP
#define SSPACE_TESTS_SUPPORT_HPP

// Shared fixtures plus oracles that recompute results by separate, naive
// code paths. Nothing here calls the library's search routines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sspace/sspace.hpp"

namespace fx {

using namespace sspace;

inline std::string fixture(const std::string& name) { return std::string(SSPACE_FIXTURES) + "/" + name; }

inline std::vector<PointId> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

// Z_n on explicit point names, point k standing for residue k.
inline FiniteStructure zn(const std::vector<PointId>& pts, const std::string& op = "+") {
  std::map<PointId, std::size_t> residue;
  for (std::size_t k = 0; k < pts.size(); ++k) residue[pts[k]] = k;
  std::vector<std::array<PointId, 3>> rows;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) rows.push_back({pts[a], pts[b], pts[(a + b) % pts.size()]});
  Universe c(pts);
  auto t = FiniteStructure::table_from_entries(c, op, rows);
  return FiniteStructure::make(c, {t}, samples::group_properties(op, true));
}

// F1: U_a = Z2 on {1,2}, U_b = Z2 on {2,3}, generated topology.
inline StructuredSpace f1() {
  return build_from_collection({{"U_a", zn({"1", "2"})}, {"U_b", zn({"2", "3"})}});
}

inline StructuredSpace single(const FiniteStructure& s, const std::string& name = "G") {
  return build_from_collection({{name, s}});
}

inline AtomMeasure weights(const StructuredSpace& s, const std::map<PointId, std::string>& w) {
  std::map<PointId, ExtRational> m;
  for (const auto& [p, v] : w) m[p] = ExtRational::parse(v);
  return AtomMeasure::from_point_weights(s.space(), m);
}

}  // namespace fx

namespace oracle {

using Mask = std::uint32_t;

// Smallest family containing the subbasis, ∅ and X, closed under pairwise
// union and intersection: add pairs until nothing changes.
inline std::set<Mask> fixpoint_topology(int n, const std::vector<Mask>& subbasis) {
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::set<Mask> fam(subbasis.begin(), subbasis.end());
  fam.insert(0);
  fam.insert(full);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(fam.begin(), fam.end());
    for (auto a : cur)
      for (auto b : cur) {
        grew |= fam.insert(a | b).second;
        grew |= fam.insert(a & b).second;
      }
  }
  return fam;
}

inline Mask to_mask(const sspace::PointSet& s) {
  Mask m = 0;
  for (auto i : s.members()) m |= Mask{1} << i;
  return m;
}

inline sspace::PointSet to_set(std::size_t n, Mask m) {
  sspace::PointSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (m >> i & 1) s.insert(i);
  return s;
}

inline std::set<Mask> opens_of(const sspace::FiniteSpace& sp) {
  std::set<Mask> out;
  for (const auto& o : sp.opens()) out.insert(to_mask(o));
  return out;
}

// Points grouped by the exact set of opens containing them.
inline std::set<Mask> atoms_by_signature(int n, const std::set<Mask>& opens) {
  std::map<std::vector<bool>, Mask> groups;
  for (int x = 0; x < n; ++x) {
    std::vector<bool> sig;
    for (auto o : opens) sig.push_back(o >> x & 1);
    groups[sig] |= Mask{1} << x;
  }
  std::set<Mask> out;
  for (const auto& [_, m] : groups) out.insert(m);
  return out;
}

// Raw table: t[a*n+b] = a·b, or -1 when undefined.
struct Table {
  int n;
  std::vector<int> t;
  int at(int a, int b) const { return t[a * n + b]; }
};

inline bool closure(const Table& m) {
  return std::all_of(m.t.begin(), m.t.end(), [](int v) { return v >= 0; });
}

inline bool commutative(const Table& m) {
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      if (m.at(x, y) != m.at(y, x)) return false;  // covers definedness too
  return true;
}

inline bool associative(const Table& m) {
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      for (int z = 0; z < m.n; ++z) {
        int xy = m.at(x, y), yz = m.at(y, z);
        int l = xy < 0 ? -1 : m.at(xy, z);
        int r = yz < 0 ? -1 : m.at(x, yz);
        if (l != r) return false;
      }
  return true;
}

inline bool is_left_unit(const Table& m, int e) {
  for (int x = 0; x < m.n; ++x)
    if (m.at(e, x) != x) return false;
  return true;
}
inline bool is_right_unit(const Table& m, int e) {
  for (int x = 0; x < m.n; ++x)
    if (m.at(x, e) != x) return false;
  return true;
}
inline bool left_identity(const Table& m) {
  for (int e = 0; e < m.n; ++e)
    if (is_left_unit(m, e)) return true;
  return false;
}
inline bool right_identity(const Table& m) {
  for (int e = 0; e < m.n; ++e)
    if (is_right_unit(m, e)) return true;
  return false;
}
inline bool identity(const Table& m) {
  for (int e = 0; e < m.n; ++e)
    if (is_left_unit(m, e) && is_right_unit(m, e)) return true;
  return false;
}
inline bool invertible(const Table& m) {
  for (int e = 0; e < m.n; ++e) {
    if (!(is_left_unit(m, e) && is_right_unit(m, e))) continue;
    for (int x = 0; x < m.n; ++x) {
      bool found = false;
      for (int y = 0; y < m.n && !found; ++y) found = m.at(x, y) == e && m.at(y, x) == e;
      if (!found) return false;
    }
    return true;
  }
  return false;
}

inline bool holds(const Table& m, sspace::PropertyKind k) {
  using sspace::PropertyKind;
  switch (k) {
    case PropertyKind::Closure: return closure(m);
    case PropertyKind::Commutativity: return commutative(m);
    case PropertyKind::Associativity: return associative(m);
    case PropertyKind::LeftIdentity: return left_identity(m);
    case PropertyKind::RightIdentity: return right_identity(m);
    case PropertyKind::Identity: return identity(m);
    case PropertyKind::Invertibility: return invertible(m);
  }
  return false;
}

inline sspace::FiniteStructure to_structure(const Table& m, const std::string& op = "*",
                                            std::vector<sspace::PropertySpec> props = {}) {
  std::vector<sspace::PointId> pts;
  for (int i = 0; i < m.n; ++i) pts.push_back("e" + std::to_string(i));
  sspace::Universe c(pts);
  sspace::OperationTable t(op, m.n);
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      if (m.at(a, b) >= 0) t.set(a, b, m.at(a, b));
  return sspace::FiniteStructure::make(c, {t}, std::move(props));
}

// Upper sets as bitmasks: c is the join of a, b iff c bounds both and
// every upper bound of a and b lies above c, i.e. up(c) = up(a) ∩ up(b).
struct Order {
  int n;
  std::vector<Mask> up;    // up[i] = {j : i ≤ j}
  std::vector<Mask> down;  // down[i] = {j : j ≤ i}
};

inline Order close(int n, std::vector<std::vector<bool>> rel) {
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  Order o{n, std::vector<Mask>(n, 0), std::vector<Mask>(n, 0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) {
        o.up[i] |= Mask{1} << j;
        o.down[j] |= Mask{1} << i;
      }
  return o;
}

inline std::optional<int> join(const Order& o, int a, int b) {
  Mask ub = o.up[a] & o.up[b];
  for (int c = 0; c < o.n; ++c)
    if ((ub >> c & 1) && o.up[c] == ub) return c;
  return std::nullopt;
}
inline std::optional<int> meet(const Order& o, int a, int b) {
  Mask lb = o.down[a] & o.down[b];
  for (int c = 0; c < o.n; ++c)
    if ((lb >> c & 1) && o.down[c] == lb) return c;
  return std::nullopt;
}
inline bool is_lattice(const Order& o) {
  for (int a = 0; a < o.n; ++a)
    for (int b = 0; b < o.n; ++b)
      if (!join(o, a, b) || !meet(o, a, b)) return false;
  return true;
}

// All partial orders on n labelled elements as leq matrices.
inline std::vector<std::vector<std::vector<bool>>> all_posets(int n) {
  std::vector<std::pair<int, int>> offdiag;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) offdiag.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << offdiag.size()); ++bits) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < offdiag.size(); ++k)
      if (bits >> k & 1) r[offdiag[k].first][offdiag[k].second] = true;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && r[i][j] && r[j][i]) ok = false;
        for (int k = 0; k < n && ok; ++k)
          if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
      }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace oracle

#endif  // SSPACE_TESTS_SUPPORT_HPP
