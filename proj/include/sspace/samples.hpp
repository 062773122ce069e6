#ifndef SSPACE_SAMPLES_HPP
#define SSPACE_SAMPLES_HPP

// Small named structures used by fixtures, tests and documentation.

#include <array>
#include <string>
#include <vector>

#include "sspace/algebra.hpp"

namespace sspace::samples {

inline std::vector<PointId> labels(const std::string& prefix, std::size_t n) {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline std::vector<PropertySpec> group_properties(const std::string& op, bool abelian) {
  std::vector<PropertySpec> p = {{PropertyKind::Closure, op},
                                 {PropertyKind::Associativity, op},
                                 {PropertyKind::Identity, op},
                                 {PropertyKind::Invertibility, op}};
  if (abelian) p.push_back({PropertyKind::Commutativity, op});
  return p;
}

// Z_n under addition on points prefix0 .. prefix(n-1).
inline FiniteStructure cyclic_group(std::size_t n, const std::string& prefix = "", const std::string& op = "+") {
  Universe carrier(labels(prefix, n));
  OperationTable t(op, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t.set(carrier.index_of(prefix + std::to_string(a)), carrier.index_of(prefix + std::to_string(b)),
            carrier.index_of(prefix + std::to_string((a + b) % n)));
  return FiniteStructure::make(std::move(carrier), {std::move(t)}, group_properties(op, true));
}

// Klein four-group {e, a, b, c} with xor-style multiplication.
inline FiniteStructure klein_four(const std::string& op = "*") {
  Universe carrier({"a", "b", "c", "e"});
  // bit encoding: e=0, a=1, b=2, c=3
  const std::array<PointId, 4> name = {"e", "a", "b", "c"};
  OperationTable t(op, 4);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      t.set(carrier.index_of(name[x]), carrier.index_of(name[y]), carrier.index_of(name[x ^ y]));
  return FiniteStructure::make(std::move(carrier), {std::move(t)}, group_properties(op, true));
}

// Symmetric group S3 as permutations of {0,1,2}, named by one-line notation.
inline FiniteStructure symmetric_group_s3(const std::string& op = "o") {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto name_of = [](const std::array<int, 3>& q) {
    return std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]);
  };
  std::vector<PointId> names;
  for (const auto& q : perms) names.push_back(name_of(q));
  Universe carrier(names);
  OperationTable t(op, 6);
  for (const auto& f : perms) {
    for (const auto& g : perms) {
      std::array<int, 3> fg{};
      for (int i = 0; i < 3; ++i) fg[i] = f[g[i]];  // (f∘g)(i)
      t.set(carrier.index_of(name_of(f)), carrier.index_of(name_of(g)), carrier.index_of(name_of(fg)));
    }
  }
  return FiniteStructure::make(std::move(carrier), {std::move(t)}, group_properties(op, false));
}

// x·y = x on the given carrier.
inline FiniteStructure left_projection(std::vector<PointId> points, std::vector<PropertySpec> properties,
                                       const std::string& op = "*") {
  Universe carrier(std::move(points));
  auto t = OperationTable::from_function(op, carrier.size(), [](std::size_t x, std::size_t) { return x; });
  return FiniteStructure::make(std::move(carrier), {std::move(t)}, std::move(properties));
}

// Constant operation x·y = c; a closed, associative, commutative magma.
inline FiniteStructure constant_magma(std::vector<PointId> points, const PointId& value, const std::string& op = "*") {
  Universe carrier(std::move(points));
  const std::size_t c = carrier.index_of(value);
  auto t = OperationTable::from_function(op, carrier.size(), [c](std::size_t, std::size_t) { return c; });
  return FiniteStructure::make(std::move(carrier), {std::move(t)},
                               {{PropertyKind::Closure, op}, {PropertyKind::Commutativity, op}});
}

}  // namespace sspace::samples

#endif  // SSPACE_SAMPLES_HPP
