#ifndef SSPACE_POINTSET_HPP
#define SSPACE_POINTSET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sspace/error.hpp"

namespace sspace {

using PointId = std::string;

// Subset of an indexed universe. Members are universe indices; the ordering
// is lexicographic on the ascending member list, which is the canonical order
// used for families and serialization.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe_size) : bits_(universe_size) {}

  static PointSet full(std::size_t universe_size) {
    PointSet s(universe_size);
    s.bits_.set();
    return s;
  }

  static PointSet of(std::size_t universe_size, std::initializer_list<std::size_t> members) {
    PointSet s(universe_size);
    for (auto m : members) s.insert(m);
    return s;
  }

  std::size_t universe_size() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(std::size_t i) const { return i < bits_.size() && bits_.test(i); }
  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  bool is_subset_of(const PointSet& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const PointSet& o) const { return bits_.intersects(o.bits_); }

  PointSet complement() const {
    PointSet r = *this;
    r.bits_.flip();
    return r;
  }

  PointSet& operator|=(const PointSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  PointSet& operator-=(const PointSet& o) {
    bits_ -= o.bits_;
    return *this;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(i);
    return out;
  }

  std::optional<std::size_t> first() const {
    auto i = bits_.find_first();
    if (i == Bits::npos) return std::nullopt;
    return i;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.bits_ == b.bits_; }

  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
    auto i = a.bits_.find_first();
    auto j = b.bits_.find_first();
    while (i != Bits::npos && j != Bits::npos) {
      if (i != j) return i < j ? std::strong_ordering::less : std::strong_ordering::greater;
      i = a.bits_.find_next(i);
      j = b.bits_.find_next(j);
    }
    if (i == Bits::npos && j == Bits::npos) return a.universe_size() <=> b.universe_size();
    return i == Bits::npos ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  using Bits = boost::dynamic_bitset<>;
  Bits bits_;
};

// Sorted, duplicate-free list of point names. Index order equals name order.
class Universe {
 public:
  Universe() = default;

  explicit Universe(std::vector<PointId> names) : names_(std::move(names)) {
    for (const auto& n : names_) {
      if (n.empty()) throw Error(Errc::InvalidIdentifier, "point identifiers must be nonempty");
    }
    std::sort(names_.begin(), names_.end());
    auto dup = std::adjacent_find(names_.begin(), names_.end());
    if (dup != names_.end()) throw Error(Errc::DuplicatePoint, "duplicate point '" + *dup + "'", {*dup});
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<PointId>& names() const { return names_; }
  const PointId& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(const PointId& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const PointId& p) const { return index_.count(p) != 0; }

  std::size_t index_of(const PointId& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw Error(Errc::PointOutsideUniverse, "point '" + p + "' is not in the universe", {p});
    return it->second;
  }

  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return PointSet::full(size()); }

  PointSet set_of(std::span<const PointId> members) const {
    PointSet s(size());
    for (const auto& m : members) {
      auto it = index_.find(m);
      if (it == index_.end())
        throw Error(Errc::MemberOutsideUniverse, "member '" + m + "' lies outside the universe", {m});
      s.insert(it->second);
    }
    return s;
  }
  PointSet set_of(std::initializer_list<PointId> members) const {
    return set_of(std::span<const PointId>(members.begin(), members.size()));
  }

  std::vector<PointId> names_of(const PointSet& s) const {
    std::vector<PointId> out;
    for (auto i : s.members()) out.push_back(names_.at(i));
    return out;
  }

  friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

 private:
  std::vector<PointId> names_;
  std::map<PointId, std::size_t> index_;
};

// Re-index a set from one universe into another that contains all its members.
inline PointSet remap(const PointSet& s, const Universe& from, const Universe& to) {
  PointSet out(to.size());
  for (auto i : s.members()) out.insert(to.index_of(from.name(i)));
  return out;
}

inline std::string format_set(const std::vector<PointId>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + "}";
}

}  // namespace sspace

#endif  // SSPACE_POINTSET_HPP
