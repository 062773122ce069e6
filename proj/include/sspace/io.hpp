#ifndef SSPACE_IO_HPP
#define SSPACE_IO_HPP

// JSON documents for spaces, weights, congruences, direct systems, lattices
// and reports.

#include <array>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sspace/algebra.hpp"
#include "sspace/constructions.hpp"
#include "sspace/error.hpp"
#include "sspace/lattice.hpp"
#include "sspace/measure.hpp"
#include "sspace/rational.hpp"
#include "sspace/space.hpp"
#include "sspace/topology.hpp"

namespace sspace::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void syntax(const std::string& path, const std::string& what) {
  throw Error(Errc::SyntaxError, (path.empty() ? std::string("$") : path) + ": " + what, {path.empty() ? "$" : path});
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) syntax(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) syntax(path, "missing \"" + key + "\"");
  return *it;
}

inline std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) syntax(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings(const json& j, const std::string& path) {
  if (!j.is_array()) syntax(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::map<std::string, std::string> string_map(const json& j, const std::string& path) {
  if (!j.is_object()) syntax(path, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = str(it.value(), path + "." + it.key());
  return out;
}

inline PropertySpec property(const json& j, const std::string& path) {
  auto kind = str(field(j, "kind", path), path + ".kind");
  auto k = parse_property_kind(kind);
  if (!k) syntax(path + ".kind", "unknown property kind '" + kind + "'");
  return {*k, str(field(j, "op", path), path + ".op")};
}

// Errors from the library are re-thrown with the document path prepended.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::SyntaxError) throw;
    throw Error(e.code(), path + ": " + e.message(), e.witness());
  }
}

}  // namespace detail

inline json to_json(const PropertySpec& p) { return {{"kind", std::string(to_string(p.kind))}, {"op", p.op}}; }

inline json to_json(const FiniteStructure& s) {
  json j;
  j["points"] = s.carrier().names();
  json ops = json::array();
  for (const auto& t : s.tables()) {
    json entries = json::array();
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = 0; b < s.size(); ++b)
        if (t.defined(a, b))
          entries.push_back({s.carrier().name(a), s.carrier().name(b), s.carrier().name(t.at(a, b))});
    ops.push_back({{"name", t.name()}, {"entries", entries}});
  }
  j["operations"] = ops;
  json props = json::array();
  for (const auto& p : s.descriptor().properties) props.push_back(to_json(p));
  j["properties"] = props;
  if (!s.descriptor().pair_properties.empty()) {
    json pairs = json::array();
    for (const auto& p : s.descriptor().pair_properties)
      pairs.push_back({{"op", p.op}, {"left", to_json(p.left)}, {"right", to_json(p.right)}});
    j["pair_properties"] = pairs;
  }
  json tags = json::array();
  for (const auto& t : s.descriptor().nonalg) tags.push_back({{"label", t.label}, {"payload", t.payload}});
  j["nonalg"] = tags;
  if (const auto& o = s.product_origin()) {
    json elems = json::object();
    for (std::size_t i = 0; i < s.size(); ++i)
      elems[s.carrier().name(i)] = {o->left->carrier().name(o->elements[i].first),
                                    o->right->carrier().name(o->elements[i].second)};
    json opmap = json::object();
    for (const auto& [op, parts] : o->operations) opmap[op] = {parts.first, parts.second};
    j["product"] = {{"left", to_json(*o->left)}, {"right", to_json(*o->right)}, {"elements", elems}, {"operations", opmap}};
  }
  return j;
}

inline FiniteStructure structure_from_json(const json& j, const std::string& path) {
  auto points = detail::strings(detail::field(j, "points", path), path + ".points");
  auto carrier = detail::at_path(path + ".points", [&] { return Universe(points); });
  std::vector<OperationTable> tables;
  std::vector<std::string> names;
  const auto& ops = detail::field(j, "operations", path);
  if (!ops.is_array()) detail::syntax(path + ".operations", "expected an array");
  for (std::size_t k = 0; k < ops.size(); ++k) {
    std::string p = path + ".operations[" + std::to_string(k) + "]";
    auto name = detail::str(detail::field(ops[k], "name", p), p + ".name");
    const auto& entries = detail::field(ops[k], "entries", p);
    if (!entries.is_array()) detail::syntax(p + ".entries", "expected an array");
    std::vector<std::array<PointId, 3>> rows;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      std::string ep = p + ".entries[" + std::to_string(e) + "]";
      auto row = detail::strings(entries[e], ep);
      if (row.size() != 3) detail::syntax(ep, "an entry is [a, b, a·b]");
      rows.push_back({row[0], row[1], row[2]});
    }
    tables.push_back(detail::at_path(p, [&] { return FiniteStructure::table_from_entries(carrier, name, rows); }));
    names.push_back(name);
  }
  std::vector<PropertySpec> props;
  if (j.contains("properties")) {
    const auto& ps = j["properties"];
    if (!ps.is_array()) detail::syntax(path + ".properties", "expected an array");
    for (std::size_t k = 0; k < ps.size(); ++k)
      props.push_back(detail::property(ps[k], path + ".properties[" + std::to_string(k) + "]"));
  }
  std::vector<PairPropertySpec> pairs;
  if (j.contains("pair_properties")) {
    const auto& ps = j["pair_properties"];
    if (!ps.is_array()) detail::syntax(path + ".pair_properties", "expected an array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::string p = path + ".pair_properties[" + std::to_string(k) + "]";
      pairs.push_back({detail::str(detail::field(ps[k], "op", p), p + ".op"),
                       detail::property(detail::field(ps[k], "left", p), p + ".left"),
                       detail::property(detail::field(ps[k], "right", p), p + ".right")});
    }
  }
  std::vector<NonAlgTag> tags;
  if (j.contains("nonalg")) {
    const auto& ts = j["nonalg"];
    if (!ts.is_array()) detail::syntax(path + ".nonalg", "expected an array");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      std::string p = path + ".nonalg[" + std::to_string(k) + "]";
      std::string payload = ts[k].contains("payload") ? detail::str(ts[k]["payload"], p + ".payload") : "";
      tags.push_back({detail::str(detail::field(ts[k], "label", p), p + ".label"), payload});
    }
  }
  auto d = detail::at_path(path, [&] { return StructureDescriptor::make(names, props, tags, pairs); });
  std::shared_ptr<const ProductOrigin> origin;
  if (j.contains("product")) {
    std::string p = path + ".product";
    const auto& pj = j["product"];
    auto o = std::make_shared<ProductOrigin>();
    o->left = std::make_shared<const FiniteStructure>(structure_from_json(detail::field(pj, "left", p), p + ".left"));
    o->right = std::make_shared<const FiniteStructure>(structure_from_json(detail::field(pj, "right", p), p + ".right"));
    const auto& elems = detail::field(pj, "elements", p);
    o->elements.resize(carrier.size());
    std::vector<bool> seen(carrier.size(), false);
    for (auto it = elems.begin(); it != elems.end(); ++it) {
      std::string ep = p + ".elements." + it.key();
      auto parts = detail::strings(it.value(), ep);
      auto x = carrier.find(it.key());
      auto l = o->left->carrier().find(parts.size() == 2 ? parts[0] : "");
      auto r = o->right->carrier().find(parts.size() == 2 ? parts[1] : "");
      if (!x || !l || !r) detail::syntax(ep, "element pair does not resolve");
      o->elements[*x] = {*l, *r};
      seen[*x] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) detail::syntax(p + ".elements", "not every point is paired");
    const auto& opmap = detail::field(pj, "operations", p);
    for (auto it = opmap.begin(); it != opmap.end(); ++it) {
      auto parts = detail::strings(it.value(), p + ".operations." + it.key());
      if (parts.size() != 2) detail::syntax(p + ".operations." + it.key(), "expected [left op, right op]");
      o->operations[it.key()] = {parts[0], parts[1]};
    }
    origin = std::move(o);
  }
  return detail::at_path(path, [&] { return FiniteStructure(carrier, std::move(tables), std::move(d), origin); });
}

struct SpaceDocument {
  StructuredSpace space;
  std::optional<AtomMeasure> measure;
};

inline std::map<PointId, ExtRational> weights_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) detail::syntax(path, "expected an object mapping points to weights");
  std::map<PointId, ExtRational> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string p = path + "." + it.key();
    std::string text = it.value().is_number_unsigned() ? std::to_string(it.value().get<unsigned long long>())
                                                      : detail::str(it.value(), p);
    out[it.key()] = detail::at_path(p, [&] { return ExtRational::parse(text); });
  }
  return out;
}

inline json weights_to_json(const std::map<PointId, ExtRational>& w) {
  json j = json::object();
  for (const auto& [p, v] : w) j[p] = v.str();
  return j;
}

// Unless `check` is false, the parsed space must pass validate.
inline SpaceDocument space_from_json(const json& j, bool check = true) {
  if (!j.is_object()) detail::syntax("", "expected a space document");
  auto points = detail::strings(detail::field(j, "points", ""), "$.points");
  auto universe = detail::at_path("$.points", [&] { return Universe(points); });
  const auto& ns = detail::field(j, "neighborhoods", "$");
  if (!ns.is_array()) detail::syntax("$.neighborhoods", "expected an array");
  std::vector<NamedStructure> structures;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::string p = "$.neighborhoods[" + std::to_string(k) + "]";
    auto name = detail::str(detail::field(ns[k], "name", p), p + ".name");
    auto st = structure_from_json(ns[k], p);
    for (const auto& x : st.carrier().names())
      if (!universe.contains(x))
        throw Error(Errc::MemberOutsideUniverse, p + ".points: '" + x + "' is not a point of the space", {x});
    structures.emplace_back(name, std::move(st));
  }
  auto assignment = detail::string_map(detail::field(j, "assignment", "$"), "$.assignment");
  const auto& top = detail::field(j, "topology", "$");
  auto mode = detail::str(detail::field(top, "mode", "$.topology"), "$.topology.mode");
  auto space = [&] {
    if (mode == "explicit") {
      const auto& opens = detail::field(top, "opens", "$.topology");
      if (!opens.is_array()) detail::syntax("$.topology.opens", "expected an array");
      std::vector<PointSet> family;
      for (std::size_t k = 0; k < opens.size(); ++k) {
        std::string p = "$.topology.opens[" + std::to_string(k) + "]";
        auto names = detail::strings(opens[k], p);
        family.push_back(detail::at_path(p, [&] { return universe.set_of(names); }));
      }
      return detail::at_path("$.topology", [&] { return FiniteSpace::from_opens(universe, family); });
    }
    if (mode == "generate") {
      std::vector<PointSet> subbasis;
      if (top.contains("subbasis")) {
        for (std::size_t k = 0; k < top["subbasis"].size(); ++k) {
          std::string p = "$.topology.subbasis[" + std::to_string(k) + "]";
          auto names = detail::strings(top["subbasis"][k], p);
          subbasis.push_back(detail::at_path(p, [&] { return universe.set_of(names); }));
        }
      } else {
        for (const auto& [_, st] : structures) subbasis.push_back(universe.set_of(st.carrier().names()));
      }
      return detail::at_path("$.topology", [&] { return generate_topology(universe, subbasis); });
    }
    detail::syntax("$.topology.mode", "mode must be \"generate\" or \"explicit\"");
  }();
  SpaceDocument doc;
  doc.space = detail::at_path("$", [&] { return StructuredSpace::assemble(space, structures, assignment); });
  if (check) {
    auto report = validate(doc.space);
    if (!report.passed()) throw Error(Errc::ValidationFailed, report.violations.front().message);
  }
  if (j.contains("measure")) {
    auto w = weights_from_json(j["measure"], "$.measure");
    doc.measure = detail::at_path("$.measure", [&] { return AtomMeasure::from_point_weights(doc.space.space(), w); });
  }
  return doc;
}

// Always writes the topology as explicit opens, in canonical order.
inline json to_json(const StructuredSpace& s, const std::optional<AtomMeasure>& measure = std::nullopt) {
  json j;
  j["points"] = s.universe().names();
  json ns = json::array();
  for (const auto& n : s.neighborhoods()) {
    json e = {{"name", n.name}};
    json st = to_json(n.structure);
    for (auto& [k, v] : st.items()) e[k] = v;
    ns.push_back(e);
  }
  j["neighborhoods"] = ns;
  json a = json::object();
  for (const auto& [p, n] : s.assignment()) a[p] = n;
  j["assignment"] = a;
  json opens = json::array();
  for (const auto& o : s.space().opens()) opens.push_back(s.universe().names_of(o));
  j["topology"] = {{"mode", "explicit"}, {"opens", opens}};
  if (measure) j["measure"] = weights_to_json(measure->representative_weights());
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::SyntaxError, "cannot open '" + path + "'", {path});
  std::stringstream buf;
  buf << in.rdbuf();
  auto text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw Error(Errc::SyntaxError, path + ": empty document", {path});
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SyntaxError, path + ": " + e.what(), {path});
  }
}

inline json parse_json_text(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Error(Errc::SyntaxError, "empty document");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SyntaxError, e.what());
  }
}

inline SpaceDocument parse_space_file(const std::string& path, bool check = true) {
  return space_from_json(read_json_file(path), check);
}

// {"congruences": [{"neighborhood": N, "blocks": [[..], ..]} | {"neighborhood": N, "subgroup": [..]}]}
inline std::vector<CongruenceSpec> congruences_from_json(const json& j, const StructuredSpace& s) {
  const auto& cs = detail::field(j, "congruences", "$");
  if (!cs.is_array()) detail::syntax("$.congruences", "expected an array");
  std::vector<CongruenceSpec> out;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    std::string p = "$.congruences[" + std::to_string(k) + "]";
    CongruenceSpec spec;
    spec.neighborhood = detail::str(detail::field(cs[k], "neighborhood", p), p + ".neighborhood");
    if (cs[k].contains("subgroup")) {
      auto h = detail::strings(cs[k]["subgroup"], p + ".subgroup");
      spec.blocks = detail::at_path(p, [&] { return normal_subgroup_congruence(s.neighborhood(spec.neighborhood).structure, h); });
    } else {
      const auto& bs = detail::field(cs[k], "blocks", p);
      if (!bs.is_array()) detail::syntax(p + ".blocks", "expected an array");
      for (std::size_t b = 0; b < bs.size(); ++b) spec.blocks.push_back(detail::strings(bs[b], p + ".blocks[" + std::to_string(b) + "]"));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

inline json to_json(const DirectSystem& d) {
  json j;
  j["name"] = d.name;
  j["index"] = d.index;
  json order = json::array();
  for (const auto& [a, b] : d.order) order.push_back({a, b});
  j["order"] = order;
  json algebras = json::object();
  for (const auto& [i, a] : d.algebras) algebras[i] = to_json(a);
  j["algebras"] = algebras;
  json maps = json::array();
  for (const auto& [ij, m] : d.maps) {
    json mj = json::object();
    for (const auto& [x, y] : m) mj[x] = y;
    maps.push_back({{"from", ij.first}, {"to", ij.second}, {"map", mj}});
  }
  j["maps"] = maps;
  return j;
}

inline DirectSystem direct_system_from_json(const json& j, const std::string& path) {
  DirectSystem d;
  d.name = detail::str(detail::field(j, "name", path), path + ".name");
  d.index = detail::strings(detail::field(j, "index", path), path + ".index");
  const auto& order = detail::field(j, "order", path);
  if (!order.is_array()) detail::syntax(path + ".order", "expected an array");
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto pr = detail::strings(order[k], path + ".order[" + std::to_string(k) + "]");
    if (pr.size() != 2) detail::syntax(path + ".order[" + std::to_string(k) + "]", "expected [i, j]");
    d.order.emplace_back(pr[0], pr[1]);
  }
  const auto& algebras = detail::field(j, "algebras", path);
  if (!algebras.is_object()) detail::syntax(path + ".algebras", "expected an object");
  for (auto it = algebras.begin(); it != algebras.end(); ++it)
    d.algebras.emplace(it.key(), structure_from_json(it.value(), path + ".algebras." + it.key()));
  if (j.contains("maps")) {
    const auto& maps = j["maps"];
    if (!maps.is_array()) detail::syntax(path + ".maps", "expected an array");
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::string p = path + ".maps[" + std::to_string(k) + "]";
      auto from = detail::str(detail::field(maps[k], "from", p), p + ".from");
      auto to = detail::str(detail::field(maps[k], "to", p), p + ".to");
      auto m = detail::string_map(detail::field(maps[k], "map", p), p + ".map");
      d.maps[{from, to}] = std::map<PointId, PointId>(m.begin(), m.end());
    }
  }
  return d;
}

// Accepts a single system or {"systems": [...]}.
inline std::vector<DirectSystem> direct_systems_from_json(const json& j) {
  std::vector<DirectSystem> out;
  if (j.is_object() && j.contains("systems")) {
    const auto& ss = j["systems"];
    if (!ss.is_array()) detail::syntax("$.systems", "expected an array");
    for (std::size_t k = 0; k < ss.size(); ++k) out.push_back(direct_system_from_json(ss[k], "$.systems[" + std::to_string(k) + "]"));
  } else {
    out.push_back(direct_system_from_json(j, "$"));
  }
  return out;
}

// {"carrier": [...], "covers": [[lower, upper], ...]}
inline Poset poset_from_json(const json& j) {
  auto carrier = detail::strings(detail::field(j, "carrier", "$"), "$.carrier");
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    const auto& cs = j["covers"];
    if (!cs.is_array()) detail::syntax("$.covers", "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      auto pr = detail::strings(cs[k], "$.covers[" + std::to_string(k) + "]");
      if (pr.size() != 2) detail::syntax("$.covers[" + std::to_string(k) + "]", "expected [lower, upper]");
      covers.emplace_back(pr[0], pr[1]);
    }
  }
  return detail::at_path("$", [&] { return Poset::from_covers(carrier, covers); });
}

inline json to_json(const Poset& p) {
  json covers = json::array();
  for (auto [a, b] : p.covers()) covers.push_back({p.label(a), p.label(b)});
  return {{"carrier", p.labels()}, {"covers", covers}};
}

struct Verdict {
  std::string name;
  bool holds = true;
  std::vector<std::string> witness;
  bool operator==(const Verdict&) const = default;
};

struct Report {
  std::vector<std::string> command;
  std::vector<Verdict> verdicts;
  json payload = json::object();

  bool all_hold() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds; });
  }
  void add(std::string name, bool holds, std::vector<std::string> witness = {}) {
    verdicts.push_back({std::move(name), holds, std::move(witness)});
  }
  bool operator==(const Report& o) const {
    return command == o.command && verdicts == o.verdicts && payload == o.payload;
  }
};

inline json to_json(const Report& r) {
  json vs = json::array();
  for (const auto& v : r.verdicts) vs.push_back({{"name", v.name}, {"holds", v.holds}, {"witness", v.witness}});
  return {{"command", r.command}, {"verdicts", vs}, {"payload", r.payload}};
}

inline Report report_from_json(const json& j) {
  Report r;
  r.command = detail::strings(detail::field(j, "command", "$"), "$.command");
  const auto& vs = detail::field(j, "verdicts", "$");
  if (!vs.is_array()) detail::syntax("$.verdicts", "expected an array");
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::string p = "$.verdicts[" + std::to_string(k) + "]";
    const auto& h = detail::field(vs[k], "holds", p);
    if (!h.is_boolean()) detail::syntax(p + ".holds", "expected a boolean");
    r.verdicts.push_back({detail::str(detail::field(vs[k], "name", p), p + ".name"), h.get<bool>(),
                          detail::strings(detail::field(vs[k], "witness", p), p + ".witness")});
  }
  r.payload = detail::field(j, "payload", "$");
  return r;
}

inline std::string render_text(const Report& r) {
  std::string out;
  for (const auto& v : r.verdicts) {
    out += (v.holds ? "✓ " : "✗ ") + v.name;
    if (!v.witness.empty()) {
      out += "  witness: ";
      for (std::size_t i = 0; i < v.witness.size(); ++i) out += (i ? ", " : "") + v.witness[i];
    }
    out += "\n";
  }
  return out;
}

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "text") return render_text(r) + (r.payload.empty() ? "" : r.payload.dump(2) + "\n");
  return to_json(r).dump(2) + "\n";
}

}  // namespace sspace::io

#endif  // SSPACE_IO_HPP
