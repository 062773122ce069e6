#ifndef SSPACE_CLI_HPP
#define SSPACE_CLI_HPP

// Command dispatch for the sspace tool. Exit codes: 0 when every verdict
// holds, 1 when a checked property fails, 2 when the input is invalid.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sspace/io.hpp"
#include "sspace/sspace.hpp"

namespace sspace::cli {

using io::json;
using io::Report;

namespace detail {

inline std::vector<std::string> names(const Universe& u, const PointSet& s) { return u.names_of(s); }

inline std::vector<std::string> pair_witness(const Universe& u, const std::optional<std::pair<PointSet, PointSet>>& p) {
  if (!p) return {};
  return {format_set(u.names_of(p->first)), format_set(u.names_of(p->second))};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::SyntaxError, "cannot write '" + path + "'", {path});
  out << text;
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline Report validate_cmd(const std::string& file) {
  Report r;
  auto doc = io::parse_space_file(file, false);
  auto v = validate(doc.space);
  json vs = json::array();
  for (const auto& x : v.violations)
    vs.push_back({{"kind", std::string(to_string(x.kind))}, {"neighborhood", x.neighborhood}, {"point", x.point},
                  {"witness", x.witness}, {"message", x.message}});
  std::vector<std::string> witness;
  if (!v.passed()) {
    const auto& f = v.violations.front();
    if (!f.neighborhood.empty()) witness.push_back(f.neighborhood);
    if (!f.point.empty()) witness.push_back(f.point);
    witness.insert(witness.end(), f.witness.begin(), f.witness.end());
  }
  r.add("structured space", v.passed(), witness);
  r.payload = {{"points", doc.space.universe().size()},
               {"neighborhoods", doc.space.neighborhood_names()},
               {"violations", vs}};
  return r;
}

inline Report topology_cmd(const std::string& file) {
  Report r;
  auto doc = io::parse_space_file(file);
  const auto& sp = doc.space.space();
  json opens = json::array();
  for (const auto& o : sp.opens()) opens.push_back(sp.names_of(o));
  r.add("topology", is_topology(sp.universe(), sp.opens()).ok);
  r.payload = {{"opens", opens}};
  return r;
}

inline Report connectivity_cmd(const std::string& file) {
  Report r;
  auto doc = io::parse_space_file(file);
  const auto& u = doc.space.universe();
  auto c = connectivity_report(doc.space.space());
  r.add("connected", c.connected, pair_witness(u, c.disconnection));
  r.add("hyperconnected", c.hyperconnected, pair_witness(u, c.disjoint_opens));
  r.add("ultraconnected", c.ultraconnected, pair_witness(u, c.disjoint_closed));
  std::vector<PointSet> carriers;
  for (const auto& n : doc.space.neighborhoods()) carriers.push_back(n.carrier);
  auto o = check_complete_openness(doc.space.space(), carriers);
  r.payload = {{"completely_open", o.completely_open}, {"completely_closed", o.completely_closed}};
  return r;
}

inline Report atoms_cmd(const std::string& file) {
  Report r;
  auto doc = io::parse_space_file(file);
  json atoms = json::array();
  for (const auto& a : borel_atoms(doc.space.space())) atoms.push_back(doc.space.universe().names_of(a));
  r.add("borel atoms", true);
  r.payload = {{"atoms", atoms}};
  return r;
}

inline Report product_cmd(const std::string& a, const std::string& b) {
  Report r;
  auto s1 = io::parse_space_file(a).space;
  auto s2 = io::parse_space_file(b).space;
  auto p = product(s1, s2);
  r.add("product validates", validate(p).passed());
  bool proj_ok = true;
  std::vector<std::string> witness;
  for (const auto& n : p.neighborhoods()) {
    const auto& origin = n.structure.product_origin();
    for (int side = 0; side < 2 && proj_ok; ++side) {
      auto pm = projection(n.structure, side);
      auto v = is_homomorphism(n.structure, side == 0 ? *origin->left : *origin->right, pm.operations, pm.elements);
      if (!v.holds) {
        proj_ok = false;
        witness = {n.name, v.op};
        witness.insert(witness.end(), v.witness.begin(), v.witness.end());
      }
    }
  }
  r.add("projections are homomorphisms", proj_ok, witness);
  r.payload = {{"space", io::to_json(p)}};
  return r;
}

inline Report quotient_cmd(const std::string& file, const std::string& congruence) {
  Report r;
  auto s = io::parse_space_file(file).space;
  auto specs = io::congruences_from_json(io::read_json_file(congruence), s);
  bool all = true;
  for (const auto& spec : specs) {
    auto v = check_congruence(s.neighborhood(spec.neighborhood).structure, spec.blocks);
    std::vector<std::string> w;
    if (!v.holds) {
      w = {v.op};
      w.insert(w.end(), v.witness.begin(), v.witness.end());
    }
    r.add("congruence on " + spec.neighborhood, v.holds, w);
    all = all && v.holds;
  }
  if (!all) return r;
  auto q = quotient(s, specs);
  r.add("quotient validates", validate(q).passed());
  r.payload = {{"space", io::to_json(q)}};
  return r;
}

inline Report dirlimit_cmd(const std::string& file) {
  Report r;
  auto systems = io::direct_systems_from_json(io::read_json_file(file));
  json limits = json::array();
  bool all = true;
  for (const auto& d : systems) {
    auto rep = validate_direct_system(d);
    std::vector<std::string> w;
    if (!rep.passed()) {
      const auto& f = rep.violations.front();
      w.push_back(std::string(to_string(f.fault)));
      w.insert(w.end(), f.indices.begin(), f.indices.end());
      w.insert(w.end(), f.elements.begin(), f.elements.end());
    }
    r.add("direct system " + d.name, rep.passed(), w);
    if (!rep.passed()) {
      all = false;
      continue;
    }
    auto lim = direct_limit(d);
    auto full = complete_by_composition(d);
    bool homs = true;
    std::vector<std::string> hw;
    for (const auto& [i, phi] : lim.canonical) {
      const auto& ai = full.algebras.at(i);
      auto v = is_homomorphism(ai, lim.algebra, sspace::detail::op_pairing(ai, lim.algebra), phi);
      if (!v.holds && homs) {
        homs = false;
        hw = {i, v.op};
      }
    }
    r.add("canonical maps of " + d.name + " are homomorphisms", homs, hw);
    json canon = json::object();
    for (const auto& [i, phi] : lim.canonical) {
      json m = json::object();
      for (const auto& [x, y] : phi) m[x] = y;
      canon[i] = m;
    }
    limits.push_back({{"system", d.name}, {"limit", io::to_json(lim.algebra)}, {"canonical", canon}});
  }
  r.payload = {{"limits", limits}};
  if (all && systems.size() > 1) {
    auto u = union_of_direct_limits(systems);
    r.add("union of limits validates", validate(u).passed());
    r.payload["space"] = io::to_json(u);
  }
  return r;
}

inline AtomMeasure load_measure(const StructuredSpace& s, const std::string& weights) {
  auto w = io::weights_from_json(io::read_json_file(weights), "$");
  return AtomMeasure::from_point_weights(s.space(), w);
}

inline Report measure_cmd(const std::string& file, const std::string& weights) {
  Report r;
  auto s = io::parse_space_file(file).space;
  auto m = load_measure(s, weights);
  auto part = is_partitionable(s);
  std::vector<std::string> pw = part.overlapping;
  if (!part.holds) pw.push_back(part.shared_point);
  r.add("partitionable", part.holds, pw);
  auto la = find_mu_la_partition(s, m);
  r.add("mu-LA partitionable", la.has_value(), la ? la->collection : std::vector<std::string>{});
  auto mu = is_mu_union(s, m, s.neighborhood_names());
  r.add("mu-union", mu.holds, mu.covers ? mu.overlapping : mu.uncovered);
  auto h = homogeneity(s, m);
  auto hw = [](const auto& p) { return p ? std::vector<std::string>{p->first, p->second} : std::vector<std::string>{}; };
  r.add("locally mu-homogeneous", h.locally, hw(h.local_witness));
  r.add("globally mu-homogeneous", h.globally, hw(h.global_witness));
  json atoms = json::array();
  for (std::size_t a = 0; a < m.atoms().size(); ++a)
    atoms.push_back({{"atom", s.universe().names_of(m.atoms()[a])}, {"weight", m.weights()[a].str()}});
  r.payload = {{"total", m.total().str()}, {"atoms", atoms}};
  if (la) r.payload["la_remainder"] = s.universe().names_of(la->remainder);
  return r;
}

inline Report restrict_cmd(const std::string& file, const std::string& weights, const std::string& collection) {
  Report r;
  auto s = io::parse_space_file(file).space;
  auto m = load_measure(s, weights);
  auto names = split_names(collection);
  auto c = classify_restriction(s, m, names);
  const auto& u = c.union_verdict;
  r.add("mu-union", c.is_mu_union, u.covers ? u.overlapping : u.uncovered);
  r.add("mu-CR", c.is_mu_cr, c.missing_class ? std::vector<std::string>{*c.missing_class} : std::vector<std::string>{});
  r.add("mu-CDR", c.is_mu_cdr,
        c.equivalent_pair ? std::vector<std::string>{c.equivalent_pair->first, c.equivalent_pair->second}
                          : std::vector<std::string>{});
  r.payload = {{"collection", names}};
  return r;
}

inline Report lattice_cmd(const std::string& file, const std::string& dot) {
  Report r;
  auto s = io::parse_space_file(file).space;
  auto sur = is_h_surjective(s);
  std::vector<std::string> missing;
  for (const auto& m : sur.missing) missing.push_back(format_set(m));
  r.add("h surjective", sur.holds, missing);
  auto q = induced_poset(s);
  auto v = verify_lattice(q);
  std::vector<std::string> cw;
  if (v.counterexample) cw = {v.counterexample->first, v.counterexample->second, v.missing};
  r.add("lattice", v.is_lattice, cw);
  if (v.join_is_union) {
    std::vector<std::string> uw;
    if (v.union_witness) uw = {v.union_witness->first, v.union_witness->second};
    r.add("join is union of h-values", *v.join_is_union, uw);
  }
  json h = json::object();
  for (const auto& [p, hv] : h_map(s)) h[p] = hv;
  json classes = json::array();
  for (std::size_t i = 0; i < q.order.size(); ++i)
    classes.push_back({{"label", q.order.label(i)}, {"members", q.members[i]}, {"h", q.h_values[i]}});
  json covers = json::array();
  for (auto [a, b] : q.order.covers()) covers.push_back({q.order.label(a), q.order.label(b)});
  r.payload = {{"h", h}, {"classes", classes}, {"covers", covers}};
  if (!dot.empty()) write_file(dot, to_dot(q));
  return r;
}

inline Report converse_cmd(const std::string& file) {
  Report r;
  auto l = io::poset_from_json(io::read_json_file(file));
  auto v = verify_lattice(l);
  std::vector<std::string> cw;
  if (v.counterexample) cw = {v.counterexample->first, v.counterexample->second, v.missing};
  r.add("lattice", v.is_lattice, cw);
  if (!v.is_lattice) return r;
  auto c = lattice_to_structured_space(l);
  r.add("structured space", validate(c.space).passed());
  r.add("h surjective", is_h_surjective(c.space).holds);
  r.payload = {{"space", io::to_json(c.space)}};
  return r;
}

inline Report canon_cmd(const std::string& file) {
  Report r;
  auto doc = io::parse_space_file(file);
  r.add("structured space", true);
  r.payload = {{"space", io::to_json(doc.space, doc.measure)}};
  return r;
}

}  // namespace detail

inline std::string default_format() {
  const char* env = std::getenv("SSPACE_FORMAT");
  std::string f = env ? env : "";
  return f == "json" ? "json" : "text";
}

// args excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite structured spaces: build, validate and analyse"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string format = default_format();
  std::string out_path;
  app.add_option("--format", format, "json or text (default from SSPACE_FORMAT)")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the resulting space or payload document here");

  std::string a, b, aux, collection, dot;
  auto file_arg = [&](CLI::App* sub, std::string& target, const std::string& name) {
    sub->add_option(name, target, "input file")->required();
  };
  auto* validate_c = app.add_subcommand("validate", "check the structured-space conditions");
  file_arg(validate_c, a, "space");
  auto* topology_c = app.add_subcommand("topology", "list the open sets");
  file_arg(topology_c, a, "space");
  auto* connectivity_c = app.add_subcommand("connectivity", "connected / hyperconnected / ultraconnected");
  file_arg(connectivity_c, a, "space");
  auto* atoms_c = app.add_subcommand("atoms", "Borel atoms");
  file_arg(atoms_c, a, "space");
  auto* product_c = app.add_subcommand("product", "product of two spaces");
  file_arg(product_c, a, "left");
  file_arg(product_c, b, "right");
  auto* quotient_c = app.add_subcommand("quotient", "quotient by congruences");
  file_arg(quotient_c, a, "space");
  quotient_c->add_option("--congruence", aux, "congruence file")->required();
  auto* dirlimit_c = app.add_subcommand("dirlimit", "direct limits of direct systems");
  file_arg(dirlimit_c, a, "systems");
  auto* measure_c = app.add_subcommand("measure", "partition and homogeneity analysis");
  file_arg(measure_c, a, "space");
  measure_c->add_option("--weights", aux, "weights file")->required();
  auto* restrict_c = app.add_subcommand("restrict", "classify a subcollection (mu-CR / mu-CDR)");
  file_arg(restrict_c, a, "space");
  restrict_c->add_option("--weights", aux, "weights file")->required();
  restrict_c->add_option("--collection", collection, "comma-separated neighborhood names")->required();
  auto* lattice_c = app.add_subcommand("lattice", "h-map, induced poset and lattice verdict");
  file_arg(lattice_c, a, "space");
  lattice_c->add_option("--dot", dot, "write the Hasse diagram in DOT format");
  auto* converse_c = app.add_subcommand("converse", "lattice to structured space");
  file_arg(converse_c, a, "lattice");
  auto* canon_c = app.add_subcommand("canon", "re-emit a space file in canonical form");
  file_arg(canon_c, a, "space");

  if (!args.empty() && args.front().rfind("-", 0) != 0) {
    auto subs = app.get_subcommands({});
    bool known = std::any_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      err << "error: " << to_string(Errc::UnknownCommand) << ": '" << args.front() << "'\n";
      return 2;
    }
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report r;
    if (validate_c->parsed()) r = detail::validate_cmd(a);
    else if (topology_c->parsed()) r = detail::topology_cmd(a);
    else if (connectivity_c->parsed()) r = detail::connectivity_cmd(a);
    else if (atoms_c->parsed()) r = detail::atoms_cmd(a);
    else if (product_c->parsed()) r = detail::product_cmd(a, b);
    else if (quotient_c->parsed()) r = detail::quotient_cmd(a, aux);
    else if (dirlimit_c->parsed()) r = detail::dirlimit_cmd(a);
    else if (measure_c->parsed()) r = detail::measure_cmd(a, aux);
    else if (restrict_c->parsed()) r = detail::restrict_cmd(a, aux, collection);
    else if (lattice_c->parsed()) r = detail::lattice_cmd(a, dot);
    else if (converse_c->parsed()) r = detail::converse_cmd(a);
    else r = detail::canon_cmd(a);
    r.command = args;
    if (!out_path.empty()) {
      const json& doc = r.payload.contains("space") ? r.payload["space"] : r.payload;
      detail::write_file(out_path, doc.dump(2) + "\n");
    }
    out << io::emit_report(r, format);
    return r.all_hold() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sspace::cli

#endif  // SSPACE_CLI_HPP
