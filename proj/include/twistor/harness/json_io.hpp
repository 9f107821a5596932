#pragma once

// Serialization of counting reports, decompositions and solver results, and
// parsing of the zeta / plane / witness input documents.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistor/curves/count.hpp"
#include "twistor/decomp/solver.hpp"
#include "twistor/exact/json.hpp"
#include "twistor/roots/json.hpp"

namespace twistor::harness {

using nlohmann::json;

inline json indices_json(const roots::RootMask& m, std::size_t limit) { return roots::mask_indices(m, limit); }

inline json to_json(const curves::CurveCountReport& r, const roots::RootSystem& sys) {
  json points = json::array();
  for (const auto& p : r.points) {
    json jp;
    if (p.location)
      jp["location"] = *p.location;
    else
      jp["private"] = json{{"class", *p.private_class}, {"slot", p.private_slot}};
    json classes = json::array();
    for (std::size_t k : p.incident_classes) classes.push_back(r.classes[k].positive_roots);
    jp["classes"] = classes;
    jp["multiplicity"] = p.multiplicity;
    jp["kind"] = curves::kind_name(p.kind);
    jp["roots"] = indices_json(p.roots, sys.size());
    jp["subsystem_rank"] = p.subsystem_rank;
    points.push_back(jp);
  }
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back(json{{"roots", c.positive_roots}, {"rank", c.rank}, {"form", {c.form.a, c.form.b, c.form.c}}});
  return json{{"system", r.system},
              {"rank_zeta", r.rank_zeta},
              {"q1", r.q1},
              {"q2", r.q2},
              {"s_count", r.s_count},
              {"t_count", r.t_count},
              {"shared_points", r.shared_points},
              {"tangent_classes", r.tangent_classes},
              {"line_classes", classes},
              {"points", points},
              {"bounds", r.bounds},
              {"bounds_ok", r.bounds_ok()}};
}

inline json to_json(const decomp::Decomposition& d) {
  const std::size_t lim = d.system->size();
  auto part = [&](std::size_t from, std::size_t to) {
    json a = json::array();
    for (std::size_t k = from; k < to; ++k) a.push_back(indices_json(d.pieces[k], lim));
    return a;
  };
  json j{{"family", std::string(1, roots::family_letter(d.system->family()))},
         {"rank", d.system->rank()},
         {"kind", decomp::kind_name(d.kind)},
         {"s", d.s},
         {"t", d.t},
         {"pieces", part(0, d.pieces.size())},
         {"ranks", d.ranks},
         {"deltas", d.deltas},
         {"rank_sum", d.rank_sum()}};
  if (d.plane) j["plane"] = json{d.plane->b1, d.plane->b2};
  if (!d.lines.empty()) j["lines"] = d.lines;
  return j;
}

inline json to_json(const decomp::SolverResult& r) {
  return json{{"value", r.value},
              {"mode", decomp::mode_name(r.mode)},
              {"explored", r.explored},
              {"proven_optimal", r.proven_optimal},
              {"meets_lower_bound", r.meets_lower_bound},
              {"witness", to_json(r.witness)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

inline const roots::RootSystem& system_of(const json& j) {
  const auto fam = roots::parse_family(field<std::string>(j, "family"));
  const int n = field<int>(j, "rank");
  if (!roots::is_legal(fam, n)) throw ParseError("no root system " + field<std::string>(j, "family") + std::to_string(n));
  return roots::shared_root_system(fam, n);
}

inline roots::HVector vector_of(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("vector must be an array of length " + std::to_string(n));
  roots::HVector v;
  for (const auto& x : j) {
    try {
      v.push_back(x.get<exact::GaussRational>());
    } catch (const json::exception& e) {
      throw ParseError(e.what());
    }
  }
  return v;
}

/// {"family":"A","rank":3,"zeta":[[...],[...],[...]]}
inline curves::ZetaTriple zeta_from_json(const json& j) {
  const auto& sys = system_of(j);
  const json& z = j.contains("zeta") ? j.at("zeta") : json();
  if (!z.is_array() || z.size() != 3) throw ParseError("\"zeta\" must hold three vectors");
  const auto n = static_cast<std::size_t>(sys.rank());
  return curves::ZetaTriple(sys, {vector_of(z[0], n), vector_of(z[1], n), vector_of(z[2], n)});
}

inline json zeta_to_json(const curves::ZetaTriple& z) {
  json comps = json::array();
  for (const auto& c : z.components()) {
    json v = json::array();
    for (const auto& x : c) v.push_back(x.re());
    comps.push_back(v);
  }
  return json{{"family", std::string(1, roots::family_letter(z.system().family()))},
              {"rank", z.system().rank()},
              {"zeta", comps}};
}

/// {"family":"A","rank":2,"plane":[[...],[...]]}
inline decomp::PlaneL plane_from_json(const json& j) {
  const auto& sys = system_of(j);
  const json& p = j.contains("plane") ? j.at("plane") : json();
  if (!p.is_array() || p.size() != 2) throw ParseError("\"plane\" must hold two vectors");
  const auto n = static_cast<std::size_t>(sys.rank());
  return {vector_of(p[0], n), vector_of(p[1], n)};
}

/// Witness document as produced by to_json(Decomposition), or any CLI report
/// wrapping one ("witness", "result.witness", "decomposition").
inline decomp::Decomposition decomposition_from_json(const json& doc) {
  const json* jp = &doc;
  if (jp->contains("result")) jp = &jp->at("result");
  if (jp->contains("witness")) jp = &jp->at("witness");
  if (jp->contains("decomposition")) jp = &jp->at("decomposition");
  const json& j = *jp;
  decomp::Decomposition d;
  d.system = &system_of(j);
  const auto kind = field<std::string>(j, "kind");
  if (kind == "type1")
    d.kind = decomp::DecompKind::Type1;
  else if (kind == "type2")
    d.kind = decomp::DecompKind::Type2;
  else if (kind == "induced")
    d.kind = decomp::DecompKind::Induced;
  else
    throw ParseError("unknown decomposition kind \"" + kind + "\"");
  for (const auto& piece : field<std::vector<std::vector<std::size_t>>>(j, "pieces")) {
    roots::RootMask m;
    for (std::size_t i : piece) {
      if (i >= d.system->size()) throw ParseError("root index " + std::to_string(i) + " out of range");
      m.set(i);
    }
    d.pieces.push_back(m);
  }
  d.s = j.contains("s") ? field<std::size_t>(j, "s") : d.pieces.size();
  d.t = j.contains("t") ? field<std::size_t>(j, "t") : 0;
  if (j.contains("plane")) d.plane = plane_from_json(j);
  // recorded metadata is kept as-is so validation can catch wrong values
  decomp::fill_metadata(d);
  if (j.contains("ranks")) d.ranks = field<std::vector<std::size_t>>(j, "ranks");
  if (j.contains("deltas")) d.deltas = field<std::vector<std::size_t>>(j, "deltas");
  return d;
}

}  // namespace twistor::harness
