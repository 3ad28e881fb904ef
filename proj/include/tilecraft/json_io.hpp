#pragma once

// JSON forms of the library types.
//
//   Vec2            [x, y]
//   shape           "rect n m" (cells [0,n) x [0,m)) or [[x,y], ...]
//   pattern         flat list of colors in canonical cell order, or for a
//                   rect shape a list of rows (row 0 = y 0)
//   PatternSet      {"shape": ..., "alphabet": [...], "allowed": [...]}
//   Configuration   {"kind": "window", "origin": [x,y], "rows": [[...], ...]}
//                   {"kind": "periodic", "p1": [..], "p2": [..], "rows": [[...]]}
//                   periodic rows cover [0,a) x [0,d) of the Hermite basis
//                   (a,0), (b,d) of p1, p2
//   LaurentPoly     {"terms": [[a, b, coef], ...]} in ascending order
//
// Serialization always emits the canonical form (flat patterns, Hermite
// periods), so parse(serialize(x)) == x.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "tilecraft/algebra.hpp"
#include "tilecraft/balanced.hpp"
#include "tilecraft/sft.hpp"

namespace tilecraft::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::Schema, where + ": " + msg);
}

inline Coord get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected integer");
  return j.get<Coord>();
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::vector<std::vector<Color>> get_rows(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema_error(where, "expected nonempty list of rows");
  std::vector<std::vector<Color>> rows;
  for (std::size_t y = 0; y < j.size(); ++y) {
    const auto w = where + "[" + std::to_string(y) + "]";
    if (!j[y].is_array() || j[y].empty()) schema_error(w, "expected nonempty row");
    std::vector<Color> row;
    for (std::size_t x = 0; x < j[y].size(); ++x) row.push_back(get_int(j[y][x], w + "[" + std::to_string(x) + "]"));
    if (!rows.empty() && row.size() != rows.front().size()) schema_error(w, "ragged rows");
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json rows_json(const std::vector<Color>& values, Coord width) {
  json rows = json::array();
  for (std::size_t i = 0; i < values.size(); i += static_cast<std::size_t>(width))
    rows.push_back(std::vector<Color>(values.begin() + static_cast<std::ptrdiff_t>(i),
                                      values.begin() + static_cast<std::ptrdiff_t>(i) + width));
  return rows;
}

}  // namespace detail

inline json to_json(Vec2 v) { return json::array({v.x, v.y}); }

inline Vec2 vec_from_json(const json& j, const std::string& where = "vector") {
  if (!j.is_array() || j.size() != 2) detail::schema_error(where, "expected [x, y]");
  return {detail::get_int(j[0], where + "[0]"), detail::get_int(j[1], where + "[1]")};
}

inline json to_json(const DiscreteDomain& d) {
  json cells = json::array();
  for (auto c : d) cells.push_back(to_json(c));
  return cells;
}

// "rect n m" or a list of cells.
inline DiscreteDomain shape_from_json(const json& j, const std::string& where = "shape") {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    long long n = 0, m = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "rect %lld %lld %c", &n, &m, &tail) != 2 || n < 1 || m < 1)
      detail::schema_error(where, "expected \"rect n m\" with n, m >= 1, got \"" + s + "\"");
    return DiscreteDomain::rect(n, m);
  }
  if (!j.is_array() || j.empty()) detail::schema_error(where, "expected \"rect n m\" or nonempty list of cells");
  std::vector<Vec2> cells;
  for (std::size_t i = 0; i < j.size(); ++i) cells.push_back(vec_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  try {
    return DiscreteDomain(std::move(cells));
  } catch (const Error& e) {
    detail::schema_error(where, e.what());
  }
}

// Serialized shapes use "rect n m" when the shape is exactly [0,n) x [0,m).
inline json shape_to_json(const DiscreteDomain& d) {
  const Rect b = d.bounds();
  if (b.origin.is_zero() && static_cast<std::size_t>(b.area()) == d.size())
    return "rect " + std::to_string(b.width) + " " + std::to_string(b.height);
  return to_json(d);
}

inline Pattern pattern_from_json(const json& j, const DiscreteDomain& shape, const std::string& where) {
  std::vector<Color> values;
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    const auto rows = detail::get_rows(j, where);
    const Rect b = shape.bounds();
    if (static_cast<std::size_t>(b.area()) != shape.size())
      detail::schema_error(where, "row form needs a rectangular shape");
    if (static_cast<Coord>(rows.size()) != b.height || static_cast<Coord>(rows[0].size()) != b.width)
      detail::schema_error(where, "rows do not match the shape");
    for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) values.push_back(detail::get_int(j[i], where + "[" + std::to_string(i) + "]"));
    if (values.size() != shape.size())
      detail::schema_error(where, "has " + std::to_string(values.size()) + " values, shape has " +
                                      std::to_string(shape.size()) + " cells");
  } else {
    detail::schema_error(where, "expected list of colors or list of rows");
  }
  return Pattern(shape, std::move(values));
}

inline json to_json(const Pattern& p) { return p.values(); }

inline json to_json(const PatternSet& P) {
  json allowed = json::array();
  for (const auto& p : P.allowed()) allowed.push_back(to_json(p));
  return {{"shape", shape_to_json(P.shape())}, {"alphabet", P.alphabet().colors()}, {"allowed", allowed}};
}

inline PatternSet pattern_set_from_json(const json& j) {
  const auto shape = shape_from_json(detail::member(j, "shape", "pattern set"));
  const auto& alpha = detail::member(j, "alphabet", "pattern set");
  if (!alpha.is_array() || alpha.empty()) detail::schema_error("alphabet", "expected nonempty list of integers");
  std::vector<Color> colors;
  for (std::size_t i = 0; i < alpha.size(); ++i) colors.push_back(detail::get_int(alpha[i], "alphabet[" + std::to_string(i) + "]"));
  std::optional<Alphabet> alphabet;
  try {
    alphabet.emplace(colors);
  } catch (const Error& e) {
    detail::schema_error("alphabet", e.what());
  }
  const auto& allowed = detail::member(j, "allowed", "pattern set");
  if (!allowed.is_array()) detail::schema_error("allowed", "expected list of patterns");
  std::set<Pattern> patterns;
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    const auto where = "allowed[" + std::to_string(i) + "]";
    auto p = pattern_from_json(allowed[i], shape, where);
    for (auto v : p.values())
      if (!alphabet->contains(v)) detail::schema_error(where, "color " + std::to_string(v) + " not in alphabet");
    patterns.insert(std::move(p));
  }
  return PatternSet(shape, *alphabet, std::move(patterns));
}

inline json to_json(const Configuration& c) {
  if (auto p = c.periodic())
    return {{"kind", "periodic"},
            {"p1", to_json(p->p1())},
            {"p2", to_json(p->p2())},
            {"rows", detail::rows_json(p->block(), p->block_width())}};
  const auto& w = *c.window();
  return {{"kind", "window"}, {"origin", to_json(w.rect().origin)}, {"rows", detail::rows_json(w.values(), w.rect().width)}};
}

inline Configuration configuration_from_json(const json& j) {
  const auto& kind = detail::member(j, "kind", "configuration");
  if (!kind.is_string()) detail::schema_error("kind", "expected string");
  const auto rows = detail::get_rows(detail::member(j, "rows", "configuration"), "rows");
  std::vector<Color> values;
  for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  const auto width = static_cast<Coord>(rows[0].size()), height = static_cast<Coord>(rows.size());
  try {
    if (kind == "window") {
      Vec2 origin{};
      if (j.contains("origin")) origin = vec_from_json(j["origin"], "origin");
      return WindowConfig({origin, width, height}, std::move(values));
    }
    if (kind == "periodic") {
      const auto p1 = vec_from_json(detail::member(j, "p1", "configuration"), "p1");
      const auto p2 = vec_from_json(detail::member(j, "p2", "configuration"), "p2");
      auto [h1, h2] = hermite_basis(p1, p2);
      if (h1.x != width || h2.y != height)
        detail::schema_error("rows", "periodic block must be " + std::to_string(h1.x) + " wide and " +
                                         std::to_string(h2.y) + " high for these periods");
      return PeriodicConfig(p1, p2, std::move(values));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    detail::schema_error("configuration", e.what());
  }
  detail::schema_error("kind", "expected \"window\" or \"periodic\"");
}

inline json to_json(const LaurentPoly& f) {
  json terms = json::array();
  for (auto [e, c] : f.terms()) terms.push_back(json::array({e.x, e.y, c}));
  return {{"terms", terms}};
}

inline LaurentPoly poly_from_json(const json& j) {
  const auto& terms = detail::member(j, "terms", "polynomial");
  if (!terms.is_array()) detail::schema_error("terms", "expected list of [a, b, coef]");
  LaurentPoly f;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto where = "terms[" + std::to_string(i) + "]";
    if (!terms[i].is_array() || terms[i].size() != 3) detail::schema_error(where, "expected [a, b, coef]");
    f.add_term({detail::get_int(terms[i][0], where), detail::get_int(terms[i][1], where)},
               detail::get_int(terms[i][2], where));
  }
  return f;
}

inline json to_json(const TorusWitness& w) {
  return {{"p", w.p}, {"q", w.q}, {"rows", detail::rows_json(w.values, w.p)}};
}

inline TorusWitness witness_from_json(const json& j) {
  TorusWitness w;
  w.p = detail::get_int(detail::member(j, "p", "witness"), "p");
  w.q = detail::get_int(detail::member(j, "q", "witness"), "q");
  const auto rows = detail::get_rows(detail::member(j, "rows", "witness"), "rows");
  if (static_cast<Coord>(rows.size()) != w.q || static_cast<Coord>(rows[0].size()) != w.p)
    detail::schema_error("rows", "witness rows do not match p x q");
  for (const auto& r : rows) w.values.insert(w.values.end(), r.begin(), r.end());
  return w;
}

inline json to_json(const DecisionOutcome& o) {
  json j = {{"kind", std::string(to_string(o.kind))},
            {"low_complexity", o.low_complexity},
            {"budget", {{"limit", o.budget}, {"nodes_used", o.nodes_used}}},
            {"stages", o.stages},
            {"max_n_tried", o.max_n_tried},
            {"max_pq_tried", o.max_pq_tried}};
  if (o.kind == DecisionOutcome::Kind::Empty) j["certificate"] = {{"n", o.empty_n}};
  if (o.witness) j["witness"] = to_json(*o.witness);
  if (o.kind == DecisionOutcome::Kind::Undecided && !o.low_complexity)
    j["note"] = "more allowed patterns than shape cells: periodic witnesses are not guaranteed, "
                "so the search may never terminate";
  return j;
}

inline json to_json(const DeterminismReport& r) {
  json j = {{"u", to_json(r.u)},
            {"k", r.k},
            {"radius", r.radius},
            {"verdict", std::string(to_string(r.verdict))},
            {"context", {{"origin", to_json(r.context.origin)}, {"width", r.context.width}, {"height", r.context.height}}},
            {"box_colorings", r.box_colorings},
            {"nodes", r.nodes}};
  if (r.box) {
    j["box"] = {{"cells", to_json(r.box->domain())}, {"values", r.box->values()}};
    j["centers"] = r.centers;
  }
  return j;
}

inline json to_json(const BalancedReport& r) {
  json lines = json::array();
  for (auto [level, n] : r.lines) lines.push_back(json::array({level, n}));
  return {{"u", to_json(r.u)},
          {"shape", to_json(r.shape)},
          {"edge", to_json(r.edge)},
          {"counts",
           {{"patterns", r.patterns},
            {"inner_patterns", r.inner_patterns},
            {"edge_size", r.edge_size},
            {"shape_size", r.shape_size},
            {"min_line", r.min_line}}},
          {"lines", lines},
          {"conditions", {{"i", r.low_complexity}, {"ii", r.few_extensions}, {"iii", r.short_edge}}},
          {"balanced", r.balanced}};
}

// One character per color: alphabet index 0-9 then a-z.
inline std::string render_ascii(const std::vector<Color>& values, Coord width, const Alphabet& alphabet) {
  static constexpr std::string_view glyphs = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto idx = alphabet.index_of(values[i]);
    out += idx && *idx < glyphs.size() ? glyphs[*idx] : '?';
    if ((i + 1) % static_cast<std::size_t>(width) == 0) out += '\n';
  }
  return out;
}

}  // namespace tilecraft::io
