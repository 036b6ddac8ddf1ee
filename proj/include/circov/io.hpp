#pragma once

// JSON reading and writing. Rows, columns and nodes are 1-based on the wire;
// rationals travel as "p/q" strings.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "circov/circular_matrix.hpp"
#include "circov/error.hpp"
#include "circov/inequalities.hpp"
#include "circov/inequality.hpp"
#include "circov/optimize.hpp"
#include "circov/rational.hpp"
#include "circov/separation.hpp"

namespace circov::io {

using json = nlohmann::json;

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  fail(ErrorKind::Parse, "expected an integer or a \"p/q\" string, got " + v.dump());
}

inline json to_json(const Rational& q) { return format_rational(q); }

inline RationalVector rationals_from_json(const json& v) {
  if (!v.is_array()) fail(ErrorKind::Parse, "expected an array of rationals");
  RationalVector out;
  for (const json& e : v) out.push_back(rational_from_json(e));
  return out;
}

inline json to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const Rational& q : v) out.push_back(to_json(q));
  return out;
}

template <class T>
T get_field(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("field \"") + key + "\": " + e.what());
  }
}

// {"n", "rows": [[l, k], ...]} or {"n", "neighborhoods": [[...], ...]} or
// {"web": [n, k]}, with optional "b" and "w".
inline Instance instance_from_json(const json& obj) {
  if (!obj.is_object()) fail(ErrorKind::Parse, "instance must be a JSON object");
  CircularMatrix a;
  if (obj.contains("rows")) {
    const int n = get_field<int>(obj, "n");
    std::vector<RowInterval> rows;
    for (const auto& r : get_field<std::vector<std::vector<int>>>(obj, "rows")) {
      if (r.size() != 2) fail(ErrorKind::Parse, "each row is [l, k]");
      rows.push_back({r[0], r[1]});
    }
    a = CircularMatrix::make(n, rows);
  } else if (obj.contains("neighborhoods")) {
    a = neighborhood_matrix(get_field<int>(obj, "n"), get_field<std::vector<std::vector<int>>>(obj, "neighborhoods"));
  } else if (obj.contains("web")) {
    const auto web = get_field<std::vector<int>>(obj, "web");
    if (web.size() != 2) fail(ErrorKind::Parse, "web is [n, k]");
    a = neighborhood_matrix(web[0], web_neighborhoods(web[0], web[1]));
  } else {
    fail(ErrorKind::Parse, "instance needs \"rows\", \"neighborhoods\" or \"web\"");
  }
  std::vector<Int> b;
  if (obj.contains("b")) b = get_field<std::vector<Int>>(obj, "b");
  std::optional<RationalVector> w;
  if (obj.contains("w")) w = rationals_from_json(obj.at("w"));
  return make_instance(std::move(a), std::move(b), std::move(w));
}

inline json to_json(const Instance& inst) {
  json rows = json::array();
  for (const RowInterval& r : inst.matrix.intervals()) rows.push_back({r.start, r.length});
  json out{{"n", inst.matrix.columns()}, {"rows", rows}, {"b", inst.demand}};
  if (inst.weights) out["w"] = to_json(*inst.weights);
  return out;
}

inline json to_json(const Arc& arc) {
  const bool row = arc.row_arc();
  return {{"kind", std::string(to_string(arc.kind))},
          {"index", row ? static_cast<Int>(arc.index) + 1 : static_cast<Int>(arc.index)},
          {"tail", arc.tail},
          {"head", arc.head}};
}

inline json arcs_to_json(const AuxDigraph& d, const ClosedPath& path) {
  json out = json::array();
  for (std::size_t id : path.arcs()) out.push_back(to_json(d.arc(id)));
  return out;
}

inline json to_json(const Witness& witness) {
  return std::visit(
      [](const auto& w) -> json {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, NoWitness>) {
          return nullptr;
        } else if constexpr (std::is_same_v<W, ColumnWitness>) {
          return {{"column", w.column}};
        } else if constexpr (std::is_same_v<W, RowWitness>) {
          return {{"row", w.row + 1}};
        } else if constexpr (std::is_same_v<W, CircuitWitness>) {
          json arcs = json::array();
          for (const Arc& a : w.arcs) arcs.push_back(to_json(a));
          return {{"circuit", arcs}, {"t", w.t}, {"p", w.p}, {"beta", w.beta}, {"r", w.r}};
        } else if constexpr (std::is_same_v<W, FamilyWitness>) {
          json rows = json::array();
          for (std::size_t i : w.rows) rows.push_back(i + 1);
          return {{"rows", rows}, {"p", w.p}};
        } else {
          return {{"contracted", w.contracted}, {"order", w.order}, {"width", w.width}};
        }
      },
      witness);
}

inline json to_json(const LinearInequality& ineq, std::optional<std::optional<bool>> facet = std::nullopt) {
  json out{{"coeffs", ineq.coeffs}, {"rhs", ineq.rhs}, {"kind", std::string(to_string(ineq.kind))},
           {"witness", to_json(ineq.witness)}};
  if (facet) out["facet"] = *facet ? json(**facet) : json("unknown");
  return out;
}

inline InequalityKind inequality_kind_from_string(const std::string& s) {
  for (auto k : {InequalityKind::NonNegativity, InequalityKind::Boolean, InequalityKind::Rank, InequalityKind::Circuit,
                 InequalityKind::RowFamily, InequalityKind::Minor, InequalityKind::MinorRowFamily})
    if (to_string(k) == s) return k;
  fail(ErrorKind::Parse, "unknown inequality kind \"" + s + "\"");
}

// Coefficients, rhs and kind; the witness is not read back.
inline LinearInequality inequality_from_json(const json& obj) {
  LinearInequality out;
  out.coeffs = get_field<std::vector<Int>>(obj, "coeffs");
  out.rhs = get_field<Int>(obj, "rhs");
  if (obj.contains("kind")) out.kind = inequality_kind_from_string(get_field<std::string>(obj, "kind"));
  return out;
}

inline json to_json(const FacetCandidates& list) {
  json items = json::array();
  for (std::size_t c = 0; c < list.inequalities.size(); ++c)
    items.push_back(to_json(list.inequalities[c], c < list.facet.size() ? list.facet[c] : std::nullopt));
  return items;
}

inline json to_json(const OptimizationResult& res) {
  json table = json::array();
  for (const SliceEntry& e : res.slices)
    table.push_back({{"beta", e.beta}, {"value", e.value ? to_json(*e.value) : json("infeasible")}});
  return {{"value", to_json(res.value)}, {"x", res.x}, {"beta", res.beta}, {"slice_table", table}};
}

inline json to_json(const SeparationResult& res, const AuxDigraph& d) {
  json out{{"verdict", res.verdict == Verdict::Member ? "member" : "violated"}};
  if (res.inequality) out["inequality"] = {{"coeffs", res.inequality->coeffs}, {"rhs", res.inequality->rhs}};
  if (res.circuit) out["circuit"] = arcs_to_json(d, *res.circuit);
  if (res.certificate) out["certificate"] = to_json(*res.certificate);
  return out;
}

inline json to_json(const MinorRecord& minor) {
  return {{"contracted", minor.contracted}, {"order", minor.shape.order}, {"width", minor.shape.width}};
}

inline json to_json(const MinorWitness& w) {
  json rows = json::array();
  for (std::size_t i : w.rows) rows.push_back(i + 1);
  return {{"contracted", w.contracted}, {"order", w.order}, {"width", w.width}, {"rows", rows}, {"exact", w.exact}};
}

inline void write(const json& value, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << value.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Parse, "cannot write " + path);
  out << value.dump(2) << '\n';
}

}  // namespace circov::io
