#pragma once

// JSON and CSV forms of specs, subspaces and reports.

#include <sstream>
#include <string>

#include "json.hpp"

#include "albert/algebra3.hpp"
#include "albert/census.hpp"
#include "albert/split_albert.hpp"
#include "albert/verify.hpp"

namespace albert::io {

using Json = nlohmann::ordered_json;

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("JSON object lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("JSON field '") + key + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Specs

inline Json to_json(const gf::FieldSpec& s) { return {{"p", s.p}, {"m", s.m}, {"modulus_coeffs", s.modulus}}; }

inline gf::FieldSpec field_spec_from_json(const Json& j) {
  gf::FieldSpec s{get_field<unsigned>(j, "p"), get_field<unsigned>(j, "m"),
                  get_field<std::vector<unsigned>>(j, "modulus_coeffs")};
  gf::validate(s);
  return s;
}

inline Json to_json(const TwistedFieldSpec& s) {
  const Tower& k = s.tower();
  Json coeffs = Json::array();
  for (Elem e : k.modulus()) coeffs.push_back(k.base().format(e));
  return {{"q", k.base().order()}, {"f_coeffs", coeffs}, {"c", k.format(s.c())}};
}

inline TwistedFieldSpec twisted_field_from_json(const Json& j) {
  const Field f = Field::of_order(get_field<unsigned>(j, "q"));
  const auto coeffs = get_field<std::vector<std::string>>(j, "f_coeffs");
  if (coeffs.size() != 4) throw UsageError("f_coeffs needs four coefficients, constant term first");
  std::array<Elem, 4> m{};
  for (int i = 0; i < 4; ++i) m[i] = f.parse(coeffs[i]);
  const Tower k(f, m);
  return TwistedFieldSpec(k, k.parse(get_field<std::string>(j, "c")));
}

inline Json to_json(const Algebra3& a) {
  Json tensor = Json::array();
  for (Elem e : a.tensor) tensor.push_back(a.field.format(e));
  return {{"q", a.field.order()}, {"tensor", tensor}};
}

inline Algebra3 algebra_from_json(const Json& j) {
  Algebra3 a{Field::of_order(get_field<unsigned>(j, "q")), {}};
  const auto tensor = get_field<std::vector<std::string>>(j, "tensor");
  if (tensor.size() != 27) throw UsageError("tensor needs 27 entries s(i,j,k) at index 9i+3j+k");
  for (int i = 0; i < 27; ++i) a.tensor[i] = a.field.parse(tensor[i]);
  return a;
}

inline Json to_json(const split::SplitAlbertSpec<Field>& s) {
  const Field& f = s.field();
  return {{"field", to_json(f.spec())}, {"d0", f.format(s.d(0))}, {"d1", f.format(s.d(1))}, {"d2", f.format(s.d(2))}};
}

inline split::SplitAlbertSpec<Field> split_spec_from_json(const Json& j) {
  if (!j.contains("field")) throw UsageError("JSON object lacks 'field'");
  const Field f(field_spec_from_json(j.at("field")));
  return split::SplitAlbertSpec<Field>(
      f, {f.parse(get_field<std::string>(j, "d0")), f.parse(get_field<std::string>(j, "d1")),
          f.parse(get_field<std::string>(j, "d2"))});
}

inline Json to_json(const Field& f, const linalg::Subspace<Elem>& s) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Json row = Json::array();
    for (Elem e : s.basis().row(r)) row.push_back(f.format(e));
    rows.push_back(row);
  }
  return {{"ambient", s.ambient()}, {"basis", rows}};
}

inline linalg::Subspace<Elem> subspace_from_json(const Field& f, const Json& j) {
  const auto ambient = get_field<std::size_t>(j, "ambient");
  std::vector<std::vector<Elem>> rows;
  for (const auto& row : get_field<std::vector<std::vector<std::string>>>(j, "basis")) {
    std::vector<Elem> r;
    for (const auto& s : row) r.push_back(f.parse(s));
    rows.push_back(r);
  }
  return linalg::span(f, ambient, rows);
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const census::Parameters& p) {
  Json j = {{"q", p.q}};
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("field_modulus", p.field_modulus);
  put("cubic_modulus", p.cubic_modulus);
  put("c", p.c);
  put("norm_c", p.norm_c);
  put("isotopy_class", p.isotopy_class);
  if (!p.d[0].empty()) j["d"] = p.d;
  return j;
}

inline census::Parameters parameters_from_json(const Json& j) {
  census::Parameters p;
  p.q = get_field<unsigned>(j, "q");
  auto take = [&](const char* key, std::string& out) {
    if (j.contains(key)) out = get_field<std::string>(j, key);
  };
  take("field_modulus", p.field_modulus);
  take("cubic_modulus", p.cubic_modulus);
  take("c", p.c);
  take("norm_c", p.norm_c);
  take("isotopy_class", p.isotopy_class);
  if (j.contains("d")) p.d = get_field<std::array<std::string, 3>>(j, "d");
  return p;
}

inline Json rows_to_json(const std::vector<census::ClassRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"dim", r.dim}, {"vectors", r.vectors}, {"spaces", r.spaces}});
  return out;
}

inline std::vector<census::ClassRow> rows_from_json(const Json& j) {
  std::vector<census::ClassRow> rows;
  for (const auto& r : j)
    rows.push_back({get_field<std::string>(r, "dim"), get_field<std::uint64_t>(r, "vectors"),
                    get_field<std::uint64_t>(r, "spaces")});
  return rows;
}

inline Json to_json(const census::CensusReport& r) {
  Json params = to_json(r.parameters);
  params["v"] = r.v;
  params["v_class"] = r.v_class;
  Json lines = Json::array();
  for (const auto& l : r.lines) lines.push_back({{"line", l.line}, {"in_xy_plane", l.in_xy_plane}, {"count", l.count}});
  Json observed = {{"classes", rows_to_json(r.observed)},
                   {"complementary_spaces", r.complementary_spaces},
                   {"lines", lines},
                   {"invariant_violations", r.invariant_violations}};
  Json predicted = nullptr;
  if (r.predicted) {
    predicted = {{"classes", rows_to_json(*r.predicted)}, {"complementary_spaces", *r.predicted_complementary}};
    predicted["lines"] = r.predicted_lines ? Json{{"in_xy_plane", r.predicted_lines->in_xy_plane},
                                                  {"other", r.predicted_lines->other}}
                                           : Json(nullptr);
  }
  return {{"parameters", params}, {"observed", observed},   {"predicted", predicted},
          {"match", r.match},      {"witnesses", r.witnesses}, {"runtime_ms", r.runtime_ms}};
}

inline census::CensusReport census_report_from_json(const Json& j) {
  census::CensusReport r;
  const Json& params = j.at("parameters");
  r.parameters = parameters_from_json(params);
  r.v = get_field<std::string>(params, "v");
  r.v_class = get_field<std::string>(params, "v_class");
  const Json& obs = j.at("observed");
  r.observed = rows_from_json(obs.at("classes"));
  r.complementary_spaces = get_field<std::uint64_t>(obs, "complementary_spaces");
  for (const auto& l : obs.at("lines"))
    r.lines.push_back({get_field<std::string>(l, "line"), get_field<bool>(l, "in_xy_plane"),
                       get_field<std::uint64_t>(l, "count")});
  r.invariant_violations = get_field<std::uint64_t>(obs, "invariant_violations");
  const Json& pred = j.at("predicted");
  if (!pred.is_null()) {
    r.predicted = rows_from_json(pred.at("classes"));
    r.predicted_complementary = get_field<std::uint64_t>(pred, "complementary_spaces");
    if (!pred.at("lines").is_null())
      r.predicted_lines = census::LinePrediction{get_field<std::uint64_t>(pred.at("lines"), "in_xy_plane"),
                                                 get_field<std::uint64_t>(pred.at("lines"), "other")};
  }
  r.match = get_field<bool>(j, "match");
  r.witnesses = get_field<std::map<std::string, std::string>>(j, "witnesses");
  r.runtime_ms = get_field<std::int64_t>(j, "runtime_ms");
  return r;
}

inline Json to_json(const census::ScanReport& r) {
  Json params = to_json(r.parameters);
  params["scope"] = r.scope;
  Json profiles = Json::array();
  Json predicted = Json::array();
  for (const auto& p : r.profiles) {
    Json hist = Json::array();
    for (const auto& h : p.line_histogram)
      hist.push_back({{"count", h.count}, {"lines", h.lines}, {"in_xy_plane", h.in_xy_plane}});
    profiles.push_back({{"v_class", p.v_class},
                        {"multiplicity", p.multiplicity},
                        {"first_v", p.first_v},
                        {"classes", rows_to_json(p.observed)},
                        {"complementary_spaces", p.complementary_spaces},
                        {"line_histogram", hist},
                        {"match", p.match}});
    predicted.push_back(p.predicted ? Json{{"classes", rows_to_json(*p.predicted)},
                                           {"complementary_spaces", *p.predicted_complementary}}
                                    : Json(nullptr));
  }
  return {{"parameters", params},
          {"observed",
           {{"base_vectors", r.base_vectors}, {"profiles", profiles}, {"invariant_violations", r.invariant_violations}}},
          {"predicted", predicted},
          {"match", r.match},
          {"witnesses", r.witnesses},
          {"runtime_ms", r.runtime_ms}};
}

inline census::ScanReport scan_report_from_json(const Json& j) {
  census::ScanReport r;
  const Json& params = j.at("parameters");
  r.parameters = parameters_from_json(params);
  r.scope = get_field<std::string>(params, "scope");
  const Json& obs = j.at("observed");
  r.base_vectors = get_field<std::uint64_t>(obs, "base_vectors");
  r.invariant_violations = get_field<std::uint64_t>(obs, "invariant_violations");
  const Json& pred = j.at("predicted");
  std::size_t i = 0;
  for (const auto& p : obs.at("profiles")) {
    census::ProfileGroup g;
    g.v_class = get_field<std::string>(p, "v_class");
    g.multiplicity = get_field<std::uint64_t>(p, "multiplicity");
    g.first_v = get_field<std::string>(p, "first_v");
    g.observed = rows_from_json(p.at("classes"));
    g.complementary_spaces = get_field<std::uint64_t>(p, "complementary_spaces");
    for (const auto& h : p.at("line_histogram"))
      g.line_histogram.push_back({get_field<std::uint64_t>(h, "count"), get_field<std::uint64_t>(h, "lines"),
                                  get_field<std::uint64_t>(h, "in_xy_plane")});
    g.match = get_field<bool>(p, "match");
    if (i < pred.size() && !pred[i].is_null()) {
      g.predicted = rows_from_json(pred[i].at("classes"));
      g.predicted_complementary = get_field<std::uint64_t>(pred[i], "complementary_spaces");
    }
    ++i;
    r.profiles.push_back(g);
  }
  r.match = get_field<bool>(j, "match");
  r.witnesses = get_field<std::map<std::string, std::string>>(j, "witnesses");
  r.runtime_ms = get_field<std::int64_t>(j, "runtime_ms");
  return r;
}

inline Json to_json(const census::Parameters& p, const verify::Verdict& v) {
  return {{"parameters", to_json(p)}, {"check", v.check},         {"pass", v.pass},
          {"cases", v.cases},         {"hits", v.hits},            {"witnesses", v.witnesses},
          {"notes", v.notes},         {"runtime_ms", v.runtime_ms}};
}

inline verify::Verdict verdict_from_json(const Json& j) {
  verify::Verdict v;
  v.check = get_field<std::string>(j, "check");
  v.pass = get_field<bool>(j, "pass");
  v.cases = get_field<std::uint64_t>(j, "cases");
  v.hits = get_field<std::uint64_t>(j, "hits");
  v.witnesses = get_field<std::map<std::string, std::string>>(j, "witnesses");
  v.notes = get_field<std::vector<std::string>>(j, "notes");
  v.runtime_ms = get_field<std::int64_t>(j, "runtime_ms");
  return v;
}

// ---------------------------------------------------------------------------
// CSV

inline const char* kCsvHeader = "dim,observed_vectors,predicted_vectors,observed_spaces,predicted_spaces,match";

inline void csv_rows(std::ostream& os, const std::vector<census::ClassRow>& observed,
                     const std::optional<std::vector<census::ClassRow>>& predicted, const std::string& prefix) {
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const auto& o = observed[i];
    os << prefix << o.dim << ',' << o.vectors << ',';
    if (predicted) os << (*predicted)[i].vectors;
    os << ',' << o.spaces << ',';
    if (predicted) os << (*predicted)[i].spaces;
    const bool ok = !predicted || ((*predicted)[i].vectors == o.vectors && (*predicted)[i].spaces == o.spaces);
    os << ',' << (ok ? "true" : "false") << '\n';
  }
}

inline std::string to_csv(const census::CensusReport& r) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  csv_rows(os, r.observed, r.predicted, "");
  return os.str();
}

inline std::string to_csv(const census::ScanReport& r) {
  std::ostringstream os;
  os << "profile,v_class,multiplicity," << kCsvHeader << '\n';
  for (std::size_t i = 0; i < r.profiles.size(); ++i) {
    const auto& p = r.profiles[i];
    csv_rows(os, p.observed, p.predicted,
             std::to_string(i) + ',' + p.v_class + ',' + std::to_string(p.multiplicity) + ',');
  }
  return os.str();
}

}  // namespace albert::io
