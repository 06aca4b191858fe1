#ifndef CATFIN_SERIALIZE_HPP
#define CATFIN_SERIALIZE_HPP

// JSON encodings. Integers travel as decimal strings and Laurent polynomials
// as ascending [exponent, "coefficient"] pairs, so no value ever passes
// through a float. Objects use sorted keys, which makes dump() canonical.

#include "catfin/exactnum.hpp"
#include "catfin/propcheck.hpp"
#include "catfin/qcomplex.hpp"
#include "catfin/reflection.hpp"
#include "catfin/triangles.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace catfin::json {

using Json = nlohmann::json;

inline Json encode(const Integer& v) { return v.str(); }

inline Integer decode_integer(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a decimal string");
  return Integer(j.get<std::string>());
}

inline Json encode(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e, c.str()}));
  return out;
}

inline LaurentPoly decode_poly(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of [exponent, coefficient] pairs");
  LaurentPoly p;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
      throw std::invalid_argument("malformed polynomial term");
    p += LaurentPoly::monomial(pair[0].get<LaurentPoly::Exponent>(), decode_integer(pair[1]));
  }
  return p;
}

/// Exponent -> coefficient object, used for triangle rows.
inline Json encode_map(const LaurentPoly& p) {
  Json out = Json::object();
  for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = c.str();
  return out;
}

inline Json encode(const TriangleRow& row) {
  Json entries = Json::array();
  for (const auto& v : row.entries()) entries.push_back(v.str());
  return {{"d", row.arity}, {"row", row.row}, {"coeffs", encode_map(row.coeffs)}, {"entries", entries}};
}

inline std::string_view side_name(Side s) {
  switch (s) {
    case Side::center: return "center";
    case Side::a: return "A";
    case Side::b: return "B";
  }
  return "?";
}

inline Json encode(const AltSumResult& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"index", t.index}, {"side", side_name(t.side)}, {"column", t.column}, {"sign", t.sign},
                     {"magnitude", t.magnitude.str()}});
  return {{"terms", terms}, {"value", r.value.str()}};
}

inline Json encode(const ChainComplex& cx) {
  Json pieces = Json::array();
  for (const auto& p : cx.pieces())
    pieces.push_back({{"index", p.index},
                      {"degree", p.degree},
                      {"dimension", p.space.dimension()},
                      {"differential_exponent", cx.differential_exponent(p.index)}});
  const auto& pr = cx.params();
  return {{"M", pr.M}, {"c", pr.c}, {"m", pr.m}, {"s", pr.s}, {"N", pr.order()}, {"pieces", pieces}};
}

inline Json encode(const HomologyResult& h) {
  Json entries = Json::array();
  for (const auto& e : h.entries)
    entries.push_back({{"index", e.index},
                       {"degree", e.degree},
                       {"dimension", e.dimension},
                       {"rank_in", e.rank_in},
                       {"rank_out", e.rank_out},
                       {"homology", e.homology()}});
  Json primes = Json::array();
  for (auto p : h.primes) primes.push_back(p);
  return {{"entries", entries},
          {"method", h.method == RankMethod::exact ? "exact" : "modular-certified"},
          {"primes", primes},
          {"exact_fallbacks", h.exact_fallbacks}};
}

inline CellStatus parse_status(std::string_view s) {
  if (s == "match") return CellStatus::match;
  if (s == "mismatch") return CellStatus::mismatch;
  if (s == "out-of-family") return CellStatus::out_of_family;
  throw std::invalid_argument("unknown cell status: " + std::string(s));
}

inline Json encode(const ReportCell& c) {
  Json value = std::holds_alternative<Integer>(c.value) ? encode(std::get<Integer>(c.value))
                                                         : encode(std::get<LaurentPoly>(c.value));
  return {{"params", c.params},
          {"status", to_string(c.status)},
          {"expected", c.expected},
          {"value", value},
          {"observed", c.observed}};
}

inline ReportCell decode_cell(const Json& j) {
  ReportCell c;
  c.params = j.at("params").get<std::map<std::string, long long>>();
  c.status = parse_status(j.at("status").get<std::string>());
  c.expected = j.at("expected").get<std::string>();
  const Json& v = j.at("value");
  if (v.is_string())
    c.value = decode_integer(v);
  else
    c.value = decode_poly(v);
  c.observed = j.at("observed").get<std::map<std::string, long long>>();
  return c;
}

/// Runtime statistics are left out so reports are byte-stable across runs
/// and job counts.
inline Json encode(const VerificationReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(encode(c));
  Json counterexamples = Json::array();
  for (const auto& c : r.counterexamples) counterexamples.push_back(encode(c));
  return {{"proposition", r.proposition},
          {"grid", r.grid},
          {"summary",
           {{"cells", r.cells.size()},
            {"match", r.count(CellStatus::match)},
            {"mismatch", r.count(CellStatus::mismatch)},
            {"out_of_family", r.count(CellStatus::out_of_family)}}},
          {"cells", cells},
          {"counterexamples", counterexamples}};
}

inline VerificationReport decode_report(const Json& j) {
  VerificationReport r;
  r.proposition = j.at("proposition").get<std::string>();
  r.grid = j.at("grid").get<std::map<std::string, std::string>>();
  for (const auto& c : j.at("cells")) r.cells.push_back(decode_cell(c));
  for (const auto& c : j.at("counterexamples")) r.counterexamples.push_back(decode_cell(c));
  return r;
}

inline Json encode(const ScanCandidate& c) {
  Json family = nullptr;
  if (c.family) family = {{"slope", c.family->slope}, {"offset", c.family->offset}};
  return {{"A", c.a},
          {"B", c.b},
          {"rank", c.rank},
          {"matches", c.matches},
          {"sign_defect", c.sign_defect.str()},
          {"family", family},
          {"indices", c.indices}};
}

/// Canonical text form: two-space indent, sorted keys, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace catfin::json

#endif  // CATFIN_SERIALIZE_HPP
