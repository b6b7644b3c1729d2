#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encoding of fields, ideals, algebras and search results.
 *
 *   QuadFieldQ          {"d", "disc", "regulator"}
 *   GaussianPrimeIdeal  {"a", "b", "norm", "kind"}          generator a + bi
 *   GaussianQuadExt     {"delta": {"a", "b", "unit"}, "rel_disc_norm"}
 *   algebra             {"base": "Q" | "Q(i)", "ram": [...]}
 *   search result       {"l", "factor_or_volume", "sets", "excluded_fields",
 *                        "certificates", "exhaustive"}
 *
 * Decoding rebuilds objects from their defining data (d, generator, delta,
 * ram) and recomputes derived values, so a decoded object equals the original.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "constructions.hpp"
#include "search.hpp"

namespace sysarith {

using json = nlohmann::ordered_json;

inline json to_json(const QuadFieldQ& f) { return {{"d", f.d()}, {"disc", f.disc()}, {"regulator", f.regulator()}}; }

inline QuadFieldQ quad_field_from_json(const json& j) { return QuadFieldQ(j.at("d").get<std::int64_t>()); }

inline json to_json(const GaussianPrimeIdeal& p) {
  return {{"a", p.gen.re}, {"b", p.gen.im}, {"norm", p.norm}, {"kind", to_string(p.kind)}};
}

inline GaussianPrimeIdeal ideal_from_json(const json& j) {
  const GaussianInt g{j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>()};
  if (g.is_zero() || g.is_unit()) throw input_error("ideal_from_json: generator is zero or a unit");
  auto ideal = ideal_of(g);
  if (ideal.gen != g) throw input_error("ideal_from_json: generator is not canonical");
  return ideal;
}

inline json to_json(const GaussianQuadExt& e) {
  return {{"delta", {{"a", e.delta().re}, {"b", e.delta().im}, {"unit", e.unit_is_i() ? "i" : "1"}}},
          {"rel_disc_norm", e.rel_disc_norm()}};
}

inline GaussianQuadExt quad_ext_from_json(const json& j) {
  const auto& d = j.at("delta");
  return GaussianQuadExt::from({d.at("a").get<std::int64_t>(), d.at("b").get<std::int64_t>()});
}

inline json to_json(const QuaternionAlgebraQ& b) { return {{"base", "Q"}, {"ram", b.ram()}}; }

inline json to_json(const QuaternionAlgebraQi& b) {
  json ram = json::array();
  for (const auto& p : b.ram()) ram.push_back(to_json(p));
  return {{"base", "Q(i)"}, {"ram", ram}};
}

inline QuaternionAlgebraQ algebra_q_from_json(const json& j) {
  if (j.at("base") != "Q") throw input_error("algebra_q_from_json: base must be Q");
  return QuaternionAlgebraQ(j.at("ram").get<std::vector<std::uint64_t>>());
}

inline QuaternionAlgebraQi algebra_qi_from_json(const json& j) {
  if (j.at("base") != "Q(i)") throw input_error("algebra_qi_from_json: base must be Q(i)");
  std::vector<GaussianPrimeIdeal> ram;
  for (const auto& p : j.at("ram")) ram.push_back(ideal_from_json(p));
  return QuaternionAlgebraQi(std::move(ram));
}

inline json to_json(const SearchResultQ& r) {
  json sets = json::array();
  for (const auto& b : r.optimal_sets) sets.push_back(b.ram());
  json fields = json::array();
  for (const auto& f : r.excluded_fields) fields.push_back(to_json(f));
  return {{"base", "Q"},
          {"l", r.systole_bound},
          {"factor_or_volume", r.optimal_factor},
          {"sets", sets},
          {"excluded_fields", fields},
          {"certificates", r.certificates},
          {"exhaustive", r.exhaustive}};
}

inline SearchResultQ search_result_q_from_json(const json& j) {
  if (j.at("base") != "Q") throw input_error("search_result_q_from_json: base must be Q");
  SearchResultQ r;
  r.systole_bound = j.at("l").get<double>();
  r.optimal_factor = j.at("factor_or_volume").get<std::uint64_t>();
  for (const auto& s : j.at("sets")) r.optimal_sets.emplace_back(s.get<std::vector<std::uint64_t>>());
  for (const auto& f : j.at("excluded_fields")) r.excluded_fields.push_back(quad_field_from_json(f));
  r.certificates = j.at("certificates").get<std::vector<std::vector<std::uint64_t>>>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  return r;
}

inline json to_json(const SearchResultQi& r) {
  json sets = json::array();
  for (const auto& b : r.sets) sets.push_back(to_json(b).at("ram"));
  json fields = json::array();
  for (const auto& f : r.excluded_fields) fields.push_back(to_json(f));
  json certs = json::array();
  for (const auto& c : r.certificates) {
    json row = json::array();
    for (const auto& p : c) row.push_back(to_json(p));
    certs.push_back(row);
  }
  return {{"base", "Q(i)"},
          {"l", r.systole_bound},
          {"factor_or_volume", r.volume},
          {"factor", r.factor},
          {"sets", sets},
          {"excluded_fields", fields},
          {"certificates", certs},
          {"exhaustive", r.exhaustive}};
}

inline SearchResultQi search_result_qi_from_json(const json& j) {
  if (j.at("base") != "Q(i)") throw input_error("search_result_qi_from_json: base must be Q(i)");
  SearchResultQi r;
  r.systole_bound = j.at("l").get<double>();
  r.volume = j.at("factor_or_volume").get<double>();
  r.factor = j.at("factor").get<std::uint64_t>();
  for (const auto& s : j.at("sets")) r.sets.push_back(algebra_qi_from_json({{"base", "Q(i)"}, {"ram", s}}));
  for (const auto& f : j.at("excluded_fields")) r.excluded_fields.push_back(quad_ext_from_json(f));
  for (const auto& row : j.at("certificates")) {
    std::vector<GaussianPrimeIdeal> c;
    for (const auto& p : row) c.push_back(ideal_from_json(p));
    r.certificates.push_back(std::move(c));
  }
  r.exhaustive = j.at("exhaustive").get<bool>();
  return r;
}

inline json to_json(const FamilyEntry& e) {
  json cert = json::array();
  for (const auto& [p, s] : e.embedding_certificate) cert.push_back({{"p", p}, {"splitting", to_string(s)}});
  return {{"index", e.index}, {"ram", e.algebra.ram()}, {"factor", e.factor}, {"p0", e.p0},
          {"pi", e.pi},       {"embedding_certificate", cert}, {"torsion_free", e.torsion_free}};
}

} // namespace sysarith
