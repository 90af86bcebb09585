#pragma once

#include <string>

#include "hdeform/contraction.hpp"
#include "hdeform/qplane.hpp"
#include "hdeform/report.hpp"
#include "hdeform/rmatrix.hpp"
#include <json.hpp>

namespace hdeform {

using json = nlohmann::ordered_json;

template <Scalar S>
json to_json(const RMatrix<S>& R) {
  json entries = json::array();
  for (const auto& e : R.entries())
    entries.push_back({{"row", {e.index[0], e.index[1]}}, {"col", {e.index[2], e.index[3]}}, {"value", e.value.to_string()}});
  return {{"N", R.dim()}, {"entries", entries}};
}

/// Throws ParseError on schema violations or malformed scalars.
template <Scalar S>
RMatrix<S> rmatrix_from_json(const json& j);

json to_json(const ContractionMap& g);
ContractionMap contraction_map_from_json(const json& j);

template <Scalar S>
json to_json(const RelationSet<S>& rels) {
  json relations = json::array();
  for (const auto& e : rels.basis) {
    json terms = json::array();
    for (const auto& [ab, c] : e.coeffs) terms.push_back({{"pair", {ab.first, ab.second}}, {"coeff", c.to_string()}});
    relations.push_back({{"terms", terms}});
  }
  return {{"N", rels.dim}, {"kind", to_string(rels.kind)}, {"relations", relations}};
}

json to_json(const VerificationReport& rep);
json to_json(const std::vector<SingularEntry>& entries);
json to_json(const std::vector<RelationSingularEntry>& entries);

/// Parses a document from text; ParseError on bad JSON.
json parse_json(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace hdeform
