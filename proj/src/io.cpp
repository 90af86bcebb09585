#include "hdeform/io.hpp"

#include <fstream>
#include <sstream>

#include "hdeform/errors.hpp"
#include "hdeform/scalar.hpp"

namespace hdeform {

namespace {

int get_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string("expected integer field '") + key + "'");
  return j[key].get<int>();
}

std::pair<int, int> get_pair(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number_integer() ||
      !j[key][1].is_number_integer())
    throw ParseError(std::string("expected [int,int] field '") + key + "'");
  return {j[key][0].get<int>(), j[key][1].get<int>()};
}

std::string get_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("expected string field '") + key + "'");
  return j[key].get<std::string>();
}

const json& get_array(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("expected array field '") + key + "'");
  return j[key];
}

void check_range(int x, int N) {
  if (x < 1 || x > N) throw ParseError("index " + std::to_string(x) + " outside 1.." + std::to_string(N));
}

}  // namespace

template <Scalar S>
RMatrix<S> rmatrix_from_json(const json& j) {
  const int N = get_int(j, "N");
  if (N < 1) throw ParseError("N must be positive");
  RMatrix<S> R(N);
  for (const auto& e : get_array(j, "entries")) {
    auto [i, jj] = get_pair(e, "row");
    auto [k, l] = get_pair(e, "col");
    for (int x : {i, jj, k, l}) check_range(x, N);
    R.add(i, jj, k, l, parse_scalar<S>(get_string(e, "value")));
  }
  return R;
}

template RMatrix<RatFunc> rmatrix_from_json(const json&);
template RMatrix<HPoly> rmatrix_from_json(const json&);

json to_json(const ContractionMap& g) {
  json entries = json::array();
  g.matrix().for_each([&](std::size_t r, std::size_t c, const RatFunc& v) {
    entries.push_back({{"row", r + 1}, {"col", c + 1}, {"value", v.to_string()}});
  });
  return {{"N", g.dim()}, {"entries", entries}};
}

ContractionMap contraction_map_from_json(const json& j) {
  const int N = get_int(j, "N");
  if (N < 1) throw ParseError("N must be positive");
  SparseMatrix<RatFunc> m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
  for (const auto& e : get_array(j, "entries")) {
    const int r = get_int(e, "row"), c = get_int(e, "col");
    check_range(r, N);
    check_range(c, N);
    m.add(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1), parse_ratfunc(get_string(e, "value")));
  }
  try {
    return ContractionMap(N, m);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

json to_json(const VerificationReport& rep) {
  json out = {{"check", rep.check}, {"pass", rep.pass}, {"residuals", rep.residuals}, {"elapsed_ms", rep.elapsed_ms}};
  if (rep.residual_total > rep.residuals.size()) out["residual_total"] = rep.residual_total;
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  return out;
}

json to_json(const std::vector<SingularEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back({{"entry", e.label}, {"order", e.order}, {"value", e.value}});
  return arr;
}

json to_json(const std::vector<RelationSingularEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries)
    arr.push_back({{"relation", e.relation}, {"pair", {e.pair.first, e.pair.second}}, {"order", e.order}, {"value", e.value}});
  return arr;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hdeform
