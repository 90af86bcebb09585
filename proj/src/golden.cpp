#include "hdeform/io.hpp"
#include "hdeform/scalar.hpp"
#include "hdeform/verify.hpp"

namespace hdeform {

GoldenListing load_golden(const std::string& id, const std::string& dir) {
  const json j = parse_json(read_file(dir + "/" + id + ".json"));
  GoldenListing out;
  out.id = j.value("id", id);
  out.description = j.value("description", "");
  out.matrix = rmatrix_from_json<HPoly>(j);
  return out;
}

SparseMatrix<HPoly> load_golden_form(const std::string& id, const std::string& dir) {
  const json j = parse_json(read_file(dir + "/" + id + ".json"));
  if (!j.contains("N") || !j["N"].is_number_integer() || !j.contains("entries")) throw ParseError("bad form listing " + id);
  const auto N = j["N"].get<std::size_t>();
  SparseMatrix<HPoly> C(N, N);
  for (const auto& e : j["entries"]) {
    const auto r = e.at("row").get<std::size_t>(), c = e.at("col").get<std::size_t>();
    if (r < 1 || c < 1 || r > N || c > N) throw ParseError("form index out of range in " + id);
    C.add(r - 1, c - 1, parse_scalar<HPoly>(e.at("value").get<std::string>()));
  }
  return C;
}

}  // namespace hdeform
