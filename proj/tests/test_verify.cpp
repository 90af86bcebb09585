#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdeform/contraction.hpp"
#include "hdeform/verify.hpp"

using namespace hdeform;

namespace {

Generator M(int a, int b) { return {a, b, false}; }
Generator dM(int a, int b) { return {a, b, true}; }

RMatrix<HPoly> first_case() { return contract_r(build_r_A(3), gl3_map(Gl3Map::G1)); }

// Terms given as "abcd" -> coefficient for M_ab M_cd.
FreeQuadRelation rel(const std::vector<std::pair<const char*, const char*>>& terms) {
  FreeQuadRelation r;
  for (const auto& [idx, c] : terms) {
    auto d = [&](int k) { return idx[k] - '0'; };
    r.terms.emplace(std::pair{M(d(0), d(1)), M(d(2), d(3))}, parse_ratfunc(c));
  }
  return r;
}

std::vector<FreeQuadRelation> relabel(const std::vector<FreeQuadRelation>& rels, const std::array<int, 4>& perm) {
  std::vector<FreeQuadRelation> out;
  for (const auto& r : rels) {
    FreeQuadRelation s;
    for (const auto& [xy, c] : r.terms) {
      auto map = [&](const Generator& g) { return Generator{perm[static_cast<std::size_t>(g.row)], perm[static_cast<std::size_t>(g.col)], g.differential}; };
      s.terms.emplace(std::pair{map(xy.first), map(xy.second)}, c);
    }
    out.push_back(s);
  }
  return canonical(out);
}

std::vector<FreeQuadRelation> mixed_commutators(int N) {
  std::vector<FreeQuadRelation> out;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          FreeQuadRelation r;
          r.terms.emplace(std::pair{M(a, b), dM(c, d)}, RatFunc(1));
          r.terms.emplace(std::pair{dM(c, d), M(a, b)}, RatFunc(-1));
          out.push_back(r);
        }
  return canonical(out);
}

std::vector<FreeQuadRelation> anticommutators(int N) {
  std::vector<FreeQuadRelation> out;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          FreeQuadRelation r;
          r.terms[std::pair{dM(a, b), dM(c, d)}] += RatFunc(1);
          r.terms[std::pair{dM(c, d), dM(a, b)}] += RatFunc(1);
          out.push_back(r);
        }
  return canonical(out);
}

}  // namespace

TEST_CASE("Yang-Baxter reports") {
  const auto rep = check_ybe(first_case());
  CHECK(rep.pass);
  CHECK(rep.residuals.empty());
  CHECK(rep.check == "ybe");
  CHECK(check_ybe(build_r_A(4)).pass);

  RMatrix<HPoly> bad = RMatrix<HPoly>::identity(2);
  bad.add_unit(1, 1, 1, 2, HPoly::h());  // + h e_11 (x) e_12
  const auto fail = check_ybe(bad);
  CHECK_FALSE(fail.pass);
  CHECK_FALSE(fail.residuals.empty());
  CHECK(fail.residual_total == fail.residuals.size());
}

TEST_CASE("residual lists are truncated unless asked") {
  auto R = contract_r(build_r_A(4), standard_g(4));
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) R.add(i, j, j, i, HPoly::h() + HPoly::monomial(1, 3));
  const auto rep = check_ybe(R);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.residual_total > 20);
  CHECK(rep.residuals.size() == 20);
  const auto full = check_ybe(R, ReportOptions{true, 20});
  CHECK(full.residuals.size() == full.residual_total);
  CHECK(full.residual_total == rep.residual_total);
  // Largest entries first.
  auto terms = [](const std::string& s) { return std::count(s.begin(), s.end(), '^') + std::count(s.begin(), s.end(), 'h'); };
  CHECK(terms(full.residuals.front()) >= terms(full.residuals.back()));
}

TEST_CASE("involutive contracted matrices") {
  CHECK(check_involutive(first_case()).pass);
  CHECK(check_involutive(contract_r(build_r(SeriesSpec::C(2)), standard_g(4))).pass);
  CHECK(check_involutive(RMatrix<HPoly>::identity(3)).pass);  // h = 0: P^2 = 1
  CHECK_FALSE(check_involutive(build_r_A(2)).pass);
}

TEST_CASE("RTT relations with R = 1 are the commutators") {
  for (int N = 2; N <= 3; ++N) {
    const auto rels = rtt_relations(RMatrix<HPoly>::identity(N));
    CHECK(rels == commutator_span(N));
    CHECK(rels.size() == static_cast<std::size_t>(N * N * (N * N - 1) / 2));
  }
}

TEST_CASE("RTT relations of GL_h(2) match a brute-force expansion") {
  // Echelon basis from an independent expansion of R M1 M2 - M2 M1 R.
  const std::vector<FreeQuadRelation> want = canonical({
      rel({{"1111", "1"}, {"1112", "1/h"}, {"1211", "-1/h"}, {"2111", "h"}, {"2112", "1"}, {"2211", "-1"}}),
      rel({{"1121", "1"}, {"2111", "-1"}, {"2122", "1"}, {"2221", "-1"}}),
      rel({{"1122", "1"}, {"2111", "h"}, {"2122", "-h"}, {"2211", "-1"}}),
      rel({{"1221", "1"}, {"2111", "-h"}, {"2112", "-1"}, {"2221", "-h"}}),
      rel({{"1222", "1"}, {"2111", "-h^2"}, {"2112", "-h"}, {"2211", "h"}, {"2212", "-1"}, {"2222", "-h"}}),
      rel({{"2121", "1"}, {"2122", "1/h"}, {"2221", "-1/h"}}),
  });
  const auto Rh = contract_r(build_r_A(2), standard_g(2));
  const auto rels = rtt_relations(Rh);
  CHECK(rels.size() == 6);
  CHECK(rels == want);
  // Same rank as the q-deformed algebra.
  CHECK(rtt_relations(build_r_A(2)).size() == 6);
}

TEST_CASE("no rank drop at a numeric point") {
  for (int N = 2; N <= 3; ++N) {
    const auto R = build_r_A(N);
    const Rational v = make_rational(3, 2);
    const auto at_point = R.map([&](const RatFunc& f) { return RatFunc(f.evaluate(v, 0)); });
    CHECK(rtt_relations(at_point).size() == rtt_relations(R).size());
  }
}

TEST_CASE("RTT relations at h = 0 and q = 1") {
  CHECK(specialize_h(rtt_relations(first_case()), 0) == commutator_span(3));
  CHECK(specialize_h(rtt_relations(contract_r(build_r_A(2), standard_g(2))), 0) == commutator_span(2));
  CHECK(specialize_v(rtt_relations(build_r_A(2)), 1) == commutator_span(2));
  // At a nonzero h the span keeps its size.
  const auto rels = rtt_relations(first_case());
  CHECK(specialize_h(rels, 2).size() == rels.size());
}

TEST_CASE("RTT spans of R(g1) and R(g2) are related by the 3-cycle") {
  const auto r1 = rtt_relations(contract_r(build_r_A(3), gl3_map(Gl3Map::G1)));
  const auto r2 = rtt_relations(contract_r(build_r_A(3), gl3_map(Gl3Map::G2)));
  // M = s M' s^-1 with s e_1 = e_2, s e_2 = e_3, s e_3 = e_1, so M_ab = M'_(p(a) p(b))
  // with p the inverse cycle 1 -> 3, 2 -> 1, 3 -> 2.
  CHECK(relabel(r2, {0, 3, 1, 2}) == r1);
  CHECK(relabel(r2, {0, 2, 3, 1}) != r1);
}

TEST_CASE("differential calculus relations") {
  const auto id = wz_relations(RMatrix<HPoly>::identity(2));
  CHECK(id.mixed == mixed_commutators(2));
  CHECK(id.differential == anticommutators(2));
  CHECK(id.mixed.size() == 16);
  CHECK(id.differential.size() == 10);

  const auto wz = wz_relations(contract_r(build_r_A(2), standard_g(2)));
  CHECK(wz.mixed.size() == 16);
  CHECK(wz.differential.size() == 10);
  CHECK(specialize_h(wz.mixed, 0) == id.mixed);
  CHECK(specialize_h(wz.differential, 0) == id.differential);
}

TEST_CASE("golden listings") {
  const auto g12 = golden_compare(first_case(), load_golden("gl3_alpha"));
  CHECK(g12.matched == GoldenVariant::R);
  CHECK(g12.report.pass);
  const auto g14 = golden_compare(contract_r(build_r_A(3), gl3_map(Gl3Map::G3)), load_golden("gl3_beta"));
  CHECK(g14.matched == GoldenVariant::R);
  CHECK(golden_compare(flip_conjugate(first_case()), load_golden("gl3_alpha")).matched == GoldenVariant::FlipConjugate);
  for (int n = 1; n <= 3; ++n)
    CHECK(golden_compare(contract_r(build_r(SeriesSpec::C(n)), standard_g(2 * n)), load_golden("sp2n_" + std::to_string(n)))
              .matched == GoldenVariant::R);
  for (int N = 3; N <= 6; ++N) {
    const auto listing = load_golden("gln_" + std::to_string(N));
    const auto cmp = golden_compare(contract_r(build_r_A(N), standard_g(N)), listing);
    CHECK(cmp.matched == GoldenVariant::None);
    CHECK(cmp.sign_only);
    CHECK(cmp.differences.size() == static_cast<std::size_t>(2 * (N - 2)));
    CHECK_FALSE(cmp.report.pass);
    CHECK_FALSE(check_ybe(listing.matrix).pass);
  }
  const auto mismatch = golden_compare(first_case(), load_golden("gln_4"));
  CHECK(mismatch.matched == GoldenVariant::None);
  CHECK_THROWS_AS(load_golden("no_such_listing"), ParseError);
  for (int n = 1; n <= 3; ++n)
    CHECK(load_golden_form("spform_" + std::to_string(n)) == contract_form(standard_g(2 * n), SeriesSpec::C(n)));
}

TEST_CASE("relation printing") {
  CHECK(M(1, 2).to_string() == "M_12");
  CHECK(dM(2, 1).to_string() == "dM_21");
  CHECK(rel({{"1112", "1"}, {"1211", "-h"}}).to_string() == "M_11 M_12 + (-h) M_12 M_11");
  CHECK(FreeQuadRelation{}.to_string() == "0");
  CHECK(to_string(GoldenVariant::FlipConjugate) == "PRP");
}
