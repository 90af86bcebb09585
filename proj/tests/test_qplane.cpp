#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hdeform/io.hpp"
#include "hdeform/qplane.hpp"

using namespace hdeform;

namespace {

struct Term {
  int a, b;
  const char* c;
};

// A relation set over HPoly from term lists.
RelationSet<HPoly> set_of(int N, RelationKind k, const std::vector<std::vector<Term>>& rels) {
  RelationSet<HPoly> out{N, k, {}};
  for (const auto& r : rels) {
    QuadExpr<HPoly> e(N);
    for (const auto& t : r) e.add(t.a, t.b, parse_scalar<HPoly>(t.c));
    out.basis.push_back(e);
  }
  return out;
}

QuadExpr<HPoly> commutator(int N, int a, int b) {
  QuadExpr<HPoly> e(N);
  e.add(a, b, HPoly(1));
  e.add(b, a, HPoly(-1));
  return e;
}

RelationSet<HPoly> commutative(int N) {
  RelationSet<HPoly> out{N, RelationKind::Plane, {}};
  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) out.basis.push_back(commutator(N, a, b));
  return out;
}

RelationSet<HPoly> grassmann(int N) {
  RelationSet<HPoly> out{N, RelationKind::Dual, {}};
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) {
      QuadExpr<HPoly> e(N);
      e.add(a, b, HPoly(1));
      if (a != b) e.add(b, a, HPoly(1));
      out.basis.push_back(e);
    }
  return out;
}

SparseMatrix<HPoly> shifted_rhat(const RMatrix<HPoly>& Rh, int sign) {
  const auto id = SparseMatrix<HPoly>::identity(Rh.matrix().rows());
  return sign > 0 ? rhat(Rh).matrix() + id : rhat(Rh).matrix() - id;
}

}  // namespace

TEST_CASE("q-plane and dual sizes") {
  CHECK(manin_plane(3).basis.size() == 3);
  CHECK(manin_plane(5).basis.size() == 10);
  CHECK(dual_plane(3).basis.size() == 6);
  for (int N = 2; N <= 6; ++N) {
    CHECK(echelon(manin_plane(N)).basis.size() == static_cast<std::size_t>(N * (N - 1) / 2));
    CHECK(echelon(dual_plane(N)).basis.size() == static_cast<std::size_t>(N * (N + 1) / 2));
  }
  CHECK_THROWS(manin_plane(1));
}

TEST_CASE("q = 1 gives the classical algebras") {
  for (int N = 2; N <= 4; ++N) {
    CHECK(same_span(transform_relations(manin_plane(N), ContractionMap(N)), commutative(N)));
    CHECK(same_span(transform_relations(dual_plane(N), ContractionMap(N)), grassmann(N)));
  }
  // The symplectic space also goes to commutators.
  for (int n = 1; n <= 3; ++n)
    CHECK(same_span(transform_relations(symplectic_space(SeriesSpec::C(n)), ContractionMap(2 * n)), commutative(2 * n)));
}

TEST_CASE("GL(3) first case: plane and dual") {
  const auto g = gl3_map(Gl3Map::G1);
  const auto plane = transform_relations(manin_plane(3), g);
  CHECK(same_span(plane, set_of(3, RelationKind::Plane,
                                {{{1, 2, "1"}, {2, 1, "-1"}, {2, 2, "-h"}},
                                 {{1, 3, "1"}, {3, 1, "-1"}},
                                 {{2, 3, "1"}, {3, 2, "-1"}}})));
  const auto dual = transform_relations(dual_plane(3), g);
  CHECK(same_span(dual, set_of(3, RelationKind::Dual,
                               {{{3, 3, "1"}},
                                {{2, 2, "1"}},
                                {{1, 2, "1"}, {2, 1, "1"}},
                                {{2, 3, "1"}, {3, 2, "1"}},
                                {{1, 3, "1"}, {3, 1, "1"}},
                                {{1, 1, "1"}, {2, 1, "h"}}})));
  CHECK(format_relations(plane) == "[x_1,x_2] = h x_2²\n[x_1,x_3] = 0\n[x_2,x_3] = 0\n");
}

TEST_CASE("GL(3) second case: plane and dual") {
  const auto g = gl3_map(Gl3Map::G3);
  const auto plane = transform_relations(manin_plane(3), g);
  CHECK(format_relations(plane) == "[x_1,x_2] = 2*h x_3x_2\n[x_1,x_3] = h x_3²\n[x_2,x_3] = 0\n");
  const auto dual = transform_relations(dual_plane(3), g);
  CHECK(same_span(dual, set_of(3, RelationKind::Dual,
                               {{{1, 2, "1"}, {2, 1, "1"}, {3, 2, "2*h"}},
                                {{1, 1, "1"}, {3, 1, "h"}},
                                {{3, 3, "1"}},
                                {{2, 2, "1"}},
                                {{1, 3, "1"}, {3, 1, "1"}},
                                {{2, 3, "1"}, {3, 2, "1"}}})));
}

TEST_CASE("standard map on the N-dimensional plane") {
  for (int N = 3; N <= 6; ++N) {
    RelationSet<HPoly> want{N, RelationKind::Plane, {}};
    for (int i = 2; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) want.basis.push_back(commutator(N, i, j));
    for (int j = 2; j < N; ++j) {
      auto e = commutator(N, 1, j);
      e.add(N, j, HPoly::monomial(-2, 1));
      want.basis.push_back(e);
    }
    auto e = commutator(N, 1, N);
    e.add(N, N, HPoly::monomial(-1, 1));
    want.basis.push_back(e);
    CHECK(same_span(transform_relations(manin_plane(N), standard_g(N)), want));
  }
}

TEST_CASE("relations agree with the eigenspaces of the contracted R^") {
  std::vector<std::pair<ContractionMap, int>> cases = {{gl3_map(Gl3Map::G1), 3}, {gl3_map(Gl3Map::G3), 3}};
  for (int N = 2; N <= 5; ++N) cases.emplace_back(standard_g(N), N);
  for (const auto& [g, N] : cases) {
    const auto Rh = contract_r(build_r_A(N), g);
    const auto plane = transform_relations(manin_plane(N), g);
    const auto dual = transform_relations(dual_plane(N), g);
    CHECK(same_span(plane, row_space(shifted_rhat(Rh, -1), N, RelationKind::Plane)));
    CHECK(same_span(dual, row_space(shifted_rhat(Rh, +1), N, RelationKind::Dual)));
  }
  // Before the limit: rows of R^ - q and R^ + 1/q.
  for (int N = 2; N <= 4; ++N) {
    const auto rh = rhat(build_r_A(N)).matrix();
    const auto id = SparseMatrix<RatFunc>::identity(rh.rows());
    CHECK(same_span(manin_plane(N), row_space(rh - id.scaled(RatFunc::q()), N, RelationKind::Plane)));
    CHECK(same_span(dual_plane(N), row_space(rh + id.scaled(RatFunc::q(-1)), N, RelationKind::Dual)));
  }
}

TEST_CASE("transformation keeps the span dimension") {
  for (int N = 2; N <= 5; ++N) {
    CHECK(transform_relations(manin_plane(N), standard_g(N)).basis.size() == static_cast<std::size_t>(N * (N - 1) / 2));
    CHECK(transform_relations(dual_plane(N), standard_g(N)).basis.size() == static_cast<std::size_t>(N * (N + 1) / 2));
  }
  const auto sp = symplectic_space(SeriesSpec::C(2));
  CHECK(transform_relations(sp, standard_g(4)).basis.size() == echelon(sp).basis.size());
}

TEST_CASE("symplectic relation counts") {
  for (int n = 1; n <= 3; ++n) {
    const int N = 2 * n;
    CHECK(symplectic_space(SeriesSpec::C(n)).basis.size() == static_cast<std::size_t>(N * (N - 1) / 2));
  }
  CHECK_THROWS(symplectic_space(SeriesSpec::D(2)));
}

TEST_CASE("symplectic relations for n = 1") {
  const auto rels = transform_relations(symplectic_space(SeriesSpec::C(1)), standard_g(2));
  CHECK(format_relations(rels) == "[x_1,x_2] = 2*h x_2²\n");
}

TEST_CASE("singular transformations are reported") {
  ContractionMap g(3);
  g.set(1, 2, singular_entry());
  g.set(2, 3, singular_entry());
  const auto res = try_transform_relations(manin_plane(3), g);
  CHECK_FALSE(res.ok());
  CHECK_FALSE(res.singular.empty());
  for (const auto& e : res.singular) CHECK(e.order < 0);
  CHECK_THROWS_AS(transform_relations(manin_plane(3), g), RelationSingular);
  CHECK(res.prelimit.basis.size() == 3);
}

TEST_CASE("isotropy of the symplectic form") {
  // x^t C x = x_1x_2 - x_2x_1 - 2h x_2^2 for n = 1 reduces to zero.
  const auto C = contract_form(standard_g(2), SeriesSpec::C(1));
  const auto e = quadratic_form_expr(C);
  CHECK(e.coeff(1, 2) == HPoly(1));
  CHECK(e.coeff(2, 1) == HPoly(-1));
  CHECK(e.coeff(2, 2) == HPoly::monomial(-2, 1));
  for (int n = 1; n <= 3; ++n) {
    const auto rels = transform_relations(symplectic_space(SeriesSpec::C(n)), standard_g(2 * n));
    const auto form = quadratic_form_expr(contract_form(standard_g(2 * n), SeriesSpec::C(n)));
    CHECK(reduce_quadratic(form, rels).is_zero());
  }
}

TEST_CASE("reduction to normal order") {
  const auto comm = commutative(2);
  QuadExpr<HPoly> e(2);
  e.add(2, 1, HPoly(1));
  const auto r = reduce_quadratic(e, comm);
  CHECK(r.coeff(1, 2) == HPoly(1));
  CHECK(r.coeffs.size() == 1);

  // A square rewritten by a relation: eta_1^2 = -h eta_2 eta_1.
  const auto dual = transform_relations(dual_plane(3), gl3_map(Gl3Map::G1));
  QuadExpr<HPoly> sq(3);
  sq.add(1, 1, HPoly(1));
  const auto rs = reduce_quadratic(sq, dual);
  CHECK(rs.coeffs.size() == 1);
  CHECK(rs.coeff(1, 2) == HPoly::h());
  sq.add(2, 1, HPoly::h());
  CHECK(reduce_quadratic(sq, dual).is_zero());

  // An ordered monomial cannot be a rewrite target.
  const auto bad = set_of(2, RelationKind::Plane, {{{1, 2, "1"}}});
  CHECK_THROWS_AS(reduce_quadratic(e, bad), NonSolvable);
  CHECK_THROWS_AS(reduce_quadratic(QuadExpr<HPoly>(3), comm), std::invalid_argument);
}

TEST_CASE("reduction is idempotent and linear") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-3, 3), idx(1, 4);
  const auto rels = transform_relations(symplectic_space(SeriesSpec::C(2)), standard_g(4));
  auto random_expr = [&] {
    QuadExpr<HPoly> e(4);
    for (int t = 0; t < 5; ++t) e.add(idx(rng), idx(rng), HPoly(c(rng)) + HPoly::monomial(c(rng), 1));
    return e;
  };
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_expr(), b = random_expr();
    const auto ra = reduce_quadratic(a, rels), rb = reduce_quadratic(b, rels);
    CHECK(reduce_quadratic(ra, rels) == ra);
    for (const auto& [ab, v] : ra.coeffs) CHECK(ab.first <= ab.second);
    const HPoly k = HPoly(c(rng)) + HPoly::h();
    QuadExpr<HPoly> sum(4);
    for (const auto& [ab, v] : a.coeffs) sum.add(ab.first, ab.second, v);
    for (const auto& [ab, v] : b.coeffs) sum.add(ab.first, ab.second, k * v);
    QuadExpr<HPoly> want(4);
    for (const auto& [ab, v] : ra.coeffs) want.add(ab.first, ab.second, v);
    for (const auto& [ab, v] : rb.coeffs) want.add(ab.first, ab.second, k * v);
    CHECK(reduce_quadratic(sum, rels) == want);
  }
}

TEST_CASE("relation formatting") {
  CHECK(format_relations(RelationSet<HPoly>{3, RelationKind::Plane, {}}).empty());
  CHECK(format_relations(grassmann(2)) == "η_1² = 0\n{η_1,η_2} = 0\nη_2² = 0\n");
  // Not commutator shaped.
  const auto raw = set_of(2, RelationKind::Plane, {{{1, 2, "1"}, {2, 1, "3"}}});
  CHECK(format_relations(raw) == "x_1x_2 + 3 x_2x_1 = 0\n");
  CHECK(to_string(RelationKind::Symplectic) == "symplectic");
  CHECK(parse_relation_kind("dual") == RelationKind::Dual);
}

TEST_CASE("span helpers") {
  const auto plane = transform_relations(manin_plane(3), gl3_map(Gl3Map::G3));
  QuadExpr<HPoly> e = commutator(3, 2, 3);
  CHECK(in_span(e, plane));
  e.add(1, 1, HPoly(1));
  CHECK_FALSE(in_span(e, plane));
  CHECK_FALSE(same_span(plane, commutative(3)));
  CHECK_FALSE(same_span(commutative(3), commutative(4)));
}

TEST_CASE("relation set JSON") {
  const auto plane = transform_relations(manin_plane(3), gl3_map(Gl3Map::G1));
  const json j = to_json(plane);
  CHECK(j["N"] == 3);
  CHECK(j["kind"] == "plane");
  REQUIRE(j["relations"].size() == 3);
  const auto& first = j["relations"][0]["terms"];
  CHECK(first[0]["pair"] == json::array({1, 2}));
  CHECK(first[0]["coeff"] == "1");
}

TEST_CASE("admissibility scan over the GL(3) slots") {
  const auto rep = admissibility_scan_gl3();
  CHECK(rep.summary.pass);
  REQUIRE(rep.patterns.size() == 8);
  int singular_admissible = 0;
  for (const auto& p : rep.patterns) {
    const int count = p.singular[0] + p.singular[1] + p.singular[2];
    if (count > 0 && p.admissible) ++singular_admissible;
    CHECK(p.admissible == (count <= 1));
    if (p.name() == "alpha") CHECK(p.rejected_assignments.size() == 2);
  }
  CHECK(singular_admissible == 3);
}
