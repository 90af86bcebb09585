#include "hdeform/verify.hpp"

#include <algorithm>
#include <limits>

#include "hdeform/sparse.hpp"

namespace hdeform {

std::string Generator::to_string() const {
  return std::string(differential ? "dM" : "M") + "_" + std::to_string(row) + std::to_string(col);
}

std::string FreeQuadRelation::to_string() const {
  std::string out;
  for (const auto& [xy, c] : terms) {
    std::string cs = c.to_string();
    if (!out.empty()) out += " + ";
    out += (cs == "1" ? "" : "(" + cs + ") ") + xy.first.to_string() + " " + xy.second.to_string();
  }
  return out.empty() ? "0" : out;
}

namespace {

template <Scalar S>
void collect_residuals(VerificationReport& rep, const SparseMatrix<S>& diff, int N, int legs,
                       const ReportOptions& opts) {
  struct Item {
    std::size_t size;
    std::size_t r, c;
    std::string text;
  };
  std::vector<Item> items;
  auto label = [&](std::size_t flat) {
    std::string s;
    std::vector<int> idx(static_cast<std::size_t>(legs));
    for (int k = legs - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(N)) + 1;
      flat /= static_cast<std::size_t>(N);
    }
    for (int x : idx) s += std::to_string(x);
    return s;
  };
  diff.for_each([&](std::size_t r, std::size_t c, const S& v) {
    items.push_back({v.term_count(), r, c, "(" + label(r) + "),(" + label(c) + "): " + v.to_string()});
  });
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.size > b.size; });
  rep.residual_total = items.size();
  const std::size_t keep = opts.full_residuals ? items.size() : std::min(items.size(), opts.residual_limit);
  for (std::size_t k = 0; k < keep; ++k) rep.residuals.push_back(items[k].text);
  rep.pass = items.empty();
}

}  // namespace

template <Scalar S>
VerificationReport check_ybe(const RMatrix<S>& R, const ReportOptions& opts) {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "ybe";
  const auto r12 = tensor_embed(R, Leg::L12);
  const auto r13 = tensor_embed(R, Leg::L13);
  const auto r23 = tensor_embed(R, Leg::L23);
  collect_residuals(rep, (r12 * r13) * r23 - (r23 * r13) * r12, R.dim(), 3, opts);
  rep.elapsed_ms = sw.ms();
  return rep;
}

template VerificationReport check_ybe(const RMatrix<RatFunc>&, const ReportOptions&);
template VerificationReport check_ybe(const RMatrix<HPoly>&, const ReportOptions&);

VerificationReport check_hecke(const RMatrix<RatFunc>& R, const ReportOptions& opts) {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "hecke";
  const auto id = SparseMatrix<RatFunc>::identity(R.matrix().rows());
  const auto rh = rhat(R).matrix();
  collect_residuals(rep, (rh - id.scaled(RatFunc::q())) * (rh + id.scaled(RatFunc::q(-1))), R.dim(), 2, opts);
  rep.elapsed_ms = sw.ms();
  return rep;
}

template <Scalar S>
VerificationReport check_involutive(const RMatrix<S>& R, const ReportOptions& opts) {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "involutive";
  const auto rh = rhat(R).matrix();
  collect_residuals(rep, rh * rh - SparseMatrix<S>::identity(rh.rows()), R.dim(), 2, opts);
  rep.elapsed_ms = sw.ms();
  return rep;
}

template VerificationReport check_involutive(const RMatrix<RatFunc>&, const ReportOptions&);
template VerificationReport check_involutive(const RMatrix<HPoly>&, const ReportOptions&);

namespace {

using Monomial = std::pair<Generator, Generator>;
using Cell = std::map<Monomial, RatFunc>;
// Dense N^2 x N^2 array of free-algebra elements.
using QuadMatrix = std::vector<std::vector<Cell>>;

void add_to(Cell& cell, const Monomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = cell.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) cell.erase(it);
  }
}

Generator gen(int a, int b, bool d) { return {a, b, d}; }

// out(ij, kl) = first(a_i, a_k) second(b_j, b_l) style products, given by f.
template <class F>
QuadMatrix build(int N, F&& f) {
  const auto n2 = static_cast<std::size_t>(N * N);
  QuadMatrix m(n2, std::vector<Cell>(n2));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l)
          add_to(m[static_cast<std::size_t>((i - 1) * N + j - 1)][static_cast<std::size_t>((k - 1) * N + l - 1)],
                 f(i, j, k, l), RatFunc(1));
  return m;
}

QuadMatrix left(const SparseMatrix<RatFunc>& r, const QuadMatrix& q) {
  QuadMatrix out(q.size(), std::vector<Cell>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const auto& [k, rv] : r.row(i))
      for (std::size_t j = 0; j < q.size(); ++j)
        for (const auto& [m, c] : q[k][j]) add_to(out[i][j], m, rv * c);
  return out;
}

QuadMatrix right(const QuadMatrix& q, const SparseMatrix<RatFunc>& r) {
  QuadMatrix out(q.size(), std::vector<Cell>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < q.size(); ++k)
      for (const auto& [j, rv] : r.row(k))
        for (const auto& [m, c] : q[i][k]) add_to(out[i][j], m, c * rv);
  return out;
}

void accumulate(QuadMatrix& a, const QuadMatrix& b, const RatFunc& sign) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (const auto& [m, c] : b[i][j]) add_to(a[i][j], m, sign * c);
}

// Column order: generators M_ab (lex) before dM_ab (lex); monomials by pair.
class MonomialIndex {
 public:
  explicit MonomialIndex(int N) : n_(N) {}
  std::size_t gen_index(const Generator& g) const {
    return static_cast<std::size_t>((g.differential ? n_ * n_ : 0) + (g.row - 1) * n_ + (g.col - 1));
  }
  Generator gen_at(std::size_t k) const {
    const auto n2 = static_cast<std::size_t>(n_ * n_);
    const bool d = k >= n2;
    const auto local = static_cast<int>(k % n2);
    return {local / n_ + 1, local % n_ + 1, d};
  }
  std::size_t column(const Monomial& m) const { return gen_index(m.first) * stride() + gen_index(m.second); }
  Monomial monomial(std::size_t col) const { return {gen_at(col / stride()), gen_at(col % stride())}; }

 private:
  std::size_t stride() const { return static_cast<std::size_t>(2 * n_ * n_); }
  int n_;
};

std::vector<FreeQuadRelation> reduce(const std::vector<Cell>& cells, int N) {
  MonomialIndex idx(N);
  std::vector<std::map<std::size_t, RatFunc>> rows;
  for (const auto& cell : cells) {
    if (cell.empty()) continue;
    std::map<std::size_t, RatFunc> row;
    for (const auto& [m, c] : cell) row.emplace(idx.column(m), c);
    rows.push_back(std::move(row));
  }
  std::vector<FreeQuadRelation> out;
  for (const auto& row : rref(rows).rows) {
    FreeQuadRelation rel;
    for (const auto& [c, v] : row) rel.terms.emplace(idx.monomial(c), v);
    out.push_back(std::move(rel));
  }
  return out;
}

std::vector<Cell> flatten(const QuadMatrix& m) {
  std::vector<Cell> cells;
  for (const auto& row : m)
    for (const auto& c : row) cells.push_back(c);
  return cells;
}

int dim_of(const std::vector<FreeQuadRelation>& rels) {
  int N = 0;
  for (const auto& r : rels)
    for (const auto& [m, c] : r.terms) N = std::max({N, m.first.row, m.first.col, m.second.row, m.second.col});
  return N;
}

}  // namespace

template <Scalar S>
std::vector<FreeQuadRelation> rtt_relations(const RMatrix<S>& R) {
  const int N = R.dim();
  const auto r = R.matrix().map([](const S& x) { return lift(x); });
  // (M1 M2)_{ab,kl} = M_ak M_bl, (M2 M1)_{ij,ab} = M_jb M_ia.
  const QuadMatrix m1m2 = build(N, [](int a, int b, int k, int l) { return Monomial{gen(a, k, false), gen(b, l, false)}; });
  const QuadMatrix m2m1 = build(N, [](int i, int j, int a, int b) { return Monomial{gen(j, b, false), gen(i, a, false)}; });
  QuadMatrix rel = left(r, m1m2);
  accumulate(rel, right(m2m1, r), RatFunc(-1));
  return reduce(flatten(rel), N);
}

template std::vector<FreeQuadRelation> rtt_relations(const RMatrix<RatFunc>&);
template std::vector<FreeQuadRelation> rtt_relations(const RMatrix<HPoly>&);

template <Scalar S>
WzRelations wz_relations(const RMatrix<S>& R) {
  const int N = R.dim();
  const auto r = R.matrix().map([](const S& x) { return lift(x); });
  const auto r21 = flip_conjugate(R).matrix().map([](const S& x) { return lift(x); });
  // (M2 dM1)_{ij,kl} = M_jl dM_ik and (dM1 M2)_{ab,cd} = dM_ac M_bd.
  const QuadMatrix m2dm1 = build(N, [](int i, int j, int k, int l) { return Monomial{gen(j, l, false), gen(i, k, true)}; });
  const QuadMatrix dm1m2 = build(N, [](int a, int b, int c, int d) { return Monomial{gen(a, c, true), gen(b, d, false)}; });
  const QuadMatrix dm2dm1 = build(N, [](int i, int j, int k, int l) { return Monomial{gen(j, l, true), gen(i, k, true)}; });
  const QuadMatrix dm1dm2 = build(N, [](int a, int b, int c, int d) { return Monomial{gen(a, c, true), gen(b, d, true)}; });
  QuadMatrix first = m2dm1;
  accumulate(first, right(left(r, dm1m2), r21), RatFunc(-1));
  QuadMatrix second = dm2dm1;
  accumulate(second, right(left(r, dm1dm2), r21), RatFunc(1));
  return {reduce(flatten(first), N), reduce(flatten(second), N)};
}

template WzRelations wz_relations(const RMatrix<RatFunc>&);
template WzRelations wz_relations(const RMatrix<HPoly>&);

std::vector<FreeQuadRelation> canonical(const std::vector<FreeQuadRelation>& rels) {
  std::vector<Cell> cells;
  for (const auto& r : rels) cells.push_back(r.terms);
  return reduce(cells, std::max(dim_of(rels), 1));
}

namespace {

enum class Var { V, H };

// p(x + x0).
BiPoly translate(const BiPoly& p, Var x, const Rational& x0) {
  if (x0 == 0) return p;
  BiPoly out;
  const BiPoly lin = x == Var::V ? BiPoly::monomial(1, 1, 0) + BiPoly(x0) : BiPoly::monomial(1, 0, 1) + BiPoly(x0);
  for (const auto& [key, c] : p.terms()) {
    const int e = x == Var::V ? key.first : key.second;
    BiPoly term = x == Var::V ? BiPoly::monomial(c, 0, key.second) : BiPoly::monomial(c, key.first, 0);
    for (int k = 0; k < e; ++k) term = term * lin;
    out += term;
  }
  return out;
}

int order(const BiPoly& p, Var x) {
  const auto m = p.min_exponents();
  return x == Var::V ? m.first : m.second;
}

int order(const RatFunc& f, Var x) { return order(f.num(), x) - order(f.den(), x); }

// Value at x = 0 of f / x^order(f), as a function of the other variable.
RatFunc leading_value(const RatFunc& f, Var x) {
  auto at0 = [&](const BiPoly& p) {
    const int k = order(p, x);
    const BiPoly r = x == Var::V ? p.shifted_down(k, 0) : p.shifted_down(0, k);
    return x == Var::V ? BiPoly(r.at_v(0)) : r.at_h(0);
  };
  return RatFunc(at0(f.num()), at0(f.den()));
}

RatFunc power(Var x, int k) { return x == Var::V ? RatFunc::v(k) : RatFunc::h(k); }

// Limit x -> x0 of the span of the given relations. Elimination only divides
// by entries that are units at x0, so the rank survives the substitution.
std::vector<FreeQuadRelation> flat_limit(const std::vector<FreeQuadRelation>& rels, Var x, const Rational& x0) {
  std::vector<Cell> rows;
  for (const auto& r : rels) {
    Cell c;
    for (const auto& [m, f] : r.terms) add_to(c, m, RatFunc(translate(f.num(), x, x0), translate(f.den(), x, x0)));
    if (!c.empty()) rows.push_back(std::move(c));
  }
  auto normalize = [&](Cell& c) {
    int lo = std::numeric_limits<int>::max();
    for (const auto& [m, f] : c) lo = std::min(lo, order(f, x));
    if (lo != 0) {
      const RatFunc s = power(x, -lo);
      for (auto& [m, f] : c) f = f * s;
    }
  };
  for (auto& c : rows) normalize(c);
  std::vector<Cell> limit;
  while (!rows.empty()) {
    Cell pivot_row = std::move(rows.front());
    rows.erase(rows.begin());
    Monomial pivot{};
    for (const auto& [m, f] : pivot_row)
      if (order(f, x) == 0) {
        pivot = m;
        break;
      }
    const RatFunc pv = pivot_row.at(pivot);
    std::vector<Cell> next;
    for (auto& c : rows) {
      auto it = c.find(pivot);
      if (it != c.end()) {
        const RatFunc factor = it->second / pv;
        for (const auto& [m, f] : pivot_row) add_to(c, m, -(factor * f));
      }
      if (c.empty()) continue;
      normalize(c);
      next.push_back(std::move(c));
    }
    rows = std::move(next);
    Cell lv;
    for (const auto& [m, f] : pivot_row)
      if (order(f, x) == 0) add_to(lv, m, leading_value(f, x));
    limit.push_back(std::move(lv));
  }
  return reduce(limit, std::max(dim_of(rels), 1));
}

}  // namespace

std::vector<FreeQuadRelation> specialize_h(const std::vector<FreeQuadRelation>& rels, const Rational& h) {
  return flat_limit(rels, Var::H, h);
}

std::vector<FreeQuadRelation> specialize_v(const std::vector<FreeQuadRelation>& rels, const Rational& v) {
  return flat_limit(rels, Var::V, v);
}

std::vector<FreeQuadRelation> commutator_span(int N) {
  std::vector<Cell> cells;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          Cell cell;
          add_to(cell, {gen(a, b, false), gen(c, d, false)}, RatFunc(1));
          add_to(cell, {gen(c, d, false), gen(a, b, false)}, RatFunc(-1));
          cells.push_back(std::move(cell));
        }
  return reduce(cells, N);
}

std::string to_string(GoldenVariant v) {
  switch (v) {
    case GoldenVariant::R: return "R";
    case GoldenVariant::FlipConjugate: return "PRP";
    case GoldenVariant::None: return "none";
  }
  return "?";
}

GoldenComparison golden_compare(const RMatrix<HPoly>& Rh, const GoldenListing& target) {
  Stopwatch sw;
  GoldenComparison out;
  out.report.check = "golden:" + target.id;
  if (Rh.dim() != target.matrix.dim()) {
    out.report.residuals.push_back("dimension " + std::to_string(Rh.dim()) + " vs listing " +
                                   std::to_string(target.matrix.dim()));
  } else if (Rh == target.matrix) {
    out.matched = GoldenVariant::R;
  } else if (flip_conjugate(Rh) == target.matrix) {
    out.matched = GoldenVariant::FlipConjugate;
  }
  if (Rh.dim() == target.matrix.dim() && out.matched != GoldenVariant::R) {
    const auto diff = Rh.matrix() - target.matrix.matrix();
    bool sign_only = true;
    diff.for_each([&](std::size_t r, std::size_t c, const HPoly&) {
      auto [i, j] = Rh.split(r);
      auto [k, l] = Rh.split(c);
      std::string label = "R_" + std::to_string(i) + std::to_string(j) + std::to_string(k) + std::to_string(l);
      const HPoly computed = Rh.matrix().get(r, c), listed = target.matrix.matrix().get(r, c);
      out.differences.push_back({label, computed.to_string(), listed.to_string()});
      if (!(computed == -listed)) sign_only = false;
    });
    out.sign_only = sign_only && !out.differences.empty();
    if (out.matched == GoldenVariant::None)
      for (const auto& [label, computed, listed] : out.differences)
        out.report.residuals.push_back(label + ": computed " + computed + ", listed " + listed);
  }
  out.report.notes.push_back("matched variant: " + to_string(out.matched));
  out.report.pass = out.matched != GoldenVariant::None;
  out.report.residual_total = out.report.residuals.size();
  out.report.elapsed_ms = sw.ms();
  return out;
}

}  // namespace hdeform
