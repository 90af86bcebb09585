#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdeform/contraction.hpp"
#include "hdeform/ratfunc.hpp"
#include "hdeform/report.hpp"
#include "hdeform/rmatrix.hpp"
#include "hdeform/scalar.hpp"
#include "hdeform/sparse.hpp"

namespace hdeform {

/// sum c_ab x_a x_b in the free algebra on x_1..x_N (order matters).
template <Scalar S>
struct QuadExpr {
  int dim = 0;
  std::map<std::pair<int, int>, S> coeffs;

  QuadExpr() = default;
  explicit QuadExpr(int N) : dim(N) {}

  void add(int a, int b, const S& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(std::pair{a, b}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
  S coeff(int a, int b) const {
    auto it = coeffs.find({a, b});
    return it == coeffs.end() ? S{} : it->second;
  }
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const QuadExpr& x, const QuadExpr& y) { return x.dim == y.dim && x.coeffs == y.coeffs; }
};

enum class RelationKind { Plane, Dual, Symplectic };

std::string to_string(RelationKind k);
RelationKind parse_relation_kind(std::string_view s);

template <Scalar S>
struct RelationSet {
  int dim = 0;
  RelationKind kind = RelationKind::Plane;
  std::vector<QuadExpr<S>> basis;
};

/// x_i x_j - q x_j x_i, i < j.
RelationSet<RatFunc> manin_plane(int N);
/// eta_i^2 and eta_i eta_j + q^-1 eta_j eta_i, i < j.
RelationSet<RatFunc> dual_plane(int N);
/// Rows of (P R'_q - q) for the symplectic series, row-reduced.
RelationSet<RatFunc> symplectic_space(const SeriesSpec& spec);
/// Relations given by the rows of an N^2 x N^2 operator.
template <Scalar S>
RelationSet<RatFunc> row_space(const SparseMatrix<S>& op, int N, RelationKind kind);

namespace detail {

template <Scalar S>
std::map<std::size_t, RatFunc> to_row(const QuadExpr<S>& e) {
  std::map<std::size_t, RatFunc> row;
  for (const auto& [ab, c] : e.coeffs)
    row.emplace(static_cast<std::size_t>((ab.first - 1) * e.dim + (ab.second - 1)), lift(c));
  return row;
}

inline QuadExpr<RatFunc> from_row(const std::map<std::size_t, RatFunc>& row, int N) {
  QuadExpr<RatFunc> e(N);
  for (const auto& [c, v] : row) e.add(static_cast<int>(c) / N + 1, static_cast<int>(c) % N + 1, v);
  return e;
}

}  // namespace detail

/// Canonical reduced echelon basis (lexicographic pair order, pivots 1).
template <Scalar S>
RelationSet<RatFunc> echelon(const RelationSet<S>& rels) {
  std::vector<std::map<std::size_t, RatFunc>> rows;
  for (const auto& e : rels.basis)
    if (!e.is_zero()) rows.push_back(detail::to_row(e));
  RelationSet<RatFunc> out{rels.dim, rels.kind, {}};
  for (const auto& r : rref(rows).rows) out.basis.push_back(detail::from_row(r, rels.dim));
  return out;
}

template <Scalar S>
RelationSet<RatFunc> row_space(const SparseMatrix<S>& op, int N, RelationKind kind) {
  RelationSet<RatFunc> rels{N, kind, {}};
  for (std::size_t r = 0; r < op.rows(); ++r) {
    QuadExpr<RatFunc> e(N);
    for (const auto& [c, v] : op.row(r)) e.add(static_cast<int>(c) / N + 1, static_cast<int>(c) % N + 1, lift(v));
    rels.basis.push_back(std::move(e));
  }
  return echelon(rels);
}

/// Span equality via canonical echelon forms.
template <Scalar S, Scalar T>
bool same_span(const RelationSet<S>& a, const RelationSet<T>& b) {
  if (a.dim != b.dim) return false;
  auto ea = echelon(a), eb = echelon(b);
  return ea.basis == eb.basis;
}

/// Whether e lies in the span of rels.
template <Scalar S, Scalar T>
bool in_span(const QuadExpr<S>& e, const RelationSet<T>& rels) {
  RelationSet<RatFunc> ext = echelon(rels);
  const std::size_t rank = ext.basis.size();
  QuadExpr<RatFunc> lifted(e.dim);
  for (const auto& [ab, c] : e.coeffs) lifted.add(ab.first, ab.second, lift(c));
  ext.basis.push_back(lifted);
  return echelon(ext).basis.size() == rank;
}

struct RelationSingularEntry {
  std::size_t relation;  // index into the echelon basis
  std::pair<int, int> pair;
  int order;
  std::string value;
};

class RelationSingular : public std::runtime_error {
 public:
  explicit RelationSingular(std::vector<RelationSingularEntry> entries);
  const std::vector<RelationSingularEntry>& entries() const { return entries_; }

 private:
  std::vector<RelationSingularEntry> entries_;
};

class NonSolvable : public std::runtime_error {
 public:
  explicit NonSolvable(const std::string& what) : std::runtime_error(what) {}
};

struct TransformResult {
  RelationSet<RatFunc> prelimit;  // echelon form over the function field
  std::optional<RelationSet<HPoly>> limit;
  std::vector<RelationSingularEntry> singular;
  bool ok() const { return limit.has_value(); }
};

/// Substitutes x'_a = sum_b g_ab x_b, row-reduces, then takes q -> 1.
TransformResult try_transform_relations(const RelationSet<RatFunc>& rels, const ContractionMap& g);
/// Throws RelationSingular when an echelon coefficient has a pole at q=1.
RelationSet<HPoly> transform_relations(const RelationSet<RatFunc>& rels, const ContractionMap& g);

/// x^t C x.
QuadExpr<HPoly> quadratic_form_expr(const SparseMatrix<HPoly>& C);

/// Normal form modulo the relation span. Normal order is ascending index;
/// out-of-order monomials are eliminated first, then squares. Throws
/// NonSolvable if some relation can only be solved for an ordered monomial.
QuadExpr<HPoly> reduce_quadratic(const QuadExpr<HPoly>& e, const RelationSet<HPoly>& rels);

/// One line per relation in canonical echelon order.
template <Scalar S>
std::string format_relations(const RelationSet<S>& rels);

struct PatternOutcome {
  std::array<bool, 3> singular{};  // alpha, beta, gamma
  bool admissible = false;
  std::vector<std::string> admissible_assignments;
  std::vector<std::string> rejected_assignments;
  std::string name() const;
};

struct AdmissibilityReport {
  std::vector<PatternOutcome> patterns;
  VerificationReport summary;
};

/// Tries every singular/finite pattern of (alpha, beta, gamma) on the
/// GL(3) plane and its dual.
AdmissibilityReport admissibility_scan_gl3();

}  // namespace hdeform
