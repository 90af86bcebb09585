#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdeform/ratfunc.hpp"
#include "hdeform/report.hpp"
#include "hdeform/rmatrix.hpp"
#include "hdeform/scalar.hpp"
#include "hdeform/sparse.hpp"

namespace hdeform {

/// Generator of the quantum matrix algebra: M_ab, or dM_ab when differential.
struct Generator {
  int row = 0;
  int col = 0;
  bool differential = false;

  auto operator<=>(const Generator&) const = default;
  std::string to_string() const;
};

/// sum c * X Y over ordered pairs of generators.
struct FreeQuadRelation {
  std::map<std::pair<Generator, Generator>, RatFunc> terms;
  std::string to_string() const;
  friend bool operator==(const FreeQuadRelation&, const FreeQuadRelation&) = default;
};

struct ReportOptions {
  bool full_residuals = false;
  std::size_t residual_limit = 20;
};

/// R12 R13 R23 - R23 R13 R12 on V^(x)3.
template <Scalar S>
VerificationReport check_ybe(const RMatrix<S>& R, const ReportOptions& opts = {});
/// (R^ - q)(R^ + q^-1) = 0.
VerificationReport check_hecke(const RMatrix<RatFunc>& R, const ReportOptions& opts = {});
/// R^ R^ = 1.
template <Scalar S>
VerificationReport check_involutive(const RMatrix<S>& R, const ReportOptions& opts = {});

/// Independent generating set of R M1 M2 - M2 M1 R, canonical echelon order
/// (monomials M_ab M_cd ordered lexicographically by (a,b,c,d)).
template <Scalar S>
std::vector<FreeQuadRelation> rtt_relations(const RMatrix<S>& R);

struct WzRelations {
  std::vector<FreeQuadRelation> mixed;         // M2 dM1 - R12 dM1 M2 R21
  std::vector<FreeQuadRelation> differential;  // dM2 dM1 + R12 dM1 dM2 R21
};

template <Scalar S>
WzRelations wz_relations(const RMatrix<S>& R);

/// Limit of the relation span as h -> the given value (same dimension).
/// Plain substitution into an echelon basis can hit poles; this cannot.
std::vector<FreeQuadRelation> specialize_h(const std::vector<FreeQuadRelation>& rels, const Rational& h);
/// Same, for v -> value (q = v^2).
std::vector<FreeQuadRelation> specialize_v(const std::vector<FreeQuadRelation>& rels, const Rational& v);
/// Canonical echelon form of an arbitrary list.
std::vector<FreeQuadRelation> canonical(const std::vector<FreeQuadRelation>& rels);

/// Commutators X Y - Y X over the given generators (as an echelon basis).
std::vector<FreeQuadRelation> commutator_span(int N);

struct GoldenListing {
  std::string id;
  std::string description;
  RMatrix<HPoly> matrix;
};

/// Reads data/golden/<id>.json (or the given directory).
GoldenListing load_golden(const std::string& id, const std::string& dir = HDEFORM_GOLDEN_DIR);

/// Bilinear-form listing (row/col/value entries).
SparseMatrix<HPoly> load_golden_form(const std::string& id, const std::string& dir = HDEFORM_GOLDEN_DIR);

enum class GoldenVariant { R, FlipConjugate, None };
std::string to_string(GoldenVariant v);

struct GoldenComparison {
  VerificationReport report;
  GoldenVariant matched = GoldenVariant::None;
  /// Entries where R differs from the listing: (label, computed, listed).
  std::vector<std::array<std::string, 3>> differences;
  /// Every difference is a pure sign flip (computed == -listed).
  bool sign_only = false;
};

/// Compares R and P R P against a published listing.
GoldenComparison golden_compare(const RMatrix<HPoly>& Rh, const GoldenListing& target);

}  // namespace hdeform
