#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdeform/ratfunc.hpp"
#include "hdeform/report.hpp"
#include "hdeform/rmatrix.hpp"
#include "hdeform/sparse.hpp"

namespace hdeform {

/// The singular entry h/(q-1).
RatFunc singular_entry();

/// Unit upper-triangular N x N map g over RatFunc (x' = g x).
class ContractionMap {
 public:
  explicit ContractionMap(int N);
  ContractionMap(int N, SparseMatrix<RatFunc> g);

  int dim() const { return n_; }
  const SparseMatrix<RatFunc>& matrix() const { return g_; }
  /// 1-based accessors.
  RatFunc at(int i, int j) const { return g_.get(i - 1, j - 1); }
  void set(int i, int j, RatFunc v);

  SparseMatrix<RatFunc> inverse_matrix() const { return unitriangular_inverse(g_); }
  ContractionMap operator*(const ContractionMap& o) const;
  friend bool operator==(const ContractionMap& a, const ContractionMap& b) {
    return a.n_ == b.n_ && a.g_ == b.g_;
  }

 private:
  void validate() const;
  int n_;
  SparseMatrix<RatFunc> g_;
};

enum class Gl3Map { G1, G2, G3 };

Gl3Map parse_gl3_map(std::string_view s);
std::string to_string(Gl3Map m);

/// The three-parameter GL(3) maps, with every slot supplied explicitly:
///   g1(s, beta)         = I + s e12 + beta e13
///   g2(s, alpha, beta)  = I + alpha e12 + beta e13 + s e23
///   g3(s, alpha, gamma) = I + alpha e12 + s e13 + gamma e23
/// For g1 the second parameter is ignored.
ContractionMap gl3_family(Gl3Map which, const RatFunc& s, const RatFunc& p1, const RatFunc& p2 = {});
/// g1(h/(q-1), beta), g2(h/(q-1), alpha, beta), g3(h/(q-1), alpha, gamma).
ContractionMap gl3_map(Gl3Map which, const Rational& p1 = 0, const Rational& p2 = 0);
/// I + (h/(q-1)) e_1N.
ContractionMap standard_g(int N);

struct SingularEntry {
  std::size_t row;  // flat indices
  std::size_t col;
  int order;
  std::string value;
  std::string label;  // human-readable position
};

/// Carries every offending entry, sorted by position.
class ContractionSingular : public std::runtime_error {
 public:
  explicit ContractionSingular(std::vector<SingularEntry> entries);
  const std::vector<SingularEntry>& entries() const { return entries_; }
  int worst_order() const;

 private:
  std::vector<SingularEntry> entries_;
};

struct ContractionResult {
  RMatrix<RatFunc> prelimit;
  std::optional<RMatrix<HPoly>> limit;
  std::vector<SingularEntry> singular;
  bool ok() const { return limit.has_value(); }
};

/// (g (x) g)^-1 R (g (x) g), exactly, followed by the entrywise q -> 1 limit.
ContractionResult try_contract_r(const RMatrix<RatFunc>& R, const ContractionMap& g);
/// Throws ContractionSingular on a pole.
RMatrix<HPoly> contract_r(const RMatrix<RatFunc>& R, const ContractionMap& g);

using BilinearForm = SparseMatrix<HPoly>;

/// C' = sum_i eps_i q^{-rho_i} e_{i i'}.
SparseMatrix<RatFunc> q_bilinear_form(const SeriesSpec& spec);

struct FormResult {
  SparseMatrix<RatFunc> prelimit;
  std::optional<BilinearForm> limit;
  std::vector<SingularEntry> singular;
  bool ok() const { return limit.has_value(); }
};

/// lim g^t C' g. Non-C families come back singular.
FormResult try_contract_form(const ContractionMap& g, const SeriesSpec& spec);
/// Throws ContractionSingular on a pole.
BilinearForm contract_form(const ContractionMap& g, const SeriesSpec& spec);

/// Products of the GL(3) maps that remove the finite parameters.
VerificationReport check_map_identities();
/// (s (x) s)^-1 R(g2) (s (x) s) = R(g1) with s = e13 + e21 + e32.
VerificationReport check_equivalence_s();

/// The 3-cycle s = e13 + e21 + e32.
SparseMatrix<HPoly> cycle_s();

}  // namespace hdeform
