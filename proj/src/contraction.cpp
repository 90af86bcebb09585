#include "hdeform/contraction.hpp"

#include <algorithm>

#include "hdeform/errors.hpp"

namespace hdeform {

RatFunc singular_entry() { return RatFunc::h() / (RatFunc::q() - RatFunc(1)); }

ContractionMap::ContractionMap(int N)
    : n_(N), g_(SparseMatrix<RatFunc>::identity(static_cast<std::size_t>(N))) {
  if (N < 2) throw std::invalid_argument("contraction map needs N >= 2");
}

ContractionMap::ContractionMap(int N, SparseMatrix<RatFunc> g) : n_(N), g_(std::move(g)) {
  if (N < 2) throw std::invalid_argument("contraction map needs N >= 2");
  validate();
}

void ContractionMap::validate() const {
  if (g_.rows() != static_cast<std::size_t>(n_) || g_.cols() != g_.rows())
    throw std::invalid_argument("contraction map has wrong shape");
  for (std::size_t i = 0; i < g_.rows(); ++i) {
    if (!(g_.get(i, i) == RatFunc(1))) throw std::invalid_argument("contraction map must have unit diagonal");
    for (const auto& [c, v] : g_.row(i))
      if (c < i) throw std::invalid_argument("contraction map must be upper triangular");
  }
}

void ContractionMap::set(int i, int j, RatFunc v) {
  if (i >= j) throw std::invalid_argument("only strictly upper entries of a contraction map are free");
  g_.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), std::move(v));
}

ContractionMap ContractionMap::operator*(const ContractionMap& o) const {
  if (n_ != o.n_) throw std::invalid_argument("contraction map dimension mismatch");
  return ContractionMap(n_, g_ * o.g_);
}

Gl3Map parse_gl3_map(std::string_view s) {
  if (s == "g1") return Gl3Map::G1;
  if (s == "g2") return Gl3Map::G2;
  if (s == "g3") return Gl3Map::G3;
  throw ParseError("unknown GL(3) map: " + std::string(s));
}

std::string to_string(Gl3Map m) {
  switch (m) {
    case Gl3Map::G1: return "g1";
    case Gl3Map::G2: return "g2";
    case Gl3Map::G3: return "g3";
  }
  return "?";
}

ContractionMap gl3_family(Gl3Map which, const RatFunc& s, const RatFunc& p1, const RatFunc& p2) {
  ContractionMap g(3);
  switch (which) {
    case Gl3Map::G1:
      g.set(1, 2, s);
      g.set(1, 3, p1);
      break;
    case Gl3Map::G2:
      g.set(1, 2, p1);
      g.set(1, 3, p2);
      g.set(2, 3, s);
      break;
    case Gl3Map::G3:
      g.set(1, 2, p1);
      g.set(1, 3, s);
      g.set(2, 3, p2);
      break;
  }
  return g;
}

ContractionMap gl3_map(Gl3Map which, const Rational& p1, const Rational& p2) {
  return gl3_family(which, singular_entry(), RatFunc(p1), RatFunc(p2));
}

ContractionMap standard_g(int N) {
  ContractionMap g(N);
  g.set(1, N, singular_entry());
  return g;
}

ContractionSingular::ContractionSingular(std::vector<SingularEntry> entries)
    : std::runtime_error([&] {
        std::string msg = "contraction is singular at q=1:";
        for (std::size_t i = 0; i < entries.size() && i < 5; ++i)
          msg += " " + entries[i].label + " (order " + std::to_string(entries[i].order) + ")";
        if (entries.size() > 5) msg += " ...";
        return msg;
      }()),
      entries_(std::move(entries)) {}

int ContractionSingular::worst_order() const {
  int worst = 0;
  for (const auto& e : entries_) worst = std::min(worst, e.order);
  return worst;
}

namespace {

std::string r_label(int N, std::size_t row, std::size_t col) {
  auto n = static_cast<std::size_t>(N);
  return "R_" + std::to_string(row / n + 1) + std::to_string(row % n + 1) + std::to_string(col / n + 1) +
         std::to_string(col % n + 1);
}

std::string c_label(std::size_t row, std::size_t col) {
  return "C_" + std::to_string(row + 1) + std::to_string(col + 1);
}

// Entrywise limit; returns the poles instead of throwing.
template <class Label>
std::pair<std::optional<SparseMatrix<HPoly>>, std::vector<SingularEntry>> limit_matrix(
    const SparseMatrix<RatFunc>& m, Label label) {
  SparseMatrix<HPoly> out(m.rows(), m.cols());
  std::vector<SingularEntry> bad;
  m.for_each([&](std::size_t r, std::size_t c, const RatFunc& v) {
    const int order = order_at_q1(v);
    if (order < 0) {
      bad.push_back({r, c, order, v.to_string(), label(r, c)});
      return;
    }
    out.set(r, c, limit_q1(v));
  });
  if (!bad.empty()) return {std::nullopt, std::move(bad)};
  return {std::move(out), {}};
}

}  // namespace

ContractionResult try_contract_r(const RMatrix<RatFunc>& R, const ContractionMap& g) {
  if (R.dim() != g.dim()) throw std::invalid_argument("R-matrix and contraction map dimensions differ");
  const int N = R.dim();
  ContractionResult res{similarity(R, g.matrix(), g.inverse_matrix()), std::nullopt, {}};
  auto [lim, bad] =
      limit_matrix(res.prelimit.matrix(), [N](std::size_t r, std::size_t c) { return r_label(N, r, c); });
  if (lim) res.limit = RMatrix<HPoly>(N, std::move(*lim));
  res.singular = std::move(bad);
  return res;
}

RMatrix<HPoly> contract_r(const RMatrix<RatFunc>& R, const ContractionMap& g) {
  ContractionResult res = try_contract_r(R, g);
  if (!res.ok()) throw ContractionSingular(std::move(res.singular));
  return std::move(*res.limit);
}

SparseMatrix<RatFunc> q_bilinear_form(const SeriesSpec& spec) {
  if (spec.family() == Family::A) throw std::invalid_argument("no invariant form for the A series");
  const int N = spec.dim();
  SparseMatrix<RatFunc> c(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    // q^{-rho_i} = v^{-2 rho_i}
    RatFunc entry = RatFunc(spec.epsilon(i)) * RatFunc::v(-spec.twice_rho(i));
    c.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(spec.mirror(i) - 1), entry);
  }
  return c;
}

FormResult try_contract_form(const ContractionMap& g, const SeriesSpec& spec) {
  if (g.dim() != spec.dim()) throw std::invalid_argument("form and contraction map dimensions differ");
  FormResult res{g.matrix().transpose() * q_bilinear_form(spec) * g.matrix(), std::nullopt, {}};
  auto [lim, bad] = limit_matrix(res.prelimit, c_label);
  res.limit = std::move(lim);
  res.singular = std::move(bad);
  return res;
}

BilinearForm contract_form(const ContractionMap& g, const SeriesSpec& spec) {
  FormResult res = try_contract_form(g, spec);
  if (!res.ok()) throw ContractionSingular(std::move(res.singular));
  return std::move(*res.limit);
}

namespace {

void compare_maps(VerificationReport& rep, const std::string& what, const ContractionMap& lhs,
                  const ContractionMap& rhs) {
  for (int i = 1; i <= lhs.dim(); ++i)
    for (int j = 1; j <= lhs.dim(); ++j)
      if (!(lhs.at(i, j) == rhs.at(i, j)))
        rep.residuals.push_back(what + ": entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                lhs.at(i, j).to_string() + ", expected " + rhs.at(i, j).to_string());
}

}  // namespace

VerificationReport check_map_identities() {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "map-identities";
  const RatFunc s = singular_entry();
  const std::vector<std::pair<Rational, Rational>> params = {
      {5, 0}, {make_rational(-3, 2), make_rational(7, 3)}, {1, 2}, {make_rational(-2, 3), 7}};
  for (const auto& [a, b] : params) {
    const RatFunc x(a), y(b);
    const std::string tag = "(" + to_string(a) + "," + to_string(b) + ")";
    compare_maps(rep, "g1" + tag, gl3_family(Gl3Map::G1, s, x) * gl3_family(Gl3Map::G1, 0, -x),
                 gl3_family(Gl3Map::G1, s, 0));
    compare_maps(rep, "g2" + tag, gl3_family(Gl3Map::G2, s, x, y) * gl3_family(Gl3Map::G2, 0, -x, -y),
                 gl3_family(Gl3Map::G2, s, 0, 0));
    compare_maps(rep, "g3" + tag, gl3_family(Gl3Map::G3, s, x, y) * gl3_family(Gl3Map::G3, x * y, -x, -y),
                 gl3_family(Gl3Map::G3, s, 0, 0));
    compare_maps(rep, "g1(0)" + tag, gl3_family(Gl3Map::G1, 0, x) * gl3_family(Gl3Map::G1, 0, -x),
                 ContractionMap(3));
  }
  rep.pass = rep.residuals.empty();
  rep.residual_total = rep.residuals.size();
  rep.elapsed_ms = sw.ms();
  return rep;
}

SparseMatrix<HPoly> cycle_s() {
  SparseMatrix<HPoly> s(3, 3);
  s.set(0, 2, 1);
  s.set(1, 0, 1);
  s.set(2, 1, 1);
  return s;
}

VerificationReport check_equivalence_s() {
  Stopwatch sw;
  VerificationReport rep;
  rep.check = "equivalence-s";
  const auto R = build_r_A(3);
  const RMatrix<HPoly> r1 = contract_r(R, gl3_map(Gl3Map::G1));
  const RMatrix<HPoly> r2 = contract_r(R, gl3_map(Gl3Map::G2));
  const SparseMatrix<HPoly> s = cycle_s();
  // s is a permutation matrix, so its inverse is its transpose.
  const RMatrix<HPoly> conj = similarity(r2, s, s.transpose());
  const auto diff = conj.matrix() - r1.matrix();
  diff.for_each([&](std::size_t r, std::size_t c, const HPoly& v) {
    rep.residuals.push_back(r_label(3, r, c) + ": difference " + v.to_string());
  });
  if (!(s * s * s).is_identity()) rep.residuals.push_back("s^3 is not the identity");
  rep.pass = rep.residuals.empty();
  rep.residual_total = rep.residuals.size();
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace hdeform
