#include "hdeform/qplane.hpp"

#include <algorithm>

#include "hdeform/errors.hpp"

namespace hdeform {

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Plane: return "plane";
    case RelationKind::Dual: return "dual";
    case RelationKind::Symplectic: return "symplectic";
  }
  return "?";
}

RelationKind parse_relation_kind(std::string_view s) {
  if (s == "plane") return RelationKind::Plane;
  if (s == "dual") return RelationKind::Dual;
  if (s == "symplectic") return RelationKind::Symplectic;
  throw ParseError("unknown relation kind: " + std::string(s));
}

RelationSet<RatFunc> manin_plane(int N) {
  if (N < 2) throw std::invalid_argument("quantum plane needs N >= 2");
  RelationSet<RatFunc> rels{N, RelationKind::Plane, {}};
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) {
      QuadExpr<RatFunc> e(N);
      e.add(i, j, 1);
      e.add(j, i, -RatFunc::q());
      rels.basis.push_back(std::move(e));
    }
  return rels;
}

RelationSet<RatFunc> dual_plane(int N) {
  if (N < 2) throw std::invalid_argument("quantum plane needs N >= 2");
  RelationSet<RatFunc> rels{N, RelationKind::Dual, {}};
  for (int i = 1; i <= N; ++i) {
    QuadExpr<RatFunc> sq(N);
    sq.add(i, i, 1);
    rels.basis.push_back(std::move(sq));
  }
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) {
      QuadExpr<RatFunc> e(N);
      e.add(i, j, 1);
      e.add(j, i, RatFunc::q(-1));
      rels.basis.push_back(std::move(e));
    }
  return rels;
}

RelationSet<RatFunc> symplectic_space(const SeriesSpec& spec) {
  if (spec.family() != Family::C) throw std::invalid_argument("symplectic space needs the C series");
  const int N = spec.dim();
  const auto op = rhat(build_r_BCD(spec)).matrix() -
                  SparseMatrix<RatFunc>::identity(static_cast<std::size_t>(N * N)).scaled(RatFunc::q());
  return row_space(op, N, RelationKind::Symplectic);
}

RelationSingular::RelationSingular(std::vector<RelationSingularEntry> entries)
    : std::runtime_error([&] {
        std::string msg = "relation set is singular at q=1:";
        for (std::size_t i = 0; i < entries.size() && i < 5; ++i)
          msg += " relation " + std::to_string(entries[i].relation + 1) + " coefficient of x_" +
                 std::to_string(entries[i].pair.first) + "x_" + std::to_string(entries[i].pair.second) +
                 " (order " + std::to_string(entries[i].order) + ")";
        return msg;
      }()),
      entries_(std::move(entries)) {}

TransformResult try_transform_relations(const RelationSet<RatFunc>& rels, const ContractionMap& g) {
  if (rels.dim != g.dim()) throw std::invalid_argument("relation set and map dimensions differ");
  const int N = rels.dim;
  RelationSet<RatFunc> moved{N, rels.kind, {}};
  for (const auto& e : rels.basis) {
    QuadExpr<RatFunc> t(N);
    for (const auto& [ab, c] : e.coeffs) {
      const auto& ra = g.matrix().row(static_cast<std::size_t>(ab.first - 1));
      const auto& rb = g.matrix().row(static_cast<std::size_t>(ab.second - 1));
      for (const auto& [cc, ga] : ra)
        for (const auto& [dd, gb] : rb) t.add(static_cast<int>(cc) + 1, static_cast<int>(dd) + 1, c * ga * gb);
    }
    moved.basis.push_back(std::move(t));
  }
  TransformResult res{echelon(moved), std::nullopt, {}};
  RelationSet<HPoly> lim{N, rels.kind, {}};
  for (std::size_t k = 0; k < res.prelimit.basis.size(); ++k) {
    QuadExpr<HPoly> e(N);
    for (const auto& [ab, c] : res.prelimit.basis[k].coeffs) {
      const int order = order_at_q1(c);
      if (order < 0) {
        res.singular.push_back({k, ab, order, c.to_string()});
        continue;
      }
      e.add(ab.first, ab.second, limit_q1(c));
    }
    lim.basis.push_back(std::move(e));
  }
  if (res.singular.empty()) res.limit = std::move(lim);
  return res;
}

RelationSet<HPoly> transform_relations(const RelationSet<RatFunc>& rels, const ContractionMap& g) {
  TransformResult res = try_transform_relations(rels, g);
  if (!res.ok()) throw RelationSingular(std::move(res.singular));
  return std::move(*res.limit);
}

QuadExpr<HPoly> quadratic_form_expr(const SparseMatrix<HPoly>& C) {
  QuadExpr<HPoly> e(static_cast<int>(C.rows()));
  C.for_each([&](std::size_t r, std::size_t c, const HPoly& v) {
    e.add(static_cast<int>(r) + 1, static_cast<int>(c) + 1, v);
  });
  return e;
}

QuadExpr<HPoly> reduce_quadratic(const QuadExpr<HPoly>& e, const RelationSet<HPoly>& rels) {
  if (e.dim != rels.dim) throw std::invalid_argument("expression and relation set dimensions differ");
  const int N = rels.dim;
  const std::size_t block = static_cast<std::size_t>(N * N);
  // Column rank: out-of-order monomials first, then squares, then ordered.
  auto column = [&](int a, int b) {
    const std::size_t group = a > b ? 0 : (a == b ? 1 : 2);
    return group * block + static_cast<std::size_t>((a - 1) * N + (b - 1));
  };
  auto monomial = [&](std::size_t col) {
    const auto local = static_cast<int>(col % block);
    return std::pair{local / N + 1, local % N + 1};
  };
  std::vector<std::map<std::size_t, RatFunc>> rows;
  for (const auto& r : rels.basis) {
    std::map<std::size_t, RatFunc> row;
    for (const auto& [ab, c] : r.coeffs) row.emplace(column(ab.first, ab.second), lift(c));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  Echelon<RatFunc> ech = rref(rows);
  std::map<std::size_t, const std::map<std::size_t, RatFunc>*> by_pivot;
  for (std::size_t k = 0; k < ech.rows.size(); ++k) {
    if (ech.pivots[k] >= 2 * block) {
      auto [a, b] = monomial(ech.pivots[k]);
      throw NonSolvable("relation can only be solved for the ordered monomial x_" + std::to_string(a) + "x_" +
                        std::to_string(b));
    }
    by_pivot.emplace(ech.pivots[k], &ech.rows[k]);
  }
  std::map<std::size_t, RatFunc> acc;
  for (const auto& [ab, c] : e.coeffs) acc.emplace(column(ab.first, ab.second), lift(c));
  for (auto it = acc.begin(); it != acc.end();) {
    auto p = by_pivot.find(it->first);
    if (p == by_pivot.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const RatFunc factor = it->second;
    for (const auto& [c, v] : *p->second) {
      auto [slot, inserted] = acc.emplace(c, -(factor * v));
      if (!inserted) {
        slot->second -= factor * v;
        if (slot->second.is_zero()) acc.erase(slot);
      }
    }
    it = acc.upper_bound(col);
  }
  QuadExpr<HPoly> out(N);
  for (const auto& [col, v] : acc) {
    auto p = v.as_hpoly();
    if (!p) throw NonSolvable("normal form leaves the polynomial ring: " + v.to_string());
    auto [a, b] = monomial(col);
    out.add(a, b, *p);
  }
  return out;
}

namespace {

std::string monomial_text(const std::string& sym, int a, int b) {
  if (a == b) return sym + "_" + std::to_string(a) + "²";
  return sym + "_" + std::to_string(a) + sym + "_" + std::to_string(b);
}

bool is_single_factor(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == ' ' || s[i] == '/') return false;
  return true;
}

template <Scalar S>
std::string sum_text(const std::vector<std::pair<S, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [c, mono] = terms[k];
    std::string cs = c.to_string();
    bool negative = false;
    if (!cs.empty() && cs[0] == '-' && is_single_factor(cs)) {
      negative = true;
      cs = cs.substr(1);
    }
    std::string body;
    if (cs == "1") {
      body = mono;
    } else {
      body = (is_single_factor(cs) ? cs : "(" + cs + ")") + " " + mono;
    }
    if (k == 0) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace

template <Scalar S>
std::string format_relations(const RelationSet<S>& rels) {
  const std::string sym = rels.kind == RelationKind::Dual ? "η" : "x";
  const RelationSet<RatFunc> ech = echelon(rels);
  std::string out;
  for (const auto& e : ech.basis) {
    const auto [a, b] = e.coeffs.begin()->first;  // pivot, coefficient 1
    std::vector<std::pair<RatFunc, std::string>> rest;
    std::string lhs;
    if (a == b) {
      lhs = monomial_text(sym, a, a);
    } else if (a < b && e.coeff(b, a) == RatFunc(-1)) {
      lhs = "[" + sym + "_" + std::to_string(a) + "," + sym + "_" + std::to_string(b) + "]";
    } else if (a < b && e.coeff(b, a) == RatFunc(1)) {
      lhs = "{" + sym + "_" + std::to_string(a) + "," + sym + "_" + std::to_string(b) + "}";
    }
    if (lhs.empty()) {
      std::vector<std::pair<RatFunc, std::string>> all;
      for (const auto& [ab, c] : e.coeffs) all.emplace_back(c, monomial_text(sym, ab.first, ab.second));
      out += sum_text(all) + " = 0\n";
      continue;
    }
    for (const auto& [ab, c] : e.coeffs) {
      if (ab == std::pair{a, b} || (a != b && ab == std::pair{b, a})) continue;
      rest.emplace_back(-c, monomial_text(sym, ab.first, ab.second));
    }
    out += lhs + " = " + sum_text(rest) + "\n";
  }
  return out;
}

template std::string format_relations(const RelationSet<RatFunc>&);
template std::string format_relations(const RelationSet<HPoly>&);

std::string PatternOutcome::name() const {
  static const char* names[] = {"alpha", "beta", "gamma"};
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (!singular[k]) continue;
    if (!out.empty()) out += "+";
    out += names[k];
  }
  return out.empty() ? "none" : out;
}

AdmissibilityReport admissibility_scan_gl3() {
  Stopwatch sw;
  AdmissibilityReport rep;
  rep.summary.check = "scan-gl3";
  static const char* names[] = {"alpha", "beta", "gamma"};
  const std::array<Rational, 3> generic = {2, 3, 5};
  const auto plane = manin_plane(3);
  const auto dual = dual_plane(3);
  for (int mask = 0; mask < 8; ++mask) {
    PatternOutcome po;
    for (int k = 0; k < 3; ++k) po.singular[k] = (mask >> k) & 1;
    // Each finite slot is tried at zero and at a fixed nonzero value.
    std::vector<int> finite;
    for (int k = 0; k < 3; ++k)
      if (!po.singular[k]) finite.push_back(k);
    for (int sub = 0; sub < (1 << finite.size()); ++sub) {
      std::array<RatFunc, 3> slot;
      std::string label;
      for (int k = 0; k < 3; ++k) slot[k] = po.singular[k] ? singular_entry() : RatFunc();
      for (std::size_t f = 0; f < finite.size(); ++f) {
        const int k = finite[f];
        const bool nonzero = (sub >> f) & 1;
        if (nonzero) slot[k] = RatFunc(generic[k]);
        if (!label.empty()) label += ",";
        label += std::string(names[k]) + "=" + (nonzero ? to_string(generic[k]) : "0");
      }
      if (label.empty()) label = "-";
      ContractionMap g(3);
      g.set(1, 2, slot[0]);
      g.set(1, 3, slot[1]);
      g.set(2, 3, slot[2]);
      const bool ok = try_transform_relations(plane, g).ok() && try_transform_relations(dual, g).ok();
      (ok ? po.admissible_assignments : po.rejected_assignments).push_back(label);
    }
    po.admissible = !po.admissible_assignments.empty();
    rep.patterns.push_back(std::move(po));
  }

  // Expected: exactly one singular slot, at (1,2), (2,3) or (1,3). For the
  // (1,2) slot the (2,3) entry has to vanish; the other two families keep
  // both finite parameters free.
  for (const auto& po : rep.patterns) {
    const int count = po.singular[0] + po.singular[1] + po.singular[2];
    const bool expected = count <= 1;
    if (po.admissible != expected) {
      rep.summary.residuals.push_back("pattern " + po.name() + (po.admissible ? " admissible" : " inadmissible") +
                                      ", expected the opposite");
      continue;
    }
    if (count == 1 && po.singular[0]) {
      for (const auto& a : po.admissible_assignments)
        if (a.find("gamma=0") == std::string::npos)
          rep.summary.residuals.push_back("pattern alpha admits " + a + " with nonzero gamma");
      if (po.admissible_assignments.size() != 2)
        rep.summary.residuals.push_back("pattern alpha: beta should stay free");
    } else if (count == 1 && po.rejected_assignments.size() != 0) {
      rep.summary.residuals.push_back("pattern " + po.name() + " rejects finite assignment " +
                                      po.rejected_assignments.front());
    }
    rep.summary.notes.push_back(po.name() + ": " + (po.admissible ? "admissible" : "inadmissible"));
  }
  rep.summary.pass = rep.summary.residuals.empty();
  rep.summary.residual_total = rep.summary.residuals.size();
  rep.summary.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace hdeform
