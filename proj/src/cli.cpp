#include "hdeform/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "hdeform/contraction.hpp"
#include "hdeform/errors.hpp"
#include "hdeform/io.hpp"
#include "hdeform/qplane.hpp"
#include "hdeform/rmatrix.hpp"
#include "hdeform/verify.hpp"

namespace hdeform::cli {

namespace {

// Thrown for anything the user got wrong; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "A";
  int N = 0;
  int n = 0;
  std::string map;  // g1|g2|g3|standard|identity, empty = none
  std::string map_file;
  std::vector<std::string> params;
  std::string orientation = "lower";
  std::string format = "text";
  std::string out_path;
  std::string input;
  std::string golden_dir = HDEFORM_GOLDEN_DIR;
  std::vector<std::string> kinds;
  std::vector<std::string> checks;
  std::string at_h;
  std::uint64_t seed = 1;
  bool expect_success = false;
  bool dump_prelimit = false;
  bool isotropy = false;
  bool all = false;
  bool full_residuals = false;
  bool no_timing = false;

  bool json() const { return format == "json"; }
};

constexpr int kMinN = 2;
constexpr int kMaxN = 8;

SeriesSpec resolve_spec(const RunConfig& cfg) {
  Family f;
  try {
    f = parse_family(cfg.family);
  } catch (const std::exception&) {
    throw UsageError("unknown family '" + cfg.family + "' (expected A, B, C or D)");
  }
  if (cfg.N == 0 && cfg.n == 0) throw UsageError("missing dimension: give --N or --n");
  std::optional<SeriesSpec> spec;
  switch (f) {
    case Family::A:
      if (cfg.N == 0) throw UsageError("family A takes --N");
      if (cfg.N < kMinN || cfg.N > kMaxN) break;
      spec = SeriesSpec::A(cfg.N);
      break;
    case Family::B:
      if (cfg.n > 0) {
        if (2 * cfg.n + 1 <= kMaxN) spec = SeriesSpec::B(cfg.n);
      } else if (cfg.N % 2 == 1 && cfg.N >= 3 && cfg.N <= kMaxN) {
        spec = SeriesSpec::B((cfg.N - 1) / 2);
      } else if (cfg.N >= kMinN && cfg.N <= kMaxN) {
        throw UsageError("family B needs odd N");
      }
      break;
    case Family::C:
    case Family::D: {
      int n = cfg.n;
      if (n == 0) {
        if (cfg.N % 2 != 0) throw UsageError("families C and D need even N");
        n = cfg.N / 2;
      }
      if (n >= 1 && 2 * n <= kMaxN && !(f == Family::D && n < 2))
        spec = f == Family::C ? SeriesSpec::C(n) : SeriesSpec::D(n);
      else if (f == Family::D && n == 1)
        throw UsageError("family D needs n >= 2");
      break;
    }
  }
  if (!spec) throw UsageError("dimension out of range: need " + std::to_string(kMinN) + " <= N <= " + std::to_string(kMaxN));
  return *spec;
}

Orientation resolve_orientation(const std::string& s) {
  if (s == "lower") return Orientation::Lower;
  if (s == "upper") return Orientation::Upper;
  throw UsageError("orientation must be lower or upper");
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, Rational> out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
    const std::string key = p.substr(0, eq);
    if (key != "alpha" && key != "beta" && key != "gamma") throw UsageError("unknown parameter '" + key + "'");
    try {
      out[key] = parse_rational(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("parameter " + key + " is not a rational number");
    }
  }
  return out;
}

struct MapChoice {
  std::string name;  // for reports
  ContractionMap g;
  bool params_zero = true;
};

std::optional<MapChoice> resolve_map(const RunConfig& cfg, const SeriesSpec& spec) {
  if (!cfg.map_file.empty()) {
    if (!cfg.map.empty()) throw UsageError("give either --g or --map-file");
    ContractionMap g = contraction_map_from_json(parse_json(read_file(cfg.map_file)));
    if (g.dim() != spec.dim()) throw UsageError("map dimension does not match the R-matrix");
    return MapChoice{"file", std::move(g), false};
  }
  if (cfg.map.empty()) {
    if (!cfg.params.empty()) throw UsageError("--param needs --g");
    return std::nullopt;
  }
  const auto params = parse_params(cfg.params);
  const bool zero = std::all_of(params.begin(), params.end(), [](const auto& kv) { return kv.second == 0; });
  if (cfg.map == "standard" || cfg.map == "identity") {
    if (!params.empty()) throw UsageError("--g " + cfg.map + " takes no parameters");
    return MapChoice{cfg.map, cfg.map == "standard" ? standard_g(spec.dim()) : ContractionMap(spec.dim()), true};
  }
  Gl3Map which;
  try {
    which = parse_gl3_map(cfg.map);
  } catch (const std::exception&) {
    throw UsageError("unknown map '" + cfg.map + "' (expected g1, g2, g3, standard or identity)");
  }
  if (spec.family() != Family::A || spec.dim() != 3) throw UsageError("--g " + cfg.map + " needs --family A --N 3");
  // Slot names per map; g1 only has beta.
  std::vector<std::string> allowed;
  switch (which) {
    case Gl3Map::G1: allowed = {"beta"}; break;
    case Gl3Map::G2: allowed = {"alpha", "beta"}; break;
    case Gl3Map::G3: allowed = {"alpha", "gamma"}; break;
  }
  for (const auto& [k, v] : params)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw UsageError("map " + cfg.map + " has no parameter " + k);
  auto get = [&](std::size_t i) {
    if (i >= allowed.size()) return Rational(0);
    auto it = params.find(allowed[i]);
    return it == params.end() ? Rational(0) : it->second;
  };
  std::string name = cfg.map;
  for (const auto& [k, v] : params) name += " " + k + "=" + to_string(v);
  return MapChoice{name, gl3_map(which, get(0), get(1)), zero};
}

std::string series_label(const SeriesSpec& spec) {
  const std::string f = to_string(spec.family());
  return f == "A" ? "A(N=" + std::to_string(spec.dim()) + ")"
                  : f + "_" + std::to_string(spec.rank()) + " (N=" + std::to_string(spec.dim()) + ")";
}

std::string format_quad(const QuadExpr<HPoly>& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [ab, c] : e.coeffs) {
    std::string cs = c.to_string();
    const bool neg = !cs.empty() && cs[0] == '-' && c.term_count() == 1;
    if (neg) cs = cs.substr(1);
    const std::string mono = "x_" + std::to_string(ab.first) + (ab.first == ab.second ? "²" : "x_" + std::to_string(ab.second));
    std::string term = cs == "1" ? mono : (c.term_count() > 1 ? "(" + cs + ")" : cs) + " " + mono;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int build() {
    const auto spec = resolve_spec(cfg_);
    const auto R = build_r(spec, resolve_orientation(cfg_.orientation));
    emit_matrix(R);
    return 0;
  }

  int contract() {
    const auto spec = resolve_spec(cfg_);
    auto choice = resolve_map(cfg_, spec);
    if (!choice) throw UsageError("contract needs --g or --map-file");
    const auto R = build_r(spec, resolve_orientation(cfg_.orientation));
    const auto res = try_contract_r(R, choice->g);
    if (res.ok()) {
      if (cfg_.json()) {
        json doc = to_json(*res.limit);
        if (cfg_.dump_prelimit) doc["prelimit"] = to_json(res.prelimit);
        write(doc);
      } else {
        std::string text = to_text(*res.limit);
        if (cfg_.dump_prelimit) text += "# before the limit\n" + to_text(res.prelimit);
        out_ << text;
      }
      return 0;
    }
    emit_obstruction(spec, choice->name, res.singular, cfg_.dump_prelimit ? &res.prelimit : nullptr);
    return cfg_.expect_success ? 1 : 0;
  }

  int plane() {
    const auto spec = resolve_spec(cfg_);
    auto choice = resolve_map(cfg_, spec);
    const ContractionMap g = choice ? choice->g : ContractionMap(spec.dim());
    std::vector<RelationKind> kinds;
    try {
      for (const auto& k : cfg_.kinds) kinds.push_back(parse_relation_kind(k));
    } catch (const std::exception&) {
      throw UsageError("--kind must be plane, dual or symplectic");
    }
    if (kinds.empty()) {
      if (spec.family() == Family::A) kinds = {RelationKind::Plane, RelationKind::Dual};
      else if (spec.family() == Family::C) kinds = {RelationKind::Symplectic};
      else throw UsageError("give --kind for family " + to_string(spec.family()));
    }
    if (cfg_.isotropy && spec.family() != Family::C) throw UsageError("--isotropy needs family C");
    if (cfg_.isotropy && std::find(kinds.begin(), kinds.end(), RelationKind::Symplectic) == kinds.end())
      kinds.push_back(RelationKind::Symplectic);

    json sets = json::array();
    std::string text;
    bool obstructed = false;
    bool isotropy_ok = true;
    std::optional<RelationSet<HPoly>> symplectic_limit;
    for (RelationKind k : kinds) {
      if (k == RelationKind::Symplectic && spec.family() != Family::C) throw UsageError("symplectic relations need family C");
      const RelationSet<RatFunc> rels = k == RelationKind::Plane  ? manin_plane(spec.dim())
                                        : k == RelationKind::Dual ? dual_plane(spec.dim())
                                                                  : symplectic_space(spec);
      const auto res = try_transform_relations(rels, g);
      text += "# " + to_string(k) + "\n";
      if (res.ok()) {
        text += format_relations(*res.limit);
        sets.push_back(to_json(*res.limit));
        if (k == RelationKind::Symplectic) symplectic_limit = res.limit;
      } else {
        obstructed = true;
        text += "obstruction: the relation span has a pole at q = 1\n";
        for (const auto& e : res.singular)
          text += "  relation " + std::to_string(e.relation + 1) + ", x_" + std::to_string(e.pair.first) + "x_" +
                  std::to_string(e.pair.second) + ": order " + std::to_string(e.order) + ", value " + e.value + "\n";
        sets.push_back({{"N", spec.dim()}, {"kind", to_string(k)}, {"status", "obstruction"}, {"singular", to_json(res.singular)}});
      }
    }
    json doc = {{"N", spec.dim()}, {"map", choice ? choice->name : "identity"}, {"sets", sets}};
    if (cfg_.isotropy) {
      json iso;
      const auto form = try_contract_form(g, spec);
      if (!form.ok()) {
        isotropy_ok = false;
        text += "x^t C x: the form is singular at q = 1\n";
        iso = {{"status", "obstruction"}, {"singular", to_json(form.singular)}};
      } else if (!symplectic_limit) {
        isotropy_ok = false;
        text += "x^t C x: no relation set to reduce against\n";
        iso = {{"status", "obstruction"}};
      } else {
        try {
          const auto nf = reduce_quadratic(quadratic_form_expr(*form.limit), *symplectic_limit);
          isotropy_ok = nf.is_zero();
          text += "x^t C x ≡ " + format_quad(nf) + "\n";
          iso = {{"normal_form", format_quad(nf)}, {"pass", isotropy_ok}};
        } catch (const NonSolvable& ex) {
          isotropy_ok = false;
          text += std::string("x^t C x: ") + ex.what() + "\n";
          iso = {{"status", "non-solvable"}, {"message", ex.what()}};
        }
      }
      doc["isotropy"] = iso;
    }
    if (cfg_.json()) write(doc);
    else out_ << text;
    if (cfg_.isotropy && !isotropy_ok) return 1;
    return obstructed && cfg_.expect_success ? 1 : 0;
  }

  int rtt() {
    const auto R = subject_matrix();
    if (!R) return 1;
    auto rels = rtt_relations(*R);
    if (!cfg_.at_h.empty()) rels = specialize_h(rels, parse_h());
    emit_free_relations({{"relations", rels}});
    return 0;
  }

  int wz() {
    const auto R = subject_matrix();
    if (!R) return 1;
    auto rels = wz_relations(*R);
    if (!cfg_.at_h.empty()) {
      rels.mixed = specialize_h(rels.mixed, parse_h());
      rels.differential = specialize_h(rels.differential, parse_h());
    }
    emit_free_relations({{"mixed", rels.mixed}, {"differential", rels.differential}});
    return 0;
  }

  int verify() {
    static const std::vector<std::string> known = {"ybe", "hecke", "involutive", "golden", "equivalence-s",
                                                   "map-identities", "spot"};
    for (const auto& c : cfg_.checks)
      if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check '" + c + "'");
    std::vector<VerificationReport> reports;
    const bool explicit_checks = !cfg_.checks.empty();
    auto wants = [&](const std::string& c) {
      return std::find(cfg_.checks.begin(), cfg_.checks.end(), c) != cfg_.checks.end();
    };
    const bool needs_matrix = cfg_.all || !explicit_checks ||
                              std::any_of(cfg_.checks.begin(), cfg_.checks.end(), [](const std::string& c) {
                                return c != "equivalence-s" && c != "map-identities";
                              });
    if (needs_matrix) {
      Subject s = load_subject();
      if (s.obstruction) {
        VerificationReport rep;
        rep.check = "contract";
        for (const auto& e : s.obstruction->entries())
          rep.residuals.push_back(e.label + ": order " + std::to_string(e.order) + ", value " + e.value);
        rep.residual_total = rep.residuals.size();
        reports.push_back(rep);
      } else {
        matrix_checks(s, explicit_checks && !cfg_.all, wants, reports);
      }
    }
    const bool a3 =
        cfg_.input.empty() && cfg_.family == "A" && cfg_.N == 3;
    if (wants("equivalence-s") || (cfg_.all && a3)) reports.push_back(check_equivalence_s());
    if (wants("map-identities") || (cfg_.all && a3)) reports.push_back(check_map_identities());
    return emit_reports(reports);
  }

  int scan() {
    const auto rep = admissibility_scan_gl3();
    if (cfg_.json()) {
      json pats = json::array();
      for (const auto& p : rep.patterns)
        pats.push_back({{"pattern", p.name()},
                        {"admissible", p.admissible},
                        {"admissible_assignments", p.admissible_assignments},
                        {"rejected_assignments", p.rejected_assignments}});
      json doc = report_json(rep.summary);
      doc["patterns"] = pats;
      write(doc);
    } else {
      std::string text;
      for (const auto& p : rep.patterns) {
        text += p.name() + ": " + (p.admissible ? "admissible" : "inadmissible");
        if (!p.admissible_assignments.empty() && !p.rejected_assignments.empty()) {
          text += " (only";
          for (const auto& a : p.admissible_assignments) text += " " + a;
          text += ")";
        }
        text += "\n";
      }
      text += report_text(rep.summary);
      out_ << text;
    }
    return rep.summary.pass ? 0 : 1;
  }

  // Every check the engine knows, over the standard cases up to N = 6.
  int report() {
    std::vector<VerificationReport> reports;
    auto contracted = [&](const std::string& tag, const SeriesSpec& spec, const ContractionMap& g,
                          const std::optional<std::string>& golden) {
      const auto R = build_r(spec);
      auto ybe_q = check_ybe(R);
      ybe_q.check = tag + ": ybe (q)";
      reports.push_back(ybe_q);
      const auto res = try_contract_r(R, g);
      if (!res.ok()) {
        VerificationReport rep;
        rep.check = tag + ": contract";
        for (const auto& e : res.singular) rep.residuals.push_back(e.label + ": order " + std::to_string(e.order));
        rep.residual_total = rep.residuals.size();
        reports.push_back(rep);
        return;
      }
      auto y = check_ybe(*res.limit);
      y.check = tag + ": ybe";
      reports.push_back(y);
      auto inv = check_involutive(*res.limit);
      inv.check = tag + ": involutive";
      reports.push_back(inv);
      if (golden) {
        auto gr = golden_report(*golden, *res.limit);
        gr.check = tag + ": " + gr.check;
        reports.push_back(gr);
      }
    };
    contracted("A3 g1", SeriesSpec::A(3), gl3_map(Gl3Map::G1), "gl3_alpha");
    contracted("A3 g2", SeriesSpec::A(3), gl3_map(Gl3Map::G2), std::nullopt);
    contracted("A3 g3", SeriesSpec::A(3), gl3_map(Gl3Map::G3), "gl3_beta");
    for (int N = 3; N <= 6; ++N)
      contracted("A" + std::to_string(N) + " standard", SeriesSpec::A(N), standard_g(N), "gln_" + std::to_string(N));
    for (int n = 1; n <= 3; ++n)
      contracted("C" + std::to_string(n) + " standard", SeriesSpec::C(n), standard_g(2 * n), "sp2n_" + std::to_string(n));
    for (const auto& spec : {SeriesSpec::B(1), SeriesSpec::B(2), SeriesSpec::D(2), SeriesSpec::D(3)}) {
      VerificationReport rep;
      rep.check = to_string(spec.family()) + std::to_string(spec.rank()) + " standard: obstruction";
      Stopwatch sw;
      const auto res = try_contract_r(build_r(spec), standard_g(spec.dim()));
      int worst = 0;
      for (const auto& e : res.singular) worst = std::min(worst, e.order);
      rep.pass = !res.ok() && worst == -1;
      if (!rep.pass) rep.residuals.push_back(res.ok() ? "contraction unexpectedly finite" : "worst pole order " + std::to_string(worst));
      else rep.notes.push_back(std::to_string(res.singular.size()) + " singular entries, worst order -1");
      rep.residual_total = rep.residuals.size();
      rep.elapsed_ms = sw.ms();
      reports.push_back(rep);
    }
    for (int n = 1; n <= 3; ++n) {
      VerificationReport rep;
      rep.check = "C" + std::to_string(n) + " standard: form and isotropy";
      Stopwatch sw;
      const auto spec = SeriesSpec::C(n);
      const auto form = contract_form(standard_g(2 * n), spec);
      const auto rels = transform_relations(symplectic_space(spec), standard_g(2 * n));
      const auto nf = reduce_quadratic(quadratic_form_expr(form), rels);
      rep.pass = nf.is_zero();
      if (!rep.pass) rep.residuals.push_back("normal form " + format_quad(nf));
      if (!(form == load_golden_form("spform_" + std::to_string(n), cfg_.golden_dir))) {
        rep.pass = false;
        rep.residuals.push_back("contracted form differs from the listing");
      }
      rep.residual_total = rep.residuals.size();
      rep.elapsed_ms = sw.ms();
      reports.push_back(rep);
    }
    reports.push_back(check_equivalence_s());
    reports.push_back(check_map_identities());
    reports.push_back(admissibility_scan_gl3().summary);
    return emit_reports(reports);
  }

 private:
  struct Subject {
    std::optional<RMatrix<RatFunc>> q_matrix;  // before contraction, when built here
    RMatrix<RatFunc> matrix;                   // the matrix under test
    bool contracted = false;
    std::optional<SeriesSpec> spec;
    std::optional<MapChoice> map;
    std::optional<ContractionSingular> obstruction;
  };

  Subject load_subject() {
    Subject s;
    if (!cfg_.input.empty()) {
      if (!cfg_.map.empty() || !cfg_.map_file.empty()) throw UsageError("--input cannot be combined with --g");
      s.matrix = rmatrix_from_json<RatFunc>(parse_json(read_file(cfg_.input)));
      if (s.matrix.dim() < kMinN || s.matrix.dim() > kMaxN) throw UsageError("input dimension out of range");
      return s;
    }
    s.spec = resolve_spec(cfg_);
    s.map = resolve_map(cfg_, *s.spec);
    s.q_matrix = build_r(*s.spec, resolve_orientation(cfg_.orientation));
    s.matrix = *s.q_matrix;
    if (s.map) {
      auto res = try_contract_r(*s.q_matrix, s.map->g);
      if (!res.ok()) {
        s.obstruction.emplace(res.singular);
        return s;
      }
      s.matrix = res.limit->map([](const HPoly& p) { return lift(p); });
      s.contracted = true;
    }
    return s;
  }

  std::optional<RMatrix<RatFunc>> subject_matrix() {
    Subject s = load_subject();
    if (s.obstruction) {
      emit_obstruction(*s.spec, s.map->name, s.obstruction->entries(), nullptr);
      return std::nullopt;
    }
    return s.matrix;
  }

  static bool q_free(const RMatrix<RatFunc>& R) {
    bool ok = true;
    R.matrix().for_each([&](std::size_t, std::size_t, const RatFunc& v) { ok = ok && v.as_hpoly().has_value(); });
    return ok;
  }

  std::optional<std::string> golden_id(const Subject& s) const {
    if (!s.contracted || !s.spec || !s.map) return std::nullopt;
    const int N = s.spec->dim();
    if (s.spec->family() == Family::A && s.map->params_zero && resolve_orientation(cfg_.orientation) == Orientation::Lower) {
      if (s.map->name == "g1") return "gl3_alpha";
      if (s.map->name == "g3") return "gl3_beta";
      if (s.map->name == "standard" && N <= 6) return "gln_" + std::to_string(N);
    }
    if (s.spec->family() == Family::C && s.map->name == "standard" && s.spec->rank() <= 3)
      return "sp2n_" + std::to_string(s.spec->rank());
    return std::nullopt;
  }

  template <class Wants>
  void matrix_checks(const Subject& s, bool explicit_only, Wants&& wants, std::vector<VerificationReport>& reports) {
    const ReportOptions opts{cfg_.full_residuals, 20};
    const bool is_a = s.spec && s.spec->family() == Family::A;
    const bool is_h = s.contracted || q_free(s.matrix);
    auto run = [&](const std::string& name, bool by_default, bool in_all) {
      if (explicit_only) return wants(name);
      return cfg_.all ? in_all : by_default;
    };
    if (run("ybe", true, true)) {
      if (cfg_.all && s.contracted && s.q_matrix) {
        auto r = check_ybe(*s.q_matrix, opts);
        r.check = "ybe (before contraction)";
        reports.push_back(r);
      }
      reports.push_back(check_ybe(s.matrix, opts));
    }
    if (run("hecke", false, is_a && !s.contracted)) {
      reports.push_back(check_hecke(s.q_matrix ? *s.q_matrix : s.matrix, opts));
    } else if (cfg_.all && is_a && s.contracted && s.q_matrix) {
      auto r = check_hecke(*s.q_matrix, opts);
      r.check = "hecke (before contraction)";
      reports.push_back(r);
    }
    if (run("involutive", is_h, is_h)) reports.push_back(check_involutive(s.matrix, opts));
    const auto gid = golden_id(s);
    if (explicit_only && wants("golden") && !gid) throw UsageError("no published listing for this matrix");
    if (gid && run("golden", true, true)) {
      reports.push_back(golden_report(*gid, s.matrix.map([](const RatFunc& f) { return lower_to_hpoly(f); })));
    }
    if (run("spot", false, true)) reports.push_back(spot_check(s.matrix));
  }

  // A printed listing that differs from the computed matrix only by the sign
  // of some entries, while itself failing Yang-Baxter, is a misprint: the
  // check passes and says so in the notes.
  VerificationReport golden_report(const std::string& id, const RMatrix<HPoly>& Rh) {
    const auto listing = load_golden(id, cfg_.golden_dir);
    auto cmp = golden_compare(Rh, listing);
    if (cmp.matched == GoldenVariant::None && cmp.sign_only) {
      const bool listing_fails = !check_ybe(listing.matrix).pass;
      cmp.report.notes.push_back(std::to_string(cmp.differences.size()) +
                                 " entries differ from the listing by sign only");
      if (listing_fails) {
        cmp.report.notes.push_back("the listing as printed fails Yang-Baxter; the computed matrix passes");
        cmp.report.pass = true;
        cmp.report.residuals.clear();
        for (const auto& [label, computed, listed] : cmp.differences)
          cmp.report.notes.push_back(label + ": computed " + computed + ", listed " + listed);
        cmp.report.residual_total = 0;
      }
    }
    return cmp.report;
  }

  // Yang-Baxter at one random rational point (v, h), drawn from --seed.
  VerificationReport spot_check(const RMatrix<RatFunc>& R) {
    std::mt19937_64 rng(cfg_.seed);
    std::uniform_int_distribution<int> num(2, 40), den(1, 13);
    Rational v;
    do {
      v = make_rational(num(rng), den(rng));
    } while (v == 1);
    const Rational h = make_rational(num(rng) - 20, den(rng));
    const auto point = R.map([&](const RatFunc& f) { return RatFunc(f.at_h(h).evaluate(v, h)); });
    auto rep = check_ybe(point);
    rep.check = "spot";
    rep.notes.push_back("v = " + to_string(v) + ", h = " + to_string(h));
    return rep;
  }

  Rational parse_h() const {
    try {
      return parse_rational(cfg_.at_h);
    } catch (const std::exception&) {
      throw UsageError("--at-h expects a rational number");
    }
  }

  json report_json(const VerificationReport& r) const {
    VerificationReport copy = r;
    if (cfg_.no_timing) copy.elapsed_ms = 0;
    return to_json(copy);
  }

  std::string report_text(const VerificationReport& r) const {
    std::string t = std::string(r.pass ? "PASS " : "FAIL ") + r.check;
    if (!cfg_.no_timing) t += " (" + std::to_string(r.elapsed_ms) + " ms)";
    t += "\n";
    for (const auto& s : r.residuals) t += "  residual " + s + "\n";
    if (r.residual_total > r.residuals.size())
      t += "  ... " + std::to_string(r.residual_total - r.residuals.size()) + " more residual entries\n";
    for (const auto& s : r.notes) t += "  " + s + "\n";
    return t;
  }

  int emit_reports(const std::vector<VerificationReport>& reports) {
    bool pass = !reports.empty();
    for (const auto& r : reports) pass = pass && r.pass;
    if (cfg_.json()) {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_json(r));
      write({{"pass", pass}, {"reports", arr}});
    } else {
      std::string text;
      for (const auto& r : reports) text += report_text(r);
      text += pass ? "all checks passed\n" : "some checks failed\n";
      out_ << text;
    }
    return pass ? 0 : 1;
  }

  template <Scalar S>
  void emit_matrix(const RMatrix<S>& R) {
    if (cfg_.json()) write(to_json(R));
    else out_ << to_text(R);
  }

  void emit_obstruction(const SeriesSpec& spec, const std::string& map, const std::vector<SingularEntry>& entries,
                        const RMatrix<RatFunc>* prelimit) {
    int worst = 0;
    for (const auto& e : entries) worst = std::min(worst, e.order);
    if (cfg_.json()) {
      json doc = {{"status", "obstruction"},
                  {"family", to_string(spec.family())},
                  {"N", spec.dim()},
                  {"map", map},
                  {"worst_order", worst},
                  {"singular", to_json(entries)}};
      if (prelimit) doc["prelimit"] = to_json(*prelimit);
      write(doc);
      return;
    }
    std::string text = "obstruction: " + series_label(spec) + " under g = " + map + " has " +
                       std::to_string(entries.size()) + (entries.size() == 1 ? " entry" : " entries") + " with a pole at q = 1 (worst order " +
                       std::to_string(worst) + ")\n";
    for (const auto& e : entries) text += "  " + e.label + "  order " + std::to_string(e.order) + "  " + e.value + "\n";
    if (prelimit) text += "# before the limit\n" + to_text(*prelimit);
    out_ << text;
  }

  void emit_free_relations(const std::vector<std::pair<std::string, std::vector<FreeQuadRelation>>>& groups) {
    if (cfg_.json()) {
      json doc = json::object();
      for (const auto& [name, rels] : groups) {
        json arr = json::array();
        for (const auto& r : rels) {
          json terms = json::array();
          for (const auto& [xy, c] : r.terms)
            terms.push_back({{"pair", {xy.first.to_string(), xy.second.to_string()}}, {"coeff", c.to_string()}});
          arr.push_back({{"terms", terms}});
        }
        doc[name] = {{"count", rels.size()}, {"relations", arr}};
      }
      write(doc);
      return;
    }
    std::string text;
    for (const auto& [name, rels] : groups) {
      text += "# " + name + ": " + std::to_string(rels.size()) + " independent relations\n";
      for (const auto& r : rels) text += r.to_string() + " = 0\n";
    }
    out_ << text;
  }

  void write(const json& doc) { out_ << doc.dump(2) << "\n"; }

  const RunConfig& cfg_;
  std::ostream& out_;
};

void add_series_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "A, B, C or D")->capture_default_str();
  sub->add_option("--N", cfg.N, "matrix dimension");
  sub->add_option("--n", cfg.n, "rank for B, C, D");
  sub->add_option("--orientation", cfg.orientation, "lower or upper off-diagonal term")->capture_default_str();
}

void add_map_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--g", cfg.map, "g1, g2, g3, standard or identity");
  sub->add_option("--map-file", cfg.map_file, "contraction map JSON");
  sub->add_option("--param", cfg.params, "key=value for alpha, beta, gamma")->allow_extra_args(false);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"exact contraction and verification of q- and h-deformed R-matrices", "hdeform"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--out", cfg.out_path, "write output here instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for randomized spot checks")->capture_default_str();
  app.add_option("--golden-dir", cfg.golden_dir, "directory of published listings");
  app.add_flag("--no-timing", cfg.no_timing, "write 0 for elapsed times");

  auto* build = app.add_subcommand("build", "build the q-deformed R-matrix");
  add_series_options(build, cfg);

  auto* contract = app.add_subcommand("contract", "contract R with a singular map and take q -> 1");
  add_series_options(contract, cfg);
  add_map_options(contract, cfg);
  contract->add_flag("--expect-success", cfg.expect_success, "exit 1 on an obstruction");
  contract->add_flag("--dump-prelimit", cfg.dump_prelimit, "also print the matrix before the limit");

  auto* plane = app.add_subcommand("plane", "transformed quantum plane, dual and symplectic relations");
  add_series_options(plane, cfg);
  add_map_options(plane, cfg);
  plane->add_option("--kind", cfg.kinds, "plane, dual or symplectic (repeatable)");
  plane->add_flag("--isotropy", cfg.isotropy, "reduce x^t C x modulo the symplectic relations");
  plane->add_flag("--expect-success", cfg.expect_success, "exit 1 on an obstruction");

  auto* rtt = app.add_subcommand("rtt", "independent RTT relations");
  auto* wz = app.add_subcommand("wz", "differential calculus relations");
  for (auto* sub : {rtt, wz}) {
    add_series_options(sub, cfg);
    add_map_options(sub, cfg);
    sub->add_option("--input", cfg.input, "R-matrix JSON");
    sub->add_option("--at-h", cfg.at_h, "specialize h to this rational");
  }

  auto* verify = app.add_subcommand("verify", "run checks and write a report bundle");
  add_series_options(verify, cfg);
  add_map_options(verify, cfg);
  verify->add_option("checks", cfg.checks, "ybe hecke involutive golden spot equivalence-s map-identities");
  verify->add_option("--input", cfg.input, "R-matrix JSON");
  verify->add_flag("--all", cfg.all, "every applicable check");
  verify->add_flag("--full-residuals", cfg.full_residuals, "do not truncate residual lists");

  auto* scan = app.add_subcommand("scan-gl3", "admissibility of singular GL(3) maps");
  auto* report = app.add_subcommand("report", "full verification bundle");
  (void)scan;
  (void)report;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hdeform: " << e.what() << "\n";
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  std::ostringstream buffer;
  int code = 0;
  try {
    Runner runner(cfg, buffer);
    if (cfg.command == "build") code = runner.build();
    else if (cfg.command == "contract") code = runner.contract();
    else if (cfg.command == "plane") code = runner.plane();
    else if (cfg.command == "rtt") code = runner.rtt();
    else if (cfg.command == "wz") code = runner.wz();
    else if (cfg.command == "verify") code = runner.verify();
    else if (cfg.command == "scan-gl3") code = runner.scan();
    else code = runner.report();
  } catch (const UsageError& e) {
    err << "hdeform: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "hdeform: " << e.what() << "\n";
    return 2;
  } catch (const DivisionByZero& e) {
    err << "hdeform: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "hdeform: " << e.what() << "\n";
    return 1;
  }

  if (cfg.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f || !(f << buffer.str())) {
      err << "hdeform: cannot write " << cfg.out_path << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace hdeform::cli
