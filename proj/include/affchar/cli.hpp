#pragma once

// Command-line front end. run_cli is the whole program; the tool binary only
// forwards argv to it.

#include <chrono>
#include <complex>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affchar/characters.hpp"
#include "affchar/coxkl.hpp"
#include "affchar/errors.hpp"
#include "affchar/integral.hpp"
#include "affchar/numerics.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/serialize.hpp"
#include "affchar/weyl.hpp"

namespace affchar {

namespace cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string type = "A";
  int rank = 1;
  std::string labels;   // comma-separated exact rationals, one per node
  std::string offset;   // comma-separated integers subtracted from the labels' weight
  std::int64_t height = 10;
  int lmax = 6;
  std::string point;    // semicolon-separated complex z_i
  std::string ab = "0.5,2.0";
  std::string format = "json";
  std::string cache = "affchar_kl_cache.jsonl";
  double tol = 1e-6;
  std::string module = "simple";
  std::string word;     // quotient word for --module word
  std::string x, y;     // kl words
  std::string roots;    // semicolon-separated root vectors for pole scans
  bool interval = false;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(t, &pos));
      if (pos != t.size()) throw UsageError("bad integer '" + t + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad integer '" + t + "'");
    }
  }
  return out;
}

inline std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  for (auto v : parse_ints(s)) w.push_back(static_cast<int>(v));
  return w;
}

// Accepts "a", "bi", "a+bi", "a-bi" (also with j).
inline Complex parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw UsageError("empty complex number");
  auto bad = [&] { return UsageError("bad complex number '" + s + "'"); };
  auto num = [&](const std::string& t) {
    if (t == "" || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (pos != t.size()) throw bad();
    return v;
  };
  char last = s.back();
  if (last != 'i' && last != 'j') return {num(s), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  if (split_at == std::string::npos) return {0.0, num(body)};
  return {num(body.substr(0, split_at)), num(body.substr(split_at))};
}

inline std::vector<EvalPoint> parse_points(const std::string& s, std::size_t dim) {
  std::vector<EvalPoint> pts;
  for (const auto& group : split(s, '|')) {
    std::vector<Complex> z;
    for (const auto& t : split(group, ';')) z.push_back(parse_complex(t));
    if (z.size() != dim) throw UsageError("a point needs " + std::to_string(dim) + " coordinates z_0;...;z_n");
    pts.push_back(EvalPoint::from_z(z));
  }
  return pts;
}

inline std::pair<double, double> parse_ab(const std::string& s) {
  auto t = split(s, ',');
  if (t.size() != 2) throw UsageError("--ab expects a,b");
  return {parse_complex(t[0]).real(), parse_complex(t[1]).real()};
}

inline AffineRootSystem make_system(const RunConfig& c) {
  if (c.type.size() != 1) throw UsageError("unknown type " + c.type);
  if (c.rank < 1) throw UsageError("rank must be positive");
  return AffineRootSystem::build(c.type[0], c.rank);
}

inline Weight make_weight(const AffineRootSystem& sys, const RunConfig& c) {
  std::vector<Scalar> lab(sys.dim(), Scalar());
  if (!c.labels.empty()) {
    auto t = split(c.labels, ',');
    if (t.size() != sys.dim()) throw UsageError("--labels needs " + std::to_string(sys.dim()) + " entries");
    for (std::size_t i = 0; i < t.size(); ++i) lab[i] = Scalar::parse(t[i]);
  }
  Weight w = Weight::from_labels(lab);
  if (!c.offset.empty()) {
    auto off = parse_ints(c.offset);
    if (off.size() != sys.dim()) throw UsageError("--offset needs " + std::to_string(sys.dim()) + " entries");
    w = w.minus(off);
  }
  return w;
}

inline ModuleSpec make_module(const AffineRootSystem& sys, const RunConfig& c) {
  Weight L = make_weight(sys, c);
  if (c.module == "verma") return ModuleSpec::verma(L);
  if (c.module == "simple") return ModuleSpec::simple(L);
  if (c.module == "quotient") {
    if (c.word.empty()) throw UsageError("--module quotient needs --word");
    return ModuleSpec::word_quotient(sys, L, parse_word(c.word));
  }
  throw UsageError("unknown module '" + c.module + "' (verma, simple, quotient)");
}

inline std::string vec_str(const RootVec& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline int cmd_roots(const RunConfig& c, std::ostream& out) {
  auto sys = make_system(c);
  if (c.height < 1) throw UsageError("--height must be positive");
  auto roots = sys.positive_roots_up_to(c.height);
  if (c.format == "csv") {
    out << "coords,mult,height,delta_degree,classical\n";
    for (const auto& r : roots)
      out << vec_str(r.coords) << ',' << r.mult << ',' << r.height << ',' << r.delta_degree << ','
          << vec_str(sys.classical_projection(r.coords)) << '\n';
    return kOk;
  }
  Json rows = Json::array();
  for (const auto& r : roots) {
    Json j = to_json(r);
    j["classical"] = sys.classical_projection(r.coords);
    rows.push_back(j);
  }
  emit(out, Json{{"system", to_json(sys)}, {"height", c.height}, {"roots", rows}});
  return kOk;
}

inline std::pair<IntPolynomial, IntPolynomial> cached_pair(KLTable& kl, KLCache& cache, const CoxeterElement& x,
                                                           const CoxeterElement& y, bool& hit) {
  if (auto e = cache.lookup(x.canonical, y.canonical)) {
    hit = true;
    return *e;
  }
  hit = false;
  auto P = kl.P(x, y);
  auto Q = kl.Q(x, y);
  cache.append(x.canonical, y.canonical, P, Q);
  return {P, Q};
}

inline int cmd_kl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto sys = make_system(c);
  KLTable kl(ReflectionGroup::ambient(sys));
  const auto& G = kl.group();
  auto check_word = [&](const std::vector<int>& w) {
    for (int s : w)
      if (s < 0 || static_cast<std::size_t>(s) >= G.rank()) throw UsageError("word letter out of range");
  };
  auto wx = parse_word(c.x), wy = parse_word(c.y);
  check_word(wx);
  check_word(wy);
  auto x = G.from_word(wx), y = G.from_word(wy);
  KLCache cache(KLCache::resolve_path(c.cache), G);
  if (!cache.warning().empty()) err << "warning: " << cache.warning() << '\n';
  bool hit = false;
  auto [P, Q] = cached_pair(kl, cache, x, y, hit);
  Json j{{"system", sys.id()}, {"x", x.word}, {"y", y.word}, {"leq", G.bruhat_leq(x, y)},
         {"P", to_json(P)}, {"Q", to_json(Q)}, {"P_str", P.str()}, {"Q_str", Q.str()}, {"cached", hit}};
  if (c.interval) {
    auto& T = kl.table();
    int ix = T.id_of(x), iy = T.id_of(y);
    Json rows = Json::array();
    for (int w : T.interval(ix, iy)) {
      bool h = false;
      auto [Pw, Qw] = cached_pair(kl, cache, T.element(w), y, h);
      rows.push_back(Json{{"w", T.element(w).word}, {"P", to_json(Pw)}, {"Q", to_json(Qw)}});
    }
    j["interval"] = rows;
  }
  if (c.format == "csv") {
    out << "x,y,P,Q\n" << vec_str({wx.begin(), wx.end()}) << ',' << vec_str({wy.begin(), wy.end()}) << ','
        << P.str() << ',' << Q.str() << '\n';
    return kOk;
  }
  emit(out, j);
  return kOk;
}

inline int cmd_char(const RunConfig& c, std::ostream& out) {
  auto sys = make_system(c);
  if (c.height < 0) throw UsageError("--height must be nonnegative");
  auto spec = make_module(sys, c);
  auto s = module_char(sys, spec, c.height);
  if (c.format == "csv") {
    out << "offset,height,mult\n";
    for (const auto& [nu, m] : s.coeffs) {
      std::int64_t h = 0;
      for (auto v : nu) h += v;
      out << vec_str(nu) << ',' << h << ',' << m << '\n';
    }
    return kOk;
  }
  Json j = to_json(s);
  j["system"] = sys.id();
  j["module"] = c.module;
  j["highest_weight_labels"] = weight_labels_string(sys, spec.Lambda);
  emit(out, j);
  return kOk;
}

inline int cmd_eval(const RunConfig& c, std::ostream& out) {
  auto sys = make_system(c);
  if (c.point.empty()) throw UsageError("eval needs --point");
  auto spec = make_module(sys, c);
  auto pts = parse_points(c.point, sys.dim());
  ModuleEvaluator ev(sys, spec);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& p : pts) {
    if (!in_Y(sys, p)) throw DomainError("point is outside Y");
    auto R = eval_R_converged(sys, p);
    Complex N = ev.numerator(p);
    Json row{{"h", Json::array()}, {"R", complex_json(R.value)}, {"numerator", complex_json(N)},
             {"char", complex_json(N / R.value)}};
    for (auto h : p.h) row["h"].push_back(complex_json(h));
    if (in_Y_strict(p)) {
      auto s = module_char(sys, spec, c.height);
      auto ch = eval_char(sys, s, p);
      Complex prod = ch.value * R.value;
      double err = std::abs(prod - N);
      double bound = ch.tail_bound * std::abs(R.value) + 1e-12;
      row["series_char"] = complex_json(ch.value);
      row["series_tail_bound"] = ch.tail_bound;
      row["identity_error"] = err;
      bool pass = err <= std::max(c.tol, bound);
      row["identity_ok"] = pass;
      ok = ok && pass;
    }
    rows.push_back(row);
  }
  emit(out, Json{{"system", sys.id()}, {"module", c.module}, {"points", rows}});
  return ok ? kOk : kVerifyFailed;
}

inline std::vector<RootVec> default_scan_roots(const AffineRootSystem& sys) {
  std::vector<RootVec> out;
  for (const auto& r : sys.positive_roots_up_to(3))
    if (r.is_real) out.push_back(r.coords);
  return out;
}

inline EvalPoint default_base(const AffineRootSystem& sys) {
  std::vector<Complex> h(sys.dim());
  for (std::size_t i = 1; i < sys.dim(); ++i) h[i] = Complex(0.5 + 0.05 * static_cast<double>(i), -0.07 * static_cast<double>(i));
  h[0] = Complex(0.55, 0.13);
  return EvalPoint::from_h(h);
}

inline int cmd_poles(const RunConfig& c, std::ostream& out) {
  auto sys = make_system(c);
  auto spec = make_module(sys, c);
  EvalPoint base = c.point.empty() ? default_base(sys) : parse_points(c.point, sys.dim()).front();
  std::vector<RootVec> roots;
  if (c.roots.empty()) roots = default_scan_roots(sys);
  else
    for (const auto& t : split(c.roots, ';')) roots.push_back(parse_ints(t));
  ModuleEvaluator ev(sys, spec);
  PoleScanOptions opt;
  Json rows = Json::array();
  for (const auto& a : roots) {
    if (a.size() != sys.dim()) throw UsageError("root has the wrong number of coordinates");
    auto r = pole_scan(ev, a, base, opt);
    Json path = Json::array();
    for (const auto& s : r.path) path.push_back(Json{{"t", s.t}, {"abs_one_minus_z", s.abs_one_minus_z}, {"abs_F", s.abs_F}});
    rows.push_back(Json{{"root", a}, {"verdict", to_string(r.verdict)}, {"order", r.order}, {"residue", r.residue},
                        {"order_violation", r.order_violation}, {"path", path}});
  }
  Json pred = Json::array();
  for (const auto& a : predicted_nonpoles(sys, spec)) pred.push_back(a);
  emit(out, Json{{"system", sys.id()}, {"module", c.module}, {"scans", rows}, {"predicted_nonpoles", pred}});
  return kOk;
}

inline std::vector<EvalPoint> default_gap_points(const AffineRootSystem& sys, double a, double b) {
  // Finite coordinates kept small enough for |alpha(h)| < b on the finite
  // roots, delta(h) pushed past a.
  std::int64_t ht = 0;
  for (std::size_t i = 1; i < sys.dim(); ++i) ht += sys.marks()[i];
  double f = 0.8 * b / static_cast<double>(ht + 1);
  std::vector<EvalPoint> pts;
  const double shifts[5][2] = {{0, 0}, {0.1, 0.2}, {-0.1, -0.15}, {0.2, -0.1}, {-0.05, 0.1}};
  for (const auto& s : shifts) {
    std::vector<Complex> h(sys.dim());
    for (std::size_t i = 1; i < sys.dim(); ++i) h[i] = Complex(f * (1 + s[0]), s[1] * f);
    Complex fin = 0;
    for (std::size_t i = 1; i < sys.dim(); ++i) fin += static_cast<double>(sys.marks()[i]) * h[i];
    h[0] = Complex(a + 1.0 + s[0], s[1]) - fin;
    pts.push_back(EvalPoint::from_h(h));
  }
  return pts;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  auto sys = make_system(c);
  if (c.lmax < 0) throw UsageError("--lmax must be nonnegative");
  KLTable kl(ReflectionGroup::ambient(sys));
  kl.compute_all(c.lmax);
  auto& T = kl.table();
  auto cumulative = kl.group().growth_series(c.lmax);
  auto fit = fit_growth(cumulative, 2);
  int n = std::max(1, static_cast<int>(std::lround(fit.exponent)));
  std::int64_t C = growth_constant(cumulative, n);
  int N = std::max(n + 1, 2);
  std::size_t pairs = 0, inv_fail = 0, p_fail = 0, q_fail = 0;
  for (int y = 0; y < T.layer_end(c.lmax); ++y) {
    for (int x : T.lower_interval(y)) {
      ++pairs;
      if (!kl.check_inversion(x, y)) ++inv_fail;
      if (!kl.verify_P_estimate(x, y)) ++p_fail;
      if (!kl.verify_Q_estimate(x, y, C, N)) ++q_fail;
    }
  }
  Json j{{"system", sys.id()},
         {"lmax", c.lmax},
         {"pairs", pairs},
         {"growth", {{"exponent_fit", fit.exponent}, {"n", n}, {"C", C}, {"N", N}}},
         {"inversion_failures", inv_fail},
         {"P_estimate_failures", p_fail},
         {"Q_estimate_failures", q_fail}};
  bool ok = inv_fail == 0 && p_fail == 0 && q_fail == 0;

  Weight L = make_weight(sys, c);
  Block b(sys, L);
  if (!b.trivial() && b.report().cls == DominanceClass::C_plus && b.report().level_sign && *b.report().level_sign > 0) {
    auto [a, bb] = parse_ab(c.ab);
    auto pts = c.point.empty() ? default_gap_points(sys, a, bb) : parse_points(c.point, sys.dim());
    int Lgap = std::max(c.lmax, 4);
    auto g = verify_quadratic_gap(b, a, bb, pts, Lgap);
    j["quadratic_gap"] = Json{{"lmax", Lgap},
                              {"C", g.C},
                              {"per_point_C", g.per_point_C},
                              {"exceptional_lengths", g.exceptional_lengths},
                              {"violations", g.violations.size()},
                              {"ok", g.ok()}};
    ok = ok && g.ok();
  } else {
    j["quadratic_gap"] = "skipped: weight not in C^+ at positive rational level";
  }
  j["ok"] = ok;
  emit(out, j);
  return ok ? kOk : kVerifyFailed;
}

inline int cmd_cache(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto sys = make_system(c);
  KLTable kl(ReflectionGroup::ambient(sys));
  std::string path = KLCache::resolve_path(c.cache);
  KLCache cache(path, kl.group());
  if (!cache.warning().empty()) err << "warning: " << cache.warning() << '\n';
  std::size_t before = cache.size();
  if (cache.usable() && c.lmax > 0) {
    kl.compute_all(c.lmax);
    auto& T = kl.table();
    for (int y = 0; y < T.layer_end(c.lmax); ++y)
      for (int x : T.lower_interval(y)) cache.append(T.element(x).canonical, T.element(y).canonical, kl.P(x, y), kl.Q(x, y));
  }
  emit(out, Json{{"path", path}, {"system", sys.id()}, {"usable", cache.usable()}, {"entries_before", before},
                 {"entries", cache.size()}, {"warning", cache.warning()}});
  return kOk;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli;
  RunConfig cfg;
  CLI::App app{"Characters of highest-weight modules over untwisted affine Lie algebras"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--type", cfg.type, "Cartan type letter (A..G)");
    s->add_option("--rank", cfg.rank, "rank of the finite type");
    s->add_option("--tol", cfg.tol, "numerical tolerance");
  };
  auto format = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto weight = [&](CLI::App* s) {
    s->add_option("--labels", cfg.labels, "highest-weight labels, exact rationals; a trailing t marks theta");
    s->add_option("--offset", cfg.offset, "root-lattice vector subtracted from the labelled weight");
    s->add_option("--module", cfg.module, "verma, simple or quotient");
    s->add_option("--word", cfg.word, "word over Pi(lambda) for the quotient M(L)/M(w.L)");
  };
  auto* roots = app.add_subcommand("roots", "list positive roots up to a height");
  common(roots);
  format(roots);
  roots->add_option("--height", cfg.height, "height cutoff");
  auto* kl = app.add_subcommand("kl", "KL polynomials P and Q for a pair of words");
  common(kl);
  format(kl);
  kl->add_option("--x", cfg.x, "word for x, e.g. 0,1")->required();
  kl->add_option("--y", cfg.y, "word for y")->required();
  kl->add_flag("--interval", cfg.interval, "also list the whole interval");
  kl->add_option("--cache", cfg.cache, "cache file");
  auto* ch = app.add_subcommand("char", "truncated character table");
  common(ch);
  format(ch);
  weight(ch);
  ch->add_option("--height", cfg.height, "height cutoff");
  auto* ev = app.add_subcommand("eval", "evaluate a character at points");
  common(ev);
  weight(ev);
  ev->add_option("--height", cfg.height, "height cutoff for the series check");
  ev->add_option("--point", cfg.point, "z_0;...;z_n, several points separated by |");
  auto* po = app.add_subcommand("poles", "scan for poles along real root hyperplanes");
  common(po);
  weight(po);
  po->add_option("--point", cfg.point, "base point z_0;...;z_n");
  po->add_option("--roots", cfg.roots, "roots to scan, e.g. 1,0;0,1");
  auto* ve = app.add_subcommand("verify", "KL identities, estimates and the quadratic gap");
  common(ve);
  ve->add_option("--labels", cfg.labels, "weight for the quadratic gap");
  ve->add_option("--offset", cfg.offset, "root-lattice offset for the weight");
  ve->add_option("--lmax", cfg.lmax, "largest length");
  ve->add_option("--ab", cfg.ab, "a,b for Y_{a,b}");
  ve->add_option("--point", cfg.point, "gap points");
  auto* ca = app.add_subcommand("cache", "inspect or fill the KL cache");
  common(ca);
  ca->add_option("--cache", cfg.cache, "cache file");
  ca->add_option("--lmax", cfg.lmax, "fill all pairs up to this length")->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    if (*roots) return cmd_roots(cfg, out);
    if (*kl) return cmd_kl(cfg, out, err);
    if (*ch) return cmd_char(cfg, out);
    if (*ev) return cmd_eval(cfg, out);
    if (*po) return cmd_poles(cfg, out);
    if (*ve) return cmd_verify(cfg, out);
    if (*ca) return cmd_cache(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kUsage;
  } catch (const CutoffError& e) {
    err << "cutoff: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const ConsistencyError& e) {
    err << "consistency: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace affchar
