#pragma once

// Floating-point evaluation of normalized characters e^{-Lambda} ch, the
// denominator R, and numerators on the domains Y_>, Y and Y_{a,b}; pole
// scans along coweight paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "affchar/characters.hpp"
#include "affchar/errors.hpp"
#include "affchar/integral.hpp"
#include "affchar/rootsys.hpp"

namespace affchar {

using Complex = std::complex<double>;

// A point h, stored through h_i = alpha_i(h); z_i = e^{-h_i}.
struct EvalPoint {
  std::vector<Complex> h;

  static EvalPoint from_h(std::vector<Complex> h) { return EvalPoint{std::move(h)}; }

  static EvalPoint from_z(const std::vector<Complex>& z) {
    EvalPoint p;
    for (auto zi : z) {
      if (zi == Complex(0)) throw DomainError("coordinate z_i = 0 is not a point of h");
      p.h.push_back(-std::log(zi));
    }
    return p;
  }

  Complex z(std::size_t i) const { return std::exp(-h[i]); }

  // beta(h) for a root-lattice vector beta.
  Complex pair(const RootVec& v) const {
    Complex s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) s += static_cast<double>(v[i]) * h[i];
    return s;
  }

  Complex zpow(const RootVec& v) const { return std::exp(-pair(v)); }
  double abs_zpow(const RootVec& v) const { return std::exp(-pair(v).real()); }
};

inline Complex delta_of(const AffineRootSystem& sys, const EvalPoint& p) { return p.pair(sys.delta()); }

inline bool in_Y_strict(const EvalPoint& p) {
  return std::all_of(p.h.begin(), p.h.end(), [](Complex c) { return c.real() > 0; });
}

inline bool in_Y(const AffineRootSystem& sys, const EvalPoint& p) { return delta_of(sys, p).real() > 0; }

// Re delta(h) > a and |alpha(h)| < b for the positive roots of the finite part.
inline bool in_Yab(const AffineRootSystem& sys, const EvalPoint& p, double a, double b) {
  if (delta_of(sys, p).real() <= a) return false;
  for (const auto& cl : sys.classical_roots()) {
    if (!is_positive(cl)) continue;
    if (std::abs(p.pair(sys.lift(cl, 0))) >= b) return false;
  }
  return true;
}

namespace detail {

// Smallest delta-degree k with cl + k delta a positive root, skipping one
// excluded root.
inline std::int64_t first_degree(const AffineRootSystem& sys, const RootVec& cl, const RootVec* excluded) {
  std::int64_t k = is_positive(cl) ? 0 : 1;
  if (excluded && sys.lift(cl, k) == *excluded) ++k;
  return k;
}

}  // namespace detail

// Re beta(h) > 0 for every positive root beta other than alpha.
inline bool in_Y_excluding(const AffineRootSystem& sys, const EvalPoint& p, const RootVec& alpha) {
  if (!in_Y(sys, p)) return false;
  for (const auto& cl : sys.classical_roots()) {
    auto k = detail::first_degree(sys, cl, &alpha);
    if (p.pair(sys.lift(cl, k)).real() <= 0) return false;
  }
  return true;
}

struct TailedValue {
  Complex value = 0;
  double tail_bound = 0;  // bound on |exact - value|
  double tail_sum = 0;    // sum of |e^{-beta}| over omitted roots (for R)
  bool reliable = true;
};

// Sum over positive roots beta of height > H of mult |z^beta|, by families.
inline double root_tail_sum(const AffineRootSystem& sys, const EvalPoint& p, std::int64_t H) {
  double r = std::exp(-delta_of(sys, p).real());
  if (r >= 1) return std::numeric_limits<double>::infinity();
  double T = 0;
  const auto h = sys.coxeter_number();
  auto family = [&](const RootVec& cl, std::int64_t k0, int mult) {
    RootVec base = sys.lift(cl, 0);
    std::int64_t k = k0;
    if (height(base) + k * h <= H) k = std::max(k0, (H - height(base)) / h + 1);
    while (height(base) + k * h <= H) ++k;
    T += mult * p.abs_zpow(sys.lift(cl, k)) / (1 - r);
  };
  for (const auto& cl : sys.classical_roots()) family(cl, detail::first_degree(sys, cl, nullptr), 1);
  family(RootVec(static_cast<std::size_t>(sys.rank()), 0), 1, sys.imaginary_mult());
  return T;
}

// Truncated product R_H(h) and the bound |R - R_H| <= |R_H| (e^T - 1).
inline TailedValue eval_R(const AffineRootSystem& sys, const EvalPoint& p, std::int64_t H) {
  if (!in_Y(sys, p)) throw DomainError("point is outside Y: Re delta(h) <= 0");
  if (H < 1) throw PreconditionError("cutoff must be positive");
  TailedValue out;
  Complex v = 1;
  for (const auto& r : sys.positive_roots_up_to(H)) {
    Complex f = Complex(1) - p.zpow(r.coords);
    for (int m = 0; m < r.mult; ++m) v *= f;
  }
  out.value = v;
  out.tail_sum = root_tail_sum(sys, p, H);
  out.tail_bound = std::isfinite(out.tail_sum) ? std::abs(v) * std::expm1(out.tail_sum)
                                               : std::numeric_limits<double>::infinity();
  out.reliable = std::isfinite(out.tail_bound) && out.tail_sum < 1;
  return out;
}

// R(h) with the cutoff raised until the tail bound is below tol * |R_H|.
inline TailedValue eval_R_converged(const AffineRootSystem& sys, const EvalPoint& p, double tol = 1e-14,
                                    std::int64_t Hmax = 1 << 14) {
  for (std::int64_t H = 16;; H *= 2) {
    auto r = eval_R(sys, p, H);
    if (r.tail_bound <= tol * std::abs(r.value) || H >= Hmax) return r;
  }
}

// Which module majorizes a series coefficientwise: M(Lambda), or
// M(Lambda)/M(s_alpha . Lambda) with k = <alpha^vee, Lambda + rho>.
struct Majorant {
  bool quotient = false;
  RootVec alpha;
  std::int64_t k = 0;

  static Majorant verma() { return {}; }
  static Majorant reflection_quotient(const AffineRootSystem& sys, const Weight& Lambda, const RootVec& alpha) {
    auto k = coroot_pairing_shifted(sys, alpha, Lambda);
    if (!k.is_integer() || k.as_int() <= 0) throw PreconditionError("no reflection quotient for this root");
    return {true, alpha, k.as_int()};
  }
};

// prod_{beta > 0, beta != excluded} (1 - |z^beta|)^{-mult} to near machine
// precision; requires every factor's |z^beta| < 1.
inline double abs_inverse_product(const AffineRootSystem& sys, const EvalPoint& p, const RootVec* excluded) {
  double r = std::exp(-delta_of(sys, p).real());
  if (r >= 1) return std::numeric_limits<double>::infinity();
  double logsum = 0;
  auto family = [&](const RootVec& cl, std::int64_t k0, int mult) {
    for (std::int64_t k = k0;; ++k) {
      double x = p.abs_zpow(sys.lift(cl, k));
      if (excluded && sys.lift(cl, k) == *excluded) continue;
      if (x >= 1) throw DomainError("majorant diverges: |z^beta| >= 1 for a positive root");
      logsum -= mult * std::log1p(-x);
      if (x < 1e-20 && k > k0 + 1) {
        logsum += mult * x * r / ((1 - r) * (1 - x));
        break;
      }
    }
  };
  for (const auto& cl : sys.classical_roots()) family(cl, detail::first_degree(sys, cl, nullptr), 1);
  family(RootVec(static_cast<std::size_t>(sys.rank()), 0), 1, sys.imaginary_mult());
  return std::exp(logsum);
}

inline double majorant_total(const AffineRootSystem& sys, const EvalPoint& p, const Majorant& m) {
  if (!m.quotient) return abs_inverse_product(sys, p, nullptr);
  double x = p.abs_zpow(m.alpha), geo = 0, xp = 1;
  for (std::int64_t j = 0; j < m.k; ++j, xp *= x) geo += xp;
  return geo * abs_inverse_product(sys, p, &m.alpha);
}

// Sum of m_nu z^nu over the stored offsets; the tail bound comes from the
// majorant's full value at |z| minus its stored part.
inline TailedValue eval_char(const AffineRootSystem& sys, const CharSeries& s, const EvalPoint& p,
                             const std::optional<Majorant>& majorant = std::nullopt) {
  Majorant m = majorant.value_or(Majorant::verma());
  bool strict = in_Y_strict(p);
  if (!strict) {
    if (!m.quotient || !in_Y_excluding(sys, p, m.alpha))
      throw DomainError("series evaluation outside Y_> needs a reflection-quotient certificate at a point of Y_{>;alpha}");
  }
  TailedValue out;
  for (const auto& [nu, c] : s.coeffs) out.value += static_cast<double>(c) * p.zpow(nu);
  CharSeries ms = m.quotient ? verma_difference(sys, s.base, m.k * m.alpha, s.cutoff) : verma_char(sys, s.base, s.cutoff);
  double stored = 0;
  for (const auto& [nu, c] : ms.coeffs) stored += static_cast<double>(c) * p.abs_zpow(nu);
  double total = majorant_total(sys, p, m);
  out.tail_bound = std::max(0.0, total - stored) + 1e-15 * total;
  out.reliable = std::isfinite(out.tail_bound);
  return out;
}

struct NumeratorEval {
  Complex value = 0;
  std::vector<int> shell_lengths;
  std::vector<Complex> partial_sums;  // after each shell
  std::vector<double> shell_abs;      // sum |c| |z^e| per shell
  int decay_threshold = -1;           // shells decrease from here on
  double tail_estimate = 0;           // extrapolated from the shell magnitudes
  double bound_shape_tail = 0;        // sum_{l > L} (C1 l^N)^{l+1} e^{-C l^2} with fitted C
};

namespace detail {

// Least-squares fit y ~ a + b x.
inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - b * sx) / n, b};
}

inline int decreasing_from(const std::vector<double>& v) {
  int k = static_cast<int>(v.size()) - 1;
  while (k > 0 && v[static_cast<std::size_t>(k)] <= v[static_cast<std::size_t>(k - 1)]) --k;
  return k;
}

}  // namespace detail

// Sum of c_{x,y} z^{(lambda - y.lambda) - (lambda - x.lambda)} shell by shell.
inline NumeratorEval eval_numerator(const AffineRootSystem& sys, const NumeratorData& nd, const EvalPoint& p,
                                    double a, double b, double growth_C = 3, int growth_N = 2) {
  if (!in_Yab(sys, p, a, b)) throw DomainError("point is outside Y_{a,b}");
  NumeratorEval out;
  if (nd.terms.empty()) return out;
  const RootVec& ox = nd.terms.front().offset;
  int cur = -1;
  double gap_c = std::numeric_limits<double>::infinity();
  for (const auto& t : nd.terms) {
    int l = t.y.length();
    if (l != cur) {
      out.shell_lengths.push_back(l);
      out.partial_sums.push_back(out.value);
      out.shell_abs.push_back(0);
      cur = l;
    }
    RootVec e = t.offset - ox;
    Complex term = static_cast<double>(t.coefficient) * p.zpow(e);
    out.value += term;
    out.partial_sums.back() = out.value;
    out.shell_abs.back() += std::abs(term);
    if (l >= 4) gap_c = std::min(gap_c, p.pair(t.offset).real() / (static_cast<double>(l) * l));
  }
  int k = detail::decreasing_from(out.shell_abs);
  out.decay_threshold = out.shell_lengths[static_cast<std::size_t>(k)];

  // Extrapolate log shell magnitude by a fitted quadratic in l.
  std::vector<double> xs, ys;
  for (std::size_t i = static_cast<std::size_t>(k); i < out.shell_abs.size(); ++i) {
    if (out.shell_abs[i] <= 0) continue;
    xs.push_back(static_cast<double>(out.shell_lengths[i]) * out.shell_lengths[i]);
    ys.push_back(std::log(out.shell_abs[i]));
  }
  int L = out.shell_lengths.back();
  if (xs.size() >= 3) {
    auto [a0, slope] = detail::linear_fit(xs, ys);
    if (slope < 0) {
      for (int l = L + 1; l <= L + 200; ++l) out.tail_estimate += std::exp(a0 + slope * l * l);
    } else {
      out.tail_estimate = std::numeric_limits<double>::infinity();
    }
  } else {
    out.tail_estimate = out.shell_abs.back() > 0 ? std::numeric_limits<double>::infinity() : 0;
  }
  if (std::isfinite(gap_c) && gap_c > 0) {
    double gx = p.pair(ox).real();
    for (int l = L + 1; l <= L + 200; ++l) {
      double lg = (l + 1) * (std::log(growth_C) + growth_N * std::log(static_cast<double>(l))) - gap_c * l * l + gx;
      out.bound_shape_tail += std::exp(lg);
    }
  } else {
    out.bound_shape_tail = std::numeric_limits<double>::infinity();
  }
  return out;
}

struct GapViolation {
  std::size_t point = 0;
  std::vector<int> word;
  int length = 0;
  double gap = 0;
};

struct QuadraticGapReport {
  double C = 0;  // constant valid beyond the exceptional lengths at all points
  std::vector<double> per_point_C;
  std::vector<std::vector<double>> min_gap;  // [point][length]
  std::vector<int> exceptional_lengths;      // lengths l >= 1 where gap <= C l^2
  std::vector<GapViolation> violations;      // beyond the exception prefix
  int prefix = 3;
  bool ok() const { return C > 0 && violations.empty(); }
};

// Re <h, lambda - y.lambda> against C l(y)^2 for all y with l(y) <= Lmax.
// C at each point is half the smallest ratio gap / l^2 over the upper half
// of the lengths; every length beyond the prefix is then checked against it.
inline QuadraticGapReport verify_quadratic_gap(Block& b, double a, double bb, const std::vector<EvalPoint>& points,
                                               int Lmax, int prefix = 3) {
  const auto& sys = b.system();
  if (b.trivial() || b.report().cls != DominanceClass::C_plus || !b.report().level_sign ||
      *b.report().level_sign <= 0)
    throw PreconditionError("quadratic gap needs lambda in C^+ at a positive rational level");
  QuadraticGapReport rep;
  rep.prefix = prefix;
  auto& T = b.kl().table();
  T.extend_to(Lmax);
  std::vector<std::vector<std::pair<int, double>>> gaps(points.size());
  for (std::size_t pi = 0; pi < points.size(); ++pi)
    if (!in_Yab(sys, points[pi], a, bb)) throw DomainError("gap point outside Y_{a,b}");
  rep.C = std::numeric_limits<double>::infinity();
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<double> mins(static_cast<std::size_t>(Lmax) + 1, std::numeric_limits<double>::infinity());
    for (int y = 0; y < T.layer_end(Lmax); ++y) {
      double g = points[pi].pair(b.offset_of(T.element(y))).real();
      gaps[pi].push_back({y, g});
      auto& m = mins[static_cast<std::size_t>(T.length(y))];
      m = std::min(m, g);
    }
    double C = std::numeric_limits<double>::infinity();
    for (int l = std::max(prefix + 1, (Lmax + 1) / 2); l <= Lmax; ++l)
      C = std::min(C, 0.5 * mins[static_cast<std::size_t>(l)] / (static_cast<double>(l) * l));
    if (!std::isfinite(C)) C = 0;
    rep.per_point_C.push_back(C);
    rep.min_gap.push_back(mins);
    rep.C = std::min(rep.C, C);
  }
  std::vector<bool> exc(static_cast<std::size_t>(Lmax) + 1, false);
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (auto [y, g] : gaps[pi]) {
      int l = T.length(y);
      if (l == 0 || g > rep.C * l * l) continue;
      exc[static_cast<std::size_t>(l)] = true;
      if (l > prefix) rep.violations.push_back({pi, T.element(y).word, l, g});
    }
  }
  for (int l = 0; l <= Lmax; ++l)
    if (exc[static_cast<std::size_t>(l)]) rep.exceptional_lengths.push_back(l);
  return rep;
}

// Modules the numerical layer knows how to evaluate in closed form.
struct ModuleSpec {
  enum class Kind { verma, simple, quotient } kind = Kind::verma;
  Weight Lambda;
  RootVec sub_offset;                  // quotient: M(Lambda)/M(Lambda - sub_offset)
  std::optional<RootVec> reflection;   // quotient by a single reflection s_alpha
  std::vector<int> word;               // quotient by w . Lambda, w a word over Pi(Lambda)

  static ModuleSpec verma(Weight L) { return {Kind::verma, std::move(L), {}, std::nullopt, {}}; }
  static ModuleSpec simple(Weight L) { return {Kind::simple, std::move(L), {}, std::nullopt, {}}; }

  static ModuleSpec reflection_quotient(const AffineRootSystem& sys, Weight L, const RootVec& alpha) {
    auto k = coroot_pairing_shifted(sys, alpha, L);
    if (!k.is_integer() || k.as_int() <= 0) throw PreconditionError("no reflection quotient for this root");
    return {Kind::quotient, std::move(L), k.as_int() * alpha, alpha, {}};
  }

  static ModuleSpec word_quotient(const AffineRootSystem& sys, Weight L, std::vector<int> word) {
    auto is = build_integral_system(sys, L);
    auto G = is.group();
    auto mu = G.act_on_weight(G.from_word(word), L, true);
    auto d = integral_difference(L, mu);
    if (!is_positive(d)) throw PreconditionError("w . Lambda is not strictly below Lambda");
    std::optional<RootVec> refl;
    if (word.size() == 1) refl = G.generators()[static_cast<std::size_t>(word[0])];
    return {Kind::quotient, std::move(L), d, refl, std::move(word)};
  }
};

inline CharSeries module_char(const AffineRootSystem& sys, const ModuleSpec& spec, std::int64_t H) {
  switch (spec.kind) {
    case ModuleSpec::Kind::verma: return verma_char(sys, spec.Lambda, H);
    case ModuleSpec::Kind::simple: return simple_char(sys, spec.Lambda, H);
    default: return verma_difference(sys, spec.Lambda, spec.sub_offset, H);
  }
}

// Evaluates F = e^{-Lambda} N / R where N is the module's numerator.
class ModuleEvaluator {
 public:
  ModuleEvaluator(AffineRootSystem sys, ModuleSpec spec, int Lcap = 40) : sys_(std::move(sys)), spec_(std::move(spec)), Lcap_(Lcap) {
    if (spec_.kind == ModuleSpec::Kind::simple) {
      block_ = std::make_unique<Block>(sys_, spec_.Lambda);
      if (!block_->trivial()) {
        auto ext = block_->extremes();
        x_ = block_->report().cls == DominanceClass::C_plus ? ext.longest : ext.shortest;
        base_off_ = block_->offset_of(block_->report().conjugator);
      }
    }
  }

  const AffineRootSystem& system() const { return sys_; }
  const ModuleSpec& spec() const { return spec_; }
  Block* block() { return block_.get(); }

  Complex numerator(const EvalPoint& p) {
    if (!in_Y(sys_, p)) throw DomainError("point is outside Y");
    switch (spec_.kind) {
      case ModuleSpec::Kind::verma: return 1;
      case ModuleSpec::Kind::quotient: return Complex(1) - p.zpow(spec_.sub_offset);
      default: break;
    }
    if (block_->trivial()) return 1;
    auto& kl = block_->kl();
    auto& T = kl.table();
    Complex s = 0;
    if (block_->report().cls == DominanceClass::C_plus) {
      int ix = T.id_of(x_);
      int small = 0;
      for (int l = x_.length(); l <= Lcap_; ++l) {
        kl.extend_to(l);
        double shell = 0;
        bool any = false;
        for (int y = T.layer_begin(l); y < T.layer_end(l); ++y) {
          if (!T.leq(ix, y)) continue;
          any = true;
          auto q = kl.Q(ix, y).at_one();
          if (q == 0) continue;
          if ((l - x_.length()) % 2) q = -q;
          Complex t = static_cast<double>(q) * p.zpow(block_->offset_of(T.element(y)) - base_off_);
          s += t;
          shell += std::abs(t);
        }
        if (!any) return s;
        small = (shell <= 1e-17 * std::max(1.0, std::abs(s))) ? small + 1 : 0;
        if (small >= 3) return s;
      }
      throw CutoffError("numerator sum did not converge within the length cap");
    }
    int iz = T.id_of(x_);
    for (int y : T.lower_interval(iz)) {
      auto c = kl.P(y, iz).at_one();
      if ((x_.length() - T.length(y)) % 2) c = -c;
      s += static_cast<double>(c) * p.zpow(block_->offset_of(T.element(y)) - base_off_);
    }
    return s;
  }

  Complex value(const EvalPoint& p) {
    auto R = eval_R_converged(sys_, p);
    return numerator(p) / R.value;
  }

 private:
  AffineRootSystem sys_;
  ModuleSpec spec_;
  int Lcap_;
  std::unique_ptr<Block> block_;
  CoxeterElement x_;
  RootVec base_off_;
};

enum class PoleVerdict { pole, no_pole, inconclusive };

inline const char* to_string(PoleVerdict v) {
  switch (v) {
    case PoleVerdict::pole: return "pole";
    case PoleVerdict::no_pole: return "no_pole";
    default: return "inconclusive";
  }
}

struct PathSample {
  double t = 0;
  EvalPoint point;
  double abs_one_minus_z = 0;  // |1 - z^alpha|
  double abs_F = 0;
};

struct PoleScanReport {
  RootVec root;
  double order = 0;  // minus the fitted slope
  double residue = 0;
  PoleVerdict verdict = PoleVerdict::inconclusive;
  bool order_violation = false;  // fitted order clearly above 1
  std::vector<PathSample> path;
};

struct PoleScanOptions {
  double t0 = 0.1;
  double ratio = 0.5;
  int points = 8;
  double tol = 0.15;
  double min_other = 0.05;  // closest allowed approach to another hyperplane
};

// Moves h along the fundamental coweight dual to the largest classical
// coordinate of alpha, keeping delta(h) fixed, so that alpha(h) = t.
inline PoleScanReport pole_scan(ModuleEvaluator& ev, const RootVec& alpha, const EvalPoint& base,
                                const PoleScanOptions& opt = {}) {
  const auto& sys = ev.system();
  if (!sys.is_real_root(alpha) || !is_positive(alpha)) throw PreconditionError("pole scan needs a positive real root");
  if (!in_Y(sys, base)) throw DomainError("base point is outside Y");
  auto cl = sys.classical_projection(alpha);
  std::size_t j = 0;
  for (std::size_t i = 0; i < cl.size(); ++i)
    if (std::abs(cl[i]) > std::abs(cl[j])) j = i;
  double cj = static_cast<double>(cl[j]);
  RootVec dir(sys.dim(), 0);  // values alpha_i(omega_j^vee)
  dir[j + 1] = 1;
  dir[0] = -sys.marks()[j + 1];
  PoleScanReport rep;
  rep.root = alpha;
  Complex a0 = base.pair(alpha);
  double hmax = 0;
  for (auto c : base.h) hmax = std::max(hmax, std::abs(c));
  std::vector<double> xs, ys;
  for (int k = 0; k < opt.points; ++k) {
    double t = opt.t0 * std::pow(opt.ratio, k);
    Complex s = (Complex(t) - a0) / cj;
    EvalPoint p = base;
    for (std::size_t i = 0; i < sys.dim(); ++i) p.h[i] += s * static_cast<double>(dir[i]);
    if (!in_Y(sys, p)) throw DomainError("scan path left Y");
    // Other hyperplanes: only finitely many cl + k delta can come close.
    double dre = delta_of(sys, p).real();
    double span = 0;
    for (auto c : p.h) span += std::abs(c);
    auto kmax = static_cast<std::int64_t>(std::ceil((span + 1) / dre)) + 1;
    for (const auto& c : sys.classical_roots()) {
      for (std::int64_t d = detail::first_degree(sys, c, nullptr); d <= kmax; ++d) {
        RootVec beta = sys.lift(c, d);
        if (beta == alpha) continue;
        if (std::abs(p.pair(beta)) < opt.min_other) throw DomainError("scan path approaches another root hyperplane");
      }
    }
    Complex F = ev.value(p);
    double om = std::abs(Complex(1) - p.zpow(alpha));
    rep.path.push_back({t, p, om, std::abs(F)});
    xs.push_back(std::log(om));
    ys.push_back(std::log(std::abs(F)));
  }
  auto [icpt, slope] = detail::linear_fit(xs, ys);
  (void)icpt;
  rep.order = -slope;
  const auto& last = rep.path.back();
  rep.residue = last.abs_F * last.abs_one_minus_z;
  if (std::abs(slope + 1) <= opt.tol) rep.verdict = PoleVerdict::pole;
  else if (std::abs(slope) <= opt.tol) rep.verdict = PoleVerdict::no_pole;
  rep.order_violation = rep.order > 1 + opt.tol;
  return rep;
}

// Roots of Pi(lambda) guaranteed not to be poles.
inline std::vector<RootVec> predicted_nonpoles(const AffineRootSystem& sys, const ModuleSpec& spec) {
  std::vector<RootVec> out;
  switch (spec.kind) {
    case ModuleSpec::Kind::verma: return out;
    case ModuleSpec::Kind::quotient: {
      if (!spec.reflection) return out;
      auto is = build_integral_system(sys, spec.Lambda);
      if (std::find(is.simple.begin(), is.simple.end(), *spec.reflection) != is.simple.end())
        out.push_back(*spec.reflection);
      return out;
    }
    default: break;
  }
  Block b(sys, spec.Lambda);
  if (b.trivial()) return out;
  auto ext = b.extremes();
  const auto& G = b.group();
  bool plus = b.report().cls == DominanceClass::C_plus;
  const auto& x = plus ? ext.longest : ext.shortest;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    bool up = !G.is_left_descent(x, i);
    if (up == plus) out.push_back(G.generators()[i]);
  }
  return out;
}

struct IntegrabilityReport {
  bool dominant_integral = false;  // Lambda in P^+
  bool numerically_holomorphic = false;
  bool agree = false;
  std::vector<PoleScanReport> scans;
};

// Compares Lambda in P^+ with the absence of poles of ch L(Lambda) on the scan set.
inline IntegrabilityReport integrability_check(const AffineRootSystem& sys, const Weight& Lambda,
                                               const std::vector<RootVec>& scan_set, const EvalPoint& base,
                                               const PoleScanOptions& opt = {}) {
  detail::require_noncritical(sys, Lambda);
  IntegrabilityReport rep;
  rep.dominant_integral = true;
  for (const auto& l : Lambda.labels(sys)) {
    Scalar s = l + Scalar(1);
    rep.dominant_integral = rep.dominant_integral && s.is_integer() && s.as_int() > 0;
  }
  ModuleEvaluator ev(sys, ModuleSpec::simple(Lambda));
  rep.numerically_holomorphic = true;
  for (const auto& a : scan_set) {
    rep.scans.push_back(pole_scan(ev, a, base, opt));
    if (rep.scans.back().verdict != PoleVerdict::no_pole) rep.numerically_holomorphic = false;
  }
  rep.agree = rep.dominant_integral == rep.numerically_holomorphic;
  return rep;
}

}  // namespace affchar
