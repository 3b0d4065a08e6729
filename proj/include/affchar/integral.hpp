#pragma once

// Integral root subsystems, their simple systems and Weyl groups, and the
// dominance classification of weights with respect to them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "affchar/errors.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/weight.hpp"
#include "affchar/weyl.hpp"

namespace affchar {

enum class ComponentType { finite, affine };

inline const char* to_string(ComponentType t) { return t == ComponentType::finite ? "finite" : "affine"; }

struct DiagramComponent {
  std::vector<int> nodes;
  ComponentType type = ComponentType::finite;
};

namespace detail {

// Counts positive and zero pivots of a symmetric rational matrix by
// symmetric elimination; nullopt when the matrix is not positive
// semidefinite.
inline std::optional<int> psd_corank(RationalMatrix m) {
  std::size_t n = m.size();
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      if (m[k][k] < 0) return std::nullopt;
      if (m[k][k] > 0 && (piv == n || m[k][k] > m[piv][piv])) piv = k;
    }
    if (piv == n) {
      int rest = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        ++rest;
        for (std::size_t j = 0; j < n; ++j)
          if (!used[j] && m[i][j] != 0) return std::nullopt;
      }
      return rest;
    }
    used[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || m[i][piv] == 0) continue;
      Rational f = m[i][piv] / m[piv][piv];
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j]) m[i][j] -= f * m[piv][j];
    }
  }
  return 0;
}

}  // namespace detail

// Exact rank of a set of integer vectors.
inline std::size_t vector_rank(const std::vector<RootVec>& rows) {
  if (rows.empty()) return 0;
  RationalMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::size_t rank = 0, cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Height then reversed lexicographic order, so that alpha_0 precedes alpha_1.
inline bool simple_order_less(const RootVec& a, const RootVec& b) {
  auto ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a > b;
}

struct IntegralSystem {
  AffineRootSystem sys;
  Weight lambda;
  std::int64_t cutoff = 0;
  std::vector<RootVec> positive_roots;  // Delta(lambda)_+, height <= cutoff
  std::vector<RootVec> zero_roots;      // pairing with lambda + rho equal to 0
  std::vector<RootVec> simple;          // Pi(lambda)
  bool stable = true;
  IntMatrix diagram;  // diagram[i][j] = <simple_i^vee, simple_j>
  std::vector<DiagramComponent> components;
  std::vector<int> zero_simples;  // indices into `simple`
  int w0_longest_length = 0;

  bool empty() const { return simple.empty(); }

  ReflectionGroup group() const { return ReflectionGroup(sys, simple); }

  // <alpha^vee, lambda + rho> for alpha in Pi(lambda), as integers.
  std::int64_t simple_pairing(std::size_t i) const {
    return coroot_pairing_shifted(sys, simple[i], lambda).as_int();
  }
};

namespace detail {

inline void require_noncritical(const AffineRootSystem& sys, const Weight& lambda) {
  if (is_critical(sys, lambda))
    throw DomainError("weight is at the critical level (delta, lambda + rho) = 0");
}

// Positive real roots with integral shifted pairing, plus the zero ones.
inline void integral_roots(const AffineRootSystem& sys, const Weight& lambda, std::int64_t H,
                           std::vector<RootVec>& roots, std::vector<RootVec>* zeros) {
  auto lab = lambda.labels(sys);
  std::vector<Scalar> shifted(sys.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i)
    shifted[i] = (lab[i] + Scalar(1)) * sys.symmetrizer()[i];
  for (const auto& r : sys.positive_roots_up_to(H)) {
    if (!r.is_real) continue;
    Scalar s;
    for (std::size_t i = 0; i < sys.dim(); ++i)
      if (r.coords[i] != 0) s += shifted[i] * Rational(r.coords[i]);
    s *= Rational(2) / sys.norm2(r.coords);
    if (!s.is_integer()) continue;
    roots.push_back(r.coords);
    if (zeros && s.is_zero()) zeros->push_back(r.coords);
  }
}

inline std::vector<RootVec> indecomposables(const std::vector<RootVec>& roots) {
  std::set<RootVec> all(roots.begin(), roots.end());
  std::vector<RootVec> out;
  for (const auto& a : roots) {
    bool dec = false;
    for (const auto& b : roots) {
      if (height(b) >= height(a)) continue;
      if (all.count(a - b)) {
        dec = true;
        break;
      }
    }
    if (!dec) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), simple_order_less);
  return out;
}

}  // namespace detail

// Delta(lambda)_+ up to height H and Delta_0(lambda)_+.
inline IntegralSystem integral_subsystem(const AffineRootSystem& sys, const Weight& lambda,
                                         std::int64_t H) {
  detail::require_noncritical(sys, lambda);
  if (H < 1) throw PreconditionError("cutoff must be positive");
  IntegralSystem is;
  is.sys = sys;
  is.lambda = lambda;
  is.cutoff = H;
  detail::integral_roots(sys, lambda, H, is.positive_roots, &is.zero_roots);
  return is;
}

namespace detail {

// Indecomposable members of `roots` (height <= H) passing the defining test
// of a simple root against every member of `window`.
inline std::vector<RootVec> simple_candidates(const AffineRootSystem& sys, const std::vector<RootVec>& roots,
                                              const std::vector<RootVec>& window) {
  std::vector<RootVec> out;
  for (const auto& a : indecomposables(roots)) {
    bool ok = true;
    for (const auto& b : window) {
      if (b != a && !is_positive(sys.reflect(a, b))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

}  // namespace detail

// Pi(lambda): indecomposables that pass the simple-root test on a window of
// four times the cutoff, compared against the same computation at twice the
// cutoff.
inline void compute_simple_system(IntegralSystem& is) {
  auto H = is.cutoff;
  std::vector<RootVec> w4, w8, r2;
  detail::integral_roots(is.sys, is.lambda, 4 * H, w4, nullptr);
  detail::integral_roots(is.sys, is.lambda, 8 * H, w8, nullptr);
  for (const auto& r : w4)
    if (height(r) <= 2 * H) r2.push_back(r);
  is.simple = detail::simple_candidates(is.sys, is.positive_roots, w4);
  is.stable = (is.simple == detail::simple_candidates(is.sys, r2, w8));
  if (is.simple.size() > is.sys.classical_roots().size())
    throw ConsistencyError("simple system larger than the classical root count");
}

inline void compute_diagram(IntegralSystem& is) {
  auto m = is.simple.size();
  is.diagram.assign(m, RootVec(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      is.diagram[i][j] = is.sys.coroot_pairing(is.simple[i], is.simple[j]);
      if (i != j && is.diagram[i][j] > 0) throw ConsistencyError("positive off-diagonal entry in Pi(lambda)");
    }
  is.components.clear();
  std::vector<bool> seen(m, false);
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s]) continue;
    DiagramComponent c;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      c.nodes.push_back(static_cast<int>(u));
      for (std::size_t v = 0; v < m; ++v)
        if (!seen[v] && is.diagram[u][v] != 0) {
          seen[v] = true;
          q.push(v);
        }
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    RationalMatrix g;
    for (int a : c.nodes) {
      std::vector<Rational> row;
      for (int b : c.nodes)
        row.push_back(is.sys.form(is.simple[static_cast<std::size_t>(a)], is.simple[static_cast<std::size_t>(b)]));
      g.push_back(std::move(row));
    }
    auto corank = detail::psd_corank(g);
    if (!corank || *corank > 1) throw ConsistencyError("diagram component of neither finite nor affine type");
    c.type = *corank == 0 ? ComponentType::finite : ComponentType::affine;
    is.components.push_back(std::move(c));
  }
}

// The finite parabolic subgroup generated by the given generator indices.
inline std::vector<CoxeterElement> parabolic_elements(const ReflectionGroup& G, const std::vector<int>& gens,
                                                      std::size_t limit = 200000) {
  std::vector<CoxeterElement> out{G.identity()};
  std::unordered_set<Canonical, VecHash> seen{G.identity().canonical};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (int j : gens) {
      auto c = G.right_multiply(out[k].canonical, static_cast<std::size_t>(j));
      if (seen.insert(c).second) {
        out.push_back(G.from_canonical(c));
        if (out.size() > limit) throw CutoffError("parabolic subgroup is not finite within the limit");
      }
    }
  }
  return out;
}

// Full construction: roots, Pi(lambda), diagram, Pi_0 and the length L of
// the longest element of W_0(lambda).
inline IntegralSystem build_integral_system(const AffineRootSystem& sys, const Weight& lambda,
                                            std::int64_t H = 0) {
  if (H <= 0) H = 20 * static_cast<std::int64_t>(sys.dim());
  auto is = integral_subsystem(sys, lambda, H);
  compute_simple_system(is);
  compute_diagram(is);
  for (std::size_t i = 0; i < is.simple.size(); ++i)
    if (coroot_pairing_shifted(sys, is.simple[i], lambda).is_zero()) is.zero_simples.push_back(static_cast<int>(i));
  if (!is.zero_simples.empty()) {
    int L = 0;
    for (const auto& e : parabolic_elements(is.group(), is.zero_simples)) L = std::max(L, e.length());
    is.w0_longest_length = L;
  }
  return is;
}

enum class DominanceClass { C_plus, C_minus, both_empty_integral };

inline const char* to_string(DominanceClass c) {
  switch (c) {
    case DominanceClass::C_plus: return "C_plus";
    case DominanceClass::C_minus: return "C_minus";
    default: return "both_empty_integral";
  }
}

struct DominanceReport {
  DominanceClass cls = DominanceClass::both_empty_integral;
  Weight dominant;
  CoxeterElement conjugator;          // input = conjugator . dominant
  std::optional<int> level_sign;      // nullopt for an irrational level
  IntegralSystem integral;            // for the input weight (same Pi as dominant)
};

// Moves Lambda into C^+ (positive rational level) or C^- (negative or
// irrational level) inside its W(Lambda)-orbit.
inline DominanceReport dominant_conjugate(const AffineRootSystem& sys, const Weight& Lambda,
                                          std::int64_t H = 0) {
  DominanceReport rep;
  rep.integral = build_integral_system(sys, Lambda, H);
  rep.level_sign = shifted_level(sys, Lambda).sign();
  auto G = rep.integral.group();
  rep.dominant = Lambda;
  rep.conjugator = G.identity();
  if (rep.integral.empty()) return rep;

  const bool raise = rep.level_sign && *rep.level_sign > 0;
  rep.cls = raise ? DominanceClass::C_plus : DominanceClass::C_minus;

  double mag = 0;
  for (const auto& o : Lambda.offset) mag += std::abs(o.approx());
  for (const auto& l : Lambda.labels(sys)) mag += std::abs(l.approx());
  const auto bound = static_cast<std::int64_t>(10 * (mag + 10));

  std::vector<int> word;
  Weight mu = Lambda;
  for (std::int64_t it = 0;; ++it) {
    if (it > bound) throw CutoffError("dominance iteration bound exceeded");
    int pick = -1;
    for (std::size_t i = 0; i < G.rank(); ++i) {
      auto k = coroot_pairing_shifted(sys, G.generators()[i], mu).as_int();
      if ((raise && k < 0) || (!raise && k > 0)) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0) break;
    mu = G.act_on_weight(G.generator(static_cast<std::size_t>(pick)), mu, true);
    word.push_back(pick);
  }
  rep.dominant = mu;
  rep.conjugator = G.from_word(word);
  return rep;
}

struct CosetExtremes {
  std::vector<int> zero_generators;
  CoxeterElement shortest;  // w_s
  CoxeterElement longest;   // w_l
};

// Shortest and longest elements of w W_0(lambda); lambda must be in C^+ or
// C^- so that Pi_0 generates its stabilizer.
inline CosetExtremes stabilizer_and_extremes(const IntegralSystem& is, const CoxeterElement& w) {
  auto G = is.group();
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < is.simple.size(); ++i) {
    auto k = is.simple_pairing(i);
    plus = plus && k >= 0;
    minus = minus && k <= 0;
  }
  if (!plus && !minus) throw PreconditionError("weight lies in neither C^+ nor C^-");
  CosetExtremes ce;
  ce.zero_generators = is.zero_simples;
  Canonical c = w.canonical;
  for (bool moved = true; moved;) {
    moved = false;
    for (int j : is.zero_simples)
      if (G.image_negative(c, static_cast<std::size_t>(j))) {
        c = G.right_multiply(c, static_cast<std::size_t>(j));
        moved = true;
      }
  }
  ce.shortest = G.from_canonical(c);
  for (bool moved = true; moved;) {
    moved = false;
    for (int j : is.zero_simples)
      if (!G.image_negative(c, static_cast<std::size_t>(j))) {
        c = G.right_multiply(c, static_cast<std::size_t>(j));
        moved = true;
      }
  }
  ce.longest = G.from_canonical(c);
  return ce;
}

}  // namespace affchar
