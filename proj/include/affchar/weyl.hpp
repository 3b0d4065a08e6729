#pragma once

// Coxeter groups realized as reflection groups on the affine root lattice.
//
// A ReflectionGroup is given by generator roots g_0..g_{m-1}. For the
// ambient Weyl group these are the simple roots; for an integral Weyl group
// W(lambda) they are the roots of Pi(lambda). Elements are identified by the
// images w(g_i), which determine w because the reflection representation is
// faithful on the span of the generators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "affchar/errors.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/weight.hpp"

namespace affchar {

using Canonical = std::vector<std::int64_t>;

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// An element of a realized Coxeter group. `word` is always the reduced word
// obtained by peeling left descents with the lowest generator index first.
struct CoxeterElement {
  std::vector<int> word;
  Canonical canonical;  // images w(g_0), ..., w(g_{m-1}), flattened

  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }

  friend bool operator==(const CoxeterElement& a, const CoxeterElement& b) {
    return a.canonical == b.canonical;
  }
};

class ReflectionGroup {
 public:
  ReflectionGroup() = default;

  ReflectionGroup(AffineRootSystem sys, std::vector<RootVec> generators)
      : sys_(std::move(sys)), gens_(std::move(generators)) {
    const std::size_t m = gens_.size();
    const std::size_t d = sys_.dim();
    cartan_.assign(m, RootVec(m, 0));
    coroot_rows_.assign(m, RootVec(d, 0));
    for (std::size_t j = 0; j < m; ++j) {
      if (!sys_.is_real_root(gens_[j]) || !is_positive(gens_[j]))
        throw PreconditionError("generators must be positive real roots");
      for (std::size_t i = 0; i < m; ++i) cartan_[j][i] = sys_.coroot_pairing(gens_[j], gens_[i]);
      for (std::size_t k = 0; k < d; ++k)
        coroot_rows_[j][k] = sys_.coroot_pairing(gens_[j], sys_.simple_root(k));
    }
    identity_.canonical.reserve(m * d);
    for (const auto& g : gens_) identity_.canonical.insert(identity_.canonical.end(), g.begin(), g.end());
  }

  // The Weyl group of `sys` with its simple reflections.
  static ReflectionGroup ambient(const AffineRootSystem& sys) {
    std::vector<RootVec> gens;
    for (std::size_t i = 0; i < sys.dim(); ++i) gens.push_back(sys.simple_root(i));
    return ReflectionGroup(sys, std::move(gens));
  }

  const AffineRootSystem& system() const { return sys_; }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<RootVec>& generators() const { return gens_; }
  // cartan()[j][i] = <g_j^vee, g_i>.
  const IntMatrix& cartan() const { return cartan_; }

  std::string id() const {
    std::string s = sys_.id() + "|";
    for (const auto& g : gens_) {
      s += "[";
      for (std::size_t k = 0; k < g.size(); ++k) s += (k ? "," : "") + std::to_string(g[k]);
      s += "]";
    }
    return s;
  }

  // Coxeter exponent m_ij; 0 encodes infinity.
  int coxeter_m(std::size_t i, std::size_t j) const {
    if (i == j) return 1;
    auto p = cartan_[i][j] * cartan_[j][i];
    switch (p) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      default: return 0;
    }
  }

  std::int64_t pairing(std::size_t j, const RootVec& v) const {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += coroot_rows_[j][k] * v[k];
    return s;
  }

  // s_{g_j}(v).
  RootVec reflect(std::size_t j, RootVec v) const {
    auto k = pairing(j, v);
    if (k != 0)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= k * gens_[j][i];
    return v;
  }

  RootVec image(const Canonical& c, std::size_t i) const {
    auto d = sys_.dim();
    return RootVec(c.begin() + static_cast<std::ptrdiff_t>(i * d),
                   c.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }

  bool image_negative(const Canonical& c, std::size_t i) const {
    auto d = sys_.dim();
    bool any = false;
    for (std::size_t k = i * d; k < (i + 1) * d; ++k) {
      if (c[k] > 0) return false;
      any = any || c[k] < 0;
    }
    return any;
  }

  // canonical(w s_j) from canonical(w).
  Canonical right_multiply(const Canonical& c, std::size_t j) const {
    auto d = sys_.dim();
    Canonical out = c;
    for (std::size_t i = 0; i < rank(); ++i) {
      auto k = cartan_[j][i];
      if (k == 0) continue;
      for (std::size_t t = 0; t < d; ++t) out[i * d + t] -= k * c[j * d + t];
    }
    return out;
  }

  // canonical(s_j w) from canonical(w).
  Canonical left_multiply(std::size_t j, const Canonical& c) const {
    auto d = sys_.dim();
    Canonical out = c;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t k = 0;
      for (std::size_t t = 0; t < d; ++t) k += coroot_rows_[j][t] * c[i * d + t];
      if (k == 0) continue;
      for (std::size_t t = 0; t < d; ++t) out[i * d + t] -= k * gens_[j][t];
    }
    return out;
  }

  Canonical canonical_of_word(const std::vector<int>& word) const {
    Canonical c = identity_.canonical;
    for (int j : word) {
      check_index(j);
      c = right_multiply(c, static_cast<std::size_t>(j));
    }
    return c;
  }

  const CoxeterElement& identity() const { return identity_; }

  // Reduced word by peeling right descents (lowest index first); the
  // letters come out last-to-first.
  std::vector<int> right_peel(Canonical c) const {
    std::vector<int> rev;
    for (;;) {
      std::size_t j = 0;
      while (j < rank() && !image_negative(c, j)) ++j;
      if (j == rank()) break;
      c = right_multiply(c, j);
      rev.push_back(static_cast<int>(j));
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  CoxeterElement from_canonical(const Canonical& c) const {
    auto any = right_peel(c);
    std::reverse(any.begin(), any.end());  // a reduced word of w^{-1}
    Canonical inv = canonical_of_word(any);
    // Right descents of w^{-1}, lowest first, are the left descents of w.
    std::vector<int> word;
    for (;;) {
      std::size_t j = 0;
      while (j < rank() && !image_negative(inv, j)) ++j;
      if (j == rank()) break;
      inv = right_multiply(inv, j);
      word.push_back(static_cast<int>(j));
    }
    return CoxeterElement{std::move(word), c};
  }

  CoxeterElement from_word(const std::vector<int>& word) const {
    return from_canonical(canonical_of_word(word));
  }

  CoxeterElement generator(std::size_t j) const { return from_word({static_cast<int>(j)}); }

  CoxeterElement multiply(const CoxeterElement& a, const CoxeterElement& b) const {
    Canonical c = a.canonical;
    for (int j : b.word) c = right_multiply(c, static_cast<std::size_t>(j));
    return from_canonical(c);
  }

  CoxeterElement inverse(const CoxeterElement& w) const {
    std::vector<int> rev(w.word.rbegin(), w.word.rend());
    return from_word(rev);
  }

  // w(v) for a root-lattice vector v.
  RootVec act_on_root(const CoxeterElement& w, RootVec v) const {
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
      v = reflect(static_cast<std::size_t>(*it), std::move(v));
    return v;
  }

  bool is_right_descent(const CoxeterElement& w, std::size_t j) const {
    return image_negative(w.canonical, j);
  }

  // s_j w < w iff w^{-1}(g_j) is negative.
  bool is_left_descent(const CoxeterElement& w, std::size_t j) const {
    RootVec v = gens_[j];
    for (int k : w.word) v = reflect(static_cast<std::size_t>(k), std::move(v));
    return is_negative(v);
  }

  std::vector<int> reduced_word(const CoxeterElement& w) const { return from_canonical(w.canonical).word; }

  // Bruhat order: walk a reduced word of y from the left; at each letter s
  // replace x by min(x, sx). Then x <= y iff x ends at the identity.
  bool bruhat_leq(const CoxeterElement& x, const CoxeterElement& y) const {
    if (x.length() > y.length()) return false;
    std::vector<int> rev(x.word.rbegin(), x.word.rend());
    Canonical xinv = canonical_of_word(rev);
    int lx = x.length();
    for (std::size_t k = 0; k < y.word.size(); ++k) {
      int remaining = y.length() - static_cast<int>(k);
      if (lx > remaining) return false;
      auto s = static_cast<std::size_t>(y.word[k]);
      if (image_negative(xinv, s)) {
        xinv = right_multiply(xinv, s);
        --lx;
      }
    }
    return lx == 0;
  }

  // S(w) = Delta_+ cap w^{-1} Delta_- (inside the group's own positive
  // system), read off a reduced word of w^{-1}.
  std::vector<RootVec> inversion_set(const CoxeterElement& w) const {
    std::vector<RootVec> out;
    std::vector<int> u(w.word.rbegin(), w.word.rend());
    Canonical prefix = identity_.canonical;
    for (int j : u) {
      out.push_back(image(prefix, static_cast<std::size_t>(j)));
      prefix = right_multiply(prefix, static_cast<std::size_t>(j));
    }
    return out;
  }

  struct TelescopeTerm {
    Scalar coefficient;
    RootVec root;
  };

  struct Telescope {
    std::vector<TelescopeTerm> terms;
    Weight image;  // w(lambda), or w.lambda when shifted
  };

  // lambda - w lambda = sum_j <g_{i_{j+1}}^vee, lambda> beta_j with
  // beta_j = w^{(j)} g_{i_{j+1}}; with `shifted`, lambda is replaced by
  // lambda + rho and the image is the shifted action w.lambda.
  Telescope telescoping_sum(const std::vector<int>& word, const Weight& lambda, bool shifted) const {
    if (canonical_length(canonical_of_word(word)) != word.size())
      throw PreconditionError("telescoping sum needs a reduced word");
    Telescope t;
    t.image = lambda;
    Canonical prefix = identity_.canonical;
    for (int j : word) {
      auto js = static_cast<std::size_t>(j);
      Scalar coeff = shifted ? coroot_pairing_shifted(sys_, gens_[js], lambda)
                             : coroot_pairing(sys_, gens_[js], lambda);
      RootVec beta = image(prefix, js);
      for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i] != 0) t.image.offset[i] += coeff * Rational(beta[i]);
      t.terms.push_back({coeff, std::move(beta)});
      prefix = right_multiply(prefix, js);
    }
    return t;
  }

  Weight act_on_weight(const CoxeterElement& w, const Weight& lambda, bool shifted) const {
    return telescoping_sum(w.word, lambda, shifted).image;
  }

  // Cumulative ball sizes |{w : l(w) <= r}| for r = 0..rmax, by breadth
  // first search with canonical-form deduplication.
  std::vector<std::int64_t> growth_series(int rmax) const {
    std::vector<std::int64_t> out;
    std::unordered_set<Canonical, VecHash> prev, cur;
    std::vector<Canonical> shell{identity_.canonical};
    cur.insert(identity_.canonical);
    std::int64_t total = 1;
    out.push_back(total);
    for (int r = 1; r <= rmax; ++r) {
      std::vector<Canonical> next;
      std::unordered_set<Canonical, VecHash> seen;
      for (const auto& c : shell) {
        for (std::size_t j = 0; j < rank(); ++j) {
          if (image_negative(c, j)) continue;
          auto n = right_multiply(c, j);
          if (seen.insert(n).second) next.push_back(std::move(n));
        }
      }
      total += static_cast<std::int64_t>(next.size());
      out.push_back(total);
      shell = std::move(next);
    }
    return out;
  }

  std::int64_t growth_count(int r) const {
    if (r < 0) throw PreconditionError("growth radius must be nonnegative");
    return growth_series(r).back();
  }

 private:
  void check_index(int j) const {
    if (j < 0 || static_cast<std::size_t>(j) >= rank())
      throw UsageError("generator index " + std::to_string(j) + " out of range");
  }

  std::size_t canonical_length(const Canonical& c) const { return right_peel(c).size(); }

  AffineRootSystem sys_;
  std::vector<RootVec> gens_;
  IntMatrix cartan_;
  IntMatrix coroot_rows_;
  CoxeterElement identity_;
};

// Least-squares exponent of c(r) ~ C r^m over r in [rmin, rmax].
struct GrowthFit {
  double exponent = 0;
  double coefficient = 0;
};

inline GrowthFit fit_growth(const std::vector<std::int64_t>& cumulative, int rmin) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t r = static_cast<std::size_t>(std::max(rmin, 1)); r < cumulative.size(); ++r) {
    double x = std::log(static_cast<double>(r));
    double y = std::log(static_cast<double>(cumulative[r]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) throw PreconditionError("need at least two radii to fit growth");
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  double icpt = (sy - slope * sx) / cnt;
  return {slope, std::exp(icpt)};
}

// Smallest integer C with c(k) < C k^n for all measured k >= 1.
inline std::int64_t growth_constant(const std::vector<std::int64_t>& cumulative, int n) {
  std::int64_t best = 1;
  for (std::size_t k = 1; k < cumulative.size(); ++k) {
    BigInt kn = 1;
    for (int i = 0; i < n; ++i) kn *= static_cast<std::int64_t>(k);
    // need C * k^n > c(k)
    BigInt c = BigInt(cumulative[k]) / kn + 1;
    best = std::max(best, static_cast<std::int64_t>(c));
  }
  return best;
}

}  // namespace affchar
