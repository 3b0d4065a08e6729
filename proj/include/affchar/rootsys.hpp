#pragma once

// Untwisted affine root systems built from finite Cartan data.
//
// Roots are integer vectors over the simple roots alpha_0..alpha_n, with
// alpha_0 the affine node. The invariant form is normalized so that long
// roots of the finite part have norm 2.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affchar/errors.hpp"
#include "affchar/scalar.hpp"

namespace affchar {

using RootVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline std::int64_t height(const RootVec& v) {
  std::int64_t h = 0;
  for (auto c : v) h += c;
  return h;
}

inline bool is_zero(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
}

inline bool is_nonnegative(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c >= 0; });
}

// Positive means nonzero with all coordinates >= 0; roots are always
// either positive or negative.
inline bool is_positive(const RootVec& v) { return is_nonnegative(v) && !is_zero(v); }
inline bool is_negative(const RootVec& v) {
  return !is_zero(v) &&
         std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c <= 0; });
}

inline RootVec operator+(RootVec a, const RootVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline RootVec operator-(RootVec a, const RootVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline RootVec operator-(RootVec a) {
  for (auto& c : a) c = -c;
  return a;
}
inline RootVec operator*(std::int64_t k, RootVec a) {
  for (auto& c : a) c *= k;
  return a;
}

// Orders by height, then lexicographically.
inline bool height_lex_less(const RootVec& a, const RootVec& b) {
  auto ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

struct Root {
  RootVec coords;
  bool is_real = true;
  int mult = 1;
  std::int64_t height = 0;
  std::int64_t delta_degree = 0;  // coefficient of delta, <D, alpha>

  friend bool operator==(const Root&, const Root&) = default;
};

namespace detail {

// Gram matrix (alpha_i, alpha_j) of a finite simple root system, long roots
// of norm 2. Numbering follows Bourbaki.
inline RationalMatrix finite_gram(char type, int n) {
  auto bad = [&] {
    return UsageError("unknown finite type " + std::string(1, type) + std::to_string(n));
  };
  if (n < 1) throw bad();
  RationalMatrix g(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), 0));
  auto link = [&](int i, int j, Rational v) {
    g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
    g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = v;
  };
  auto diag = [&](int i, Rational v) {
    g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = v;
  };
  switch (type) {
    case 'A':
      for (int i = 1; i <= n; ++i) diag(i, 2);
      for (int i = 1; i < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      if (n < 2) throw bad();
      for (int i = 1; i < n; ++i) diag(i, 2);
      diag(n, 1);
      for (int i = 1; i < n; ++i) link(i, i + 1, -1);
      break;
    case 'C':
      if (n < 2) throw bad();
      for (int i = 1; i < n; ++i) diag(i, 1);
      diag(n, 2);
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1, Rational(-1, 2));
      link(n - 1, n, -1);
      break;
    case 'D':
      if (n < 4) throw bad();
      for (int i = 1; i <= n; ++i) diag(i, 2);
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n, -1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw bad();
      for (int i = 1; i <= n; ++i) diag(i, 2);
      link(1, 3, -1);
      link(2, 4, -1);
      for (int i = 3; i < n; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      if (n != 4) throw bad();
      diag(1, 2), diag(2, 2), diag(3, 1), diag(4, 1);
      link(1, 2, -1), link(2, 3, -1), link(3, 4, Rational(-1, 2));
      break;
    case 'G':
      if (n != 2) throw bad();
      diag(1, Rational(2, 3)), diag(2, 2);
      link(1, 2, -1);
      break;
    default:
      throw bad();
  }
  return g;
}

}  // namespace detail

class AffineRootSystem {
 public:
  // Untwisted affine extension of the finite type `type` of rank `rank`.
  static AffineRootSystem build(char type, int rank) {
    AffineRootSystem s;
    s.type_ = type;
    s.n_ = rank;
    auto fin = detail::finite_gram(type, rank);
    auto n = static_cast<std::size_t>(rank);

    // Finite positive roots by closure under simple reflections.
    auto fin_pair = [&](std::size_t i, const RootVec& v) {
      // <alpha_i^vee, v> = 2 (alpha_i, v) / (alpha_i, alpha_i)
      Rational num = 0;
      for (std::size_t j = 0; j < n; ++j) num += fin[i][j] * v[j];
      Rational r = 2 * num / fin[i][i];
      return static_cast<std::int64_t>(numerator(r));
    };
    std::set<RootVec> seen;
    std::vector<RootVec> frontier;
    for (std::size_t i = 0; i < n; ++i) {
      RootVec e(n, 0);
      e[i] = 1;
      seen.insert(e);
      frontier.push_back(e);
    }
    while (!frontier.empty()) {
      std::vector<RootVec> next;
      for (const auto& v : frontier) {
        for (std::size_t i = 0; i < n; ++i) {
          RootVec w = v;
          w[i] -= fin_pair(i, v);
          if (is_positive(w) && seen.insert(w).second) next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
    std::vector<RootVec> pos(seen.begin(), seen.end());
    std::sort(pos.begin(), pos.end(), height_lex_less);
    const RootVec theta = pos.back();  // unique root of maximal height

    s.classical_.clear();
    for (const auto& v : pos) s.classical_.push_back(-v);
    for (const auto& v : pos) s.classical_.push_back(v);
    std::sort(s.classical_.begin(), s.classical_.end(), height_lex_less);

    // Affine Gram: alpha_0 = delta - theta, (alpha_0, alpha_0) = (theta, theta) = 2.
    s.gram_.assign(n + 1, std::vector<Rational>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.gram_[i + 1][j + 1] = fin[i][j];
    Rational theta_norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) theta_norm += theta[i] * fin[i][j] * theta[j];
    s.gram_[0][0] = theta_norm;
    for (std::size_t j = 0; j < n; ++j) {
      Rational tj = 0;
      for (std::size_t i = 0; i < n; ++i) tj += theta[i] * fin[i][j];
      s.gram_[0][j + 1] = -tj;
      s.gram_[j + 1][0] = -tj;
    }

    s.cartan_.assign(n + 1, RootVec(n + 1, 0));
    s.eps_.assign(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      s.eps_[i] = s.gram_[i][i] / 2;
      for (std::size_t j = 0; j <= n; ++j) {
        Rational a = 2 * s.gram_[i][j] / s.gram_[i][i];
        if (!is_integer(a)) throw ConsistencyError("non-integral Cartan entry");
        s.cartan_[i][j] = static_cast<std::int64_t>(numerator(a));
      }
    }

    s.marks_.assign(n + 1, 1);
    for (std::size_t i = 0; i < n; ++i) s.marks_[i + 1] = theta[i];
    s.theta_ = theta;
    s.coxeter_ = height(s.marks_);
    return s;
  }

  static AffineRootSystem build(std::string_view type, int rank) {
    if (type.size() != 1) throw UsageError("unknown type label '" + std::string(type) + "'");
    char t = type[0];
    if (t >= 'a' && t <= 'g') t = static_cast<char>(t - 'a' + 'A');
    return build(t, rank);
  }

  char type() const { return type_; }
  int rank() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) + 1; }
  std::string id() const { return std::string(1, type_) + std::to_string(n_) + "^(1)"; }

  const IntMatrix& cartan() const { return cartan_; }
  const RationalMatrix& gram() const { return gram_; }
  const std::vector<Rational>& symmetrizer() const { return eps_; }
  const RootVec& marks() const { return marks_; }
  const RootVec& delta() const { return marks_; }
  const RootVec& highest_root() const { return theta_; }  // finite coordinates
  std::int64_t coxeter_number() const { return coxeter_; }
  std::vector<std::int64_t> rho_labels() const { return std::vector<std::int64_t>(dim(), 1); }

  // Delta_cl in finite coordinates (length n), both signs, height-lex order.
  const std::vector<RootVec>& classical_roots() const { return classical_; }
  int imaginary_mult() const { return n_; }
  int width_bound() const { return static_cast<int>(classical_.size()) + n_; }

  RootVec simple_root(std::size_t i) const {
    RootVec e(dim(), 0);
    e[i] = 1;
    return e;
  }

  Rational form(const RootVec& a, const RootVec& b) const {
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j] != 0) s += gram_[i][j] * a[i] * b[j];
      }
    }
    return s;
  }

  Rational norm2(const RootVec& a) const { return form(a, a); }

  // <alpha^vee, v> for a real root alpha and a root-lattice vector v.
  std::int64_t coroot_pairing(const RootVec& alpha, const RootVec& v) const {
    Rational n2 = norm2(alpha);
    if (n2 == 0) throw DomainError("coroot of an imaginary root");
    Rational r = 2 * form(alpha, v) / n2;
    if (!is_integer(r)) throw ConsistencyError("non-integral coroot pairing on root lattice");
    return static_cast<std::int64_t>(numerator(r));
  }

  // s_alpha(v) = v - <alpha^vee, v> alpha.
  RootVec reflect(const RootVec& alpha, const RootVec& v) const {
    std::int64_t k = coroot_pairing(alpha, v);
    RootVec out = v;
    for (std::size_t i = 0; i < dim(); ++i) out[i] -= k * alpha[i];
    return out;
  }

  // Image modulo delta, in the basis alpha_1..alpha_n of E_cl.
  RootVec classical_projection(const RootVec& v) const {
    RootVec out(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i + 1] - v[0] * theta_[i];
    return out;
  }

  // k * delta + (0, cl).
  RootVec lift(const RootVec& cl, std::int64_t k) const {
    RootVec out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) out[i] = k * marks_[i];
    for (std::size_t i = 0; i < cl.size(); ++i) out[i + 1] += cl[i];
    return out;
  }

  std::int64_t delta_degree(const RootVec& v) const { return v[0]; }

  bool is_imaginary_root(const RootVec& v) const {
    return !is_zero(v) && is_zero(classical_projection(v));
  }

  bool is_real_root(const RootVec& v) const {
    auto cl = classical_projection(v);
    return std::binary_search(classical_.begin(), classical_.end(), cl, height_lex_less);
  }

  bool is_root(const RootVec& v) const { return is_real_root(v) || is_imaginary_root(v); }

  Root make_root(const RootVec& v) const {
    Root r;
    r.coords = v;
    r.is_real = is_real_root(v);
    if (!r.is_real && !is_imaginary_root(v))
      throw PreconditionError("vector is not a root of " + id());
    r.mult = r.is_real ? 1 : n_;
    r.height = height(v);
    r.delta_degree = delta_degree(v);
    return r;
  }

  // All positive roots of height <= H, generated family by family as
  // cl(alpha) + k delta; sorted by height then coordinates.
  std::vector<Root> positive_roots_up_to(std::int64_t H) const {
    std::vector<Root> out;
    if (H < 1) return out;
    for (std::int64_t k = 0; k * coxeter_ - height(theta_) <= H; ++k) {
      for (const auto& cl : classical_) {
        if (k == 0 && !is_positive(cl)) continue;
        RootVec v = lift(cl, k);
        if (height(v) > H) continue;
        out.push_back(Root{v, true, 1, height(v), k});
      }
      if (k >= 1 && k * coxeter_ <= H) {
        RootVec v = lift(RootVec(static_cast<std::size_t>(n_), 0), k);
        out.push_back(Root{v, false, n_, height(v), k});
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Root& a, const Root& b) { return height_lex_less(a.coords, b.coords); });
    return out;
  }

  // Positive real roots with delta-degree <= kmax.
  std::vector<Root> positive_real_roots_by_degree(std::int64_t kmax) const {
    std::vector<Root> out;
    for (std::int64_t k = 0; k <= kmax; ++k) {
      for (const auto& cl : classical_) {
        if (k == 0 && !is_positive(cl)) continue;
        RootVec v = lift(cl, k);
        out.push_back(Root{v, true, 1, height(v), k});
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Root& a, const Root& b) { return height_lex_less(a.coords, b.coords); });
    return out;
  }

  friend bool operator==(const AffineRootSystem& a, const AffineRootSystem& b) {
    return a.type_ == b.type_ && a.n_ == b.n_;
  }

 private:
  char type_ = 'A';
  int n_ = 1;
  IntMatrix cartan_;
  RationalMatrix gram_;
  std::vector<Rational> eps_;
  RootVec marks_;
  RootVec theta_;
  std::int64_t coxeter_ = 0;
  std::vector<RootVec> classical_;
};

}  // namespace affchar
