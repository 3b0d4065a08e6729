#pragma once

// Kazhdan-Lusztig polynomials P_{x,y}, mu-coefficients and the inverse
// polynomials Q_{x,y} over an enumerated Coxeter table.

#include <cstdint>
#include <optional>
#include <vector>

#include "affchar/coxeter_table.hpp"
#include "affchar/errors.hpp"
#include "affchar/polynomial.hpp"
#include "affchar/scalar.hpp"

namespace affchar {

class KLTable {
 public:
  explicit KLTable(ReflectionGroup group) : table_(std::move(group)) {}

  CoxeterTable& table() { return table_; }
  const CoxeterTable& table() const { return table_; }
  const ReflectionGroup& group() const { return table_.group(); }

  // Largest l(y) for which P columns are stored.
  int frontier() const { return frontier_; }

  void extend_to(int L) { table_.extend_to(L); }

  const IntPolynomial& P(int x, int y) {
    ensure_P(y);
    const auto& col = P_[static_cast<std::size_t>(y)];
    if (static_cast<std::size_t>(x) >= col.size()) return zero_;
    return col[static_cast<std::size_t>(x)];
  }

  const IntPolynomial& Q(int x, int y) {
    ensure_Q(y);
    const auto& col = Q_[static_cast<std::size_t>(y)];
    if (static_cast<std::size_t>(x) >= col.size()) return zero_;
    return col[static_cast<std::size_t>(x)];
  }

  IntPolynomial P(const CoxeterElement& x, const CoxeterElement& y) {
    int iy = table_.id_of(y);
    return P(table_.id_of(x), iy);
  }
  IntPolynomial Q(const CoxeterElement& x, const CoxeterElement& y) {
    int iy = table_.id_of(y);
    return Q(table_.id_of(x), iy);
  }

  // Coefficient of q^{(l(w)-l(z)-1)/2} in P_{z,w}; zero for even gaps.
  std::int64_t mu(int z, int w) {
    int d = table_.length(w) - table_.length(z);
    if (d <= 0 || d % 2 == 0) return 0;
    return P(z, w).coeff((d - 1) / 2);
  }

  // P_{x,y} by the recursion through the left descent s of y, using stored
  // values for shorter elements. Used to check descent independence.
  IntPolynomial P_with_descent(int x, int y, std::size_t s) {
    if (!table_.is_left_descent(y, s)) throw PreconditionError("not a left descent of y");
    if (!table_.leq(x, y)) return {};
    if (x == y) return IntPolynomial::one();
    int v = table_.lmul(y, s);
    ensure_P(v);
    int sx = table_.lmul(x, s);
    bool c = table_.length(sx) < table_.length(x);
    IntPolynomial out;
    out.add_scaled(P(sx, v), 1, c ? 0 : 1);
    out.add_scaled(P(x, v), 1, c ? 1 : 0);
    int ly = table_.length(y);
    for (int z : table_.interval(x, v)) {
      if (z == v) continue;
      int sz = table_.lmul(z, s);
      if (table_.length(sz) > table_.length(z)) continue;
      std::int64_t m = mu(z, v);
      if (m == 0) continue;
      out.add_scaled(P(x, z), -m, (ly - table_.length(z)) / 2);
    }
    return out;
  }

  // sum_{x <= w <= y} (-1)^{l(w)-l(x)} Q_{x,w} P_{w,y} == delta_{x,y}.
  bool check_inversion(int x, int y) { return inversion_sum(x, y) == (x == y ? IntPolynomial::one() : IntPolynomial()); }

  IntPolynomial inversion_sum(int x, int y) {
    IntPolynomial s;
    for (int w : table_.interval(x, y)) {
      int sign = ((table_.length(w) - table_.length(x)) % 2) ? -1 : 1;
      s += IntPolynomial{sign} * Q(x, w) * P(w, y);
    }
    return s;
  }

  // P_{x,y}(1) <= l(y)^{l(y)-l(x)}.
  bool verify_P_estimate(int x, int y) {
    if (!table_.leq(x, y)) throw PreconditionError("estimate needs x <= y");
    BigInt lhs = P(x, y).at_one();
    return lhs <= ipow(table_.length(y), table_.length(y) - table_.length(x));
  }

  // |Q_{x,y}(1)| <= (C l(y)^N)^{l(y)-l(x)}.
  bool verify_Q_estimate(int x, int y, std::int64_t C, int N) {
    if (!table_.leq(x, y)) throw PreconditionError("estimate needs x <= y");
    BigInt lhs = Q(x, y).at_one();
    if (lhs < 0) lhs = -lhs;
    BigInt base = BigInt(C) * ipow(table_.length(y), N);
    BigInt rhs = 1;
    for (int k = 0; k < table_.length(y) - table_.length(x); ++k) rhs *= base;
    return lhs <= rhs;
  }

  // Computes every P and Q column for elements of length <= L.
  void compute_all(int L) {
    table_.extend_to(L);
    for (int y = 0; y < table_.layer_end(L); ++y) ensure_Q(y);
  }

  std::size_t stored_pairs() const {
    std::size_t n = 0;
    for (const auto& c : P_) n += c.size();
    return n;
  }

  static BigInt ipow(std::int64_t b, int e) {
    BigInt r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
  }

 private:
  void ensure_P(int y) {
    auto uy = static_cast<std::size_t>(y);
    if (uy < have_P_.size() && have_P_[uy]) return;
    if (y >= table_.size()) throw PreconditionError("element beyond the enumerated table");
    if (have_P_.size() <= uy) {
      have_P_.resize(uy + 1, false);
      P_.resize(uy + 1);
    }
    std::vector<IntPolynomial> col(uy + 1);
    col[uy] = IntPolynomial::one();
    if (y != 0) {
      auto s = static_cast<std::size_t>(table_.lowest_left_descent(y));
      int v = table_.lmul(y, s);
      ensure_P(v);
      for (int z : table_.lower_interval(v)) ensure_P(z);
      for (int x : table_.lower_interval(y)) {
        if (x == y) continue;
        col[static_cast<std::size_t>(x)] = P_with_descent(x, y, s);
      }
    }
    P_[uy] = std::move(col);
    have_P_[uy] = true;
    frontier_ = std::max(frontier_, table_.length(y));
  }

  // Q_{x,y} = sum_{x<w<=y} (-1)^{l(w)-l(x)+1} P_{x,w} Q_{w,y}, filled from
  // the top of the interval down.
  void ensure_Q(int y) {
    auto uy = static_cast<std::size_t>(y);
    if (uy < have_Q_.size() && have_Q_[uy]) return;
    if (have_Q_.size() <= uy) {
      have_Q_.resize(uy + 1, false);
      Q_.resize(uy + 1);
    }
    auto lower = table_.lower_interval(y);
    for (int w : lower) ensure_P(w);
    std::vector<IntPolynomial> col(uy + 1);
    col[uy] = IntPolynomial::one();
    for (auto it = lower.rbegin(); it != lower.rend(); ++it) {
      int x = *it;
      if (x == y) continue;
      IntPolynomial s;
      for (int w : lower) {
        if (w <= x || !table_.leq(x, w)) continue;
        const auto& qw = col[static_cast<std::size_t>(w)];
        if (qw.is_zero()) continue;
        int sign = ((table_.length(w) - table_.length(x) + 1) % 2) ? -1 : 1;
        s += IntPolynomial{sign} * P_[static_cast<std::size_t>(w)][static_cast<std::size_t>(x)] * qw;
      }
      col[static_cast<std::size_t>(x)] = std::move(s);
    }
    Q_[uy] = std::move(col);
    have_Q_[uy] = true;
  }

  CoxeterTable table_;
  std::vector<std::vector<IntPolynomial>> P_, Q_;
  std::vector<bool> have_P_, have_Q_;
  int frontier_ = 0;
  IntPolynomial zero_;
};

}  // namespace affchar
