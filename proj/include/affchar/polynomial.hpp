#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "affchar/errors.hpp"

namespace affchar {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("int64 overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("int64 overflow in multiplication");
  return r;
}

}  // namespace detail

// Polynomial in q with integer coefficients, ascending powers, no trailing
// zeros. The zero polynomial has an empty coefficient vector.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<std::int64_t> c) : c_(c) { trim(); }
  explicit IntPolynomial(std::vector<std::int64_t> c) : c_(std::move(c)) { trim(); }

  static IntPolynomial one() { return IntPolynomial{1}; }
  static IntPolynomial monomial(std::int64_t coeff, int degree) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<std::int64_t>& coefficients() const { return c_; }

  std::int64_t coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : 0;
  }

  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto v : c_) s = detail::checked_add(s, v);
    return s;
  }

  bool nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v >= 0; });
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = detail::checked_add(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& o) { return *this += -o; }

  // Adds coeff * q^shift * o.
  void add_scaled(const IntPolynomial& o, std::int64_t coeff, int shift) {
    if (o.is_zero() || coeff == 0) return;
    std::size_t need = o.c_.size() + static_cast<std::size_t>(shift);
    if (need > c_.size()) c_.resize(need, 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      auto& dst = c_[i + static_cast<std::size_t>(shift)];
      dst = detail::checked_add(dst, detail::checked_mul(coeff, o.c_[i]));
    }
    trim();
  }

  friend IntPolynomial operator-(IntPolynomial p) {
    for (auto& v : p.c_) v = -v;
    return p;
  }
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = detail::checked_add(c[i + j], detail::checked_mul(a.c_[i], b.c_[j]));
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      std::int64_t v = c_[k];
      if (v == 0) continue;
      std::string term;
      std::int64_t mag = v < 0 ? -v : v;
      if (k == 0 || mag != 1) term = std::to_string(mag);
      if (k >= 1) term += (k == 1) ? "q" : "q^" + std::to_string(k);
      if (out.empty()) {
        out = (v < 0 ? "-" : "") + term;
      } else {
        out += (v < 0 ? " - " : " + ") + term;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<std::int64_t> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.str(); }

}  // namespace affchar
