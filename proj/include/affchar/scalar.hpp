#pragma once

// Exact scalars used for weight labels.
//
// Labels of a weight live in Q + Q*theta, where theta is a formal
// transcendental. This is enough to express irrational levels exactly: a
// value is an integer iff its theta part vanishes and its rational part is
// integral. Only Q-linear operations are provided, which is all the shifted
// Weyl action and the bilinear form ever need.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "affchar/errors.hpp"

namespace affchar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

// Parses "p", "-p", "p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) throw UsageError("empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw UsageError("bad number '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw UsageError("bad number '" + std::string(text) + "'");
    }
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& r) : rat_(r) {}  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t v) : rat_(v) {}     // NOLINT(google-explicit-constructor)
  Scalar(const Rational& r, const Rational& theta) : rat_(r), theta_(theta) {}

  static Scalar theta() { return Scalar(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return rat_; }
  const Rational& theta_part() const { return theta_; }

  bool is_rational() const { return theta_ == 0; }
  bool is_integer() const { return is_rational() && affchar::is_integer(rat_); }
  bool is_zero() const { return rat_ == 0 && theta_ == 0; }

  // Integer value; caller must have checked is_integer().
  std::int64_t as_int() const {
    if (!is_integer()) throw ConsistencyError("scalar " + str() + " is not an integer");
    return static_cast<std::int64_t>(numerator(rat_));
  }

  // Sign of a rational scalar; nullopt when the value is irrational.
  std::optional<int> sign() const {
    if (!is_rational()) return std::nullopt;
    return rat_ > 0 ? 1 : (rat_ < 0 ? -1 : 0);
  }

  Scalar& operator+=(const Scalar& o) {
    rat_ += o.rat_;
    theta_ += o.theta_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    rat_ -= o.rat_;
    theta_ -= o.theta_;
    return *this;
  }
  Scalar& operator*=(const Rational& c) {
    rat_ *= c;
    theta_ *= c;
    return *this;
  }
  Scalar& operator/=(const Rational& c) {
    rat_ /= c;
    theta_ /= c;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator-(Scalar a) {
    a.rat_ = -a.rat_;
    a.theta_ = -a.theta_;
    return a;
  }
  friend Scalar operator*(Scalar a, const Rational& c) { return a *= c; }
  friend Scalar operator*(const Rational& c, Scalar a) { return a *= c; }
  friend Scalar operator/(Scalar a, const Rational& c) { return a /= c; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat_ == b.rat_ && a.theta_ == b.theta_;
  }

  std::string str() const {
    if (theta_ == 0) return to_string(rat_);
    std::string out = rat_ == 0 ? std::string() : to_string(rat_);
    std::string t = to_string(theta_);
    if (!out.empty() && t[0] != '-') out += '+';
    return out + t + "t";
  }

  // Accepts "p/q", "p/q+r/st", "r/st" where the trailing 't' marks the
  // theta coefficient, e.g. "1/2+1t" or "-3t".
  static Scalar parse(std::string_view text) {
    if (text.empty()) throw UsageError("empty label");
    if (text.back() != 't') return Scalar(parse_rational(text));
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if (body[i] == '+' || body[i] == '-') {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos) {
      if (body.empty() || body == "+") return theta();
      if (body == "-") return -theta();
      return Scalar(Rational(0), parse_rational(body));
    }
    std::string_view coeff = body.substr(split);
    Rational th = (coeff == "+") ? Rational(1) : (coeff == "-") ? Rational(-1)
                                                                : parse_rational(coeff);
    return Scalar(parse_rational(body.substr(0, split)), th);
  }

  // Numeric value with theta replaced by a fixed irrational stand-in.
  double approx() const {
    constexpr double kTheta = 0.8660254037844386;  // sqrt(3)/2
    return static_cast<double>(rat_) + static_cast<double>(theta_) * kTheta;
  }

 private:
  Rational rat_{0};
  Rational theta_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace affchar
