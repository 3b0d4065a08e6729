#pragma once

// Weights as exact labels of a base weight plus a root-lattice offset.
//
// A weight is base - offset, where base is given by its labels
// <alpha_i^vee, base> and offset is a vector over the simple roots. Labels
// alone do not see the delta direction, so the offset is carried explicitly.

#include <vector>

#include "affchar/errors.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/scalar.hpp"

namespace affchar {

struct Weight {
  std::vector<Scalar> base_labels;
  std::vector<Scalar> offset;

  static Weight from_labels(std::vector<Scalar> labels) {
    Weight w;
    w.offset.assign(labels.size(), Scalar());
    w.base_labels = std::move(labels);
    return w;
  }

  static Weight zero(const AffineRootSystem& sys) {
    return from_labels(std::vector<Scalar>(sys.dim(), Scalar()));
  }

  static Weight rho(const AffineRootSystem& sys) {
    return from_labels(std::vector<Scalar>(sys.dim(), Scalar(1)));
  }

  // Same base, offset increased by v: represents this - v.
  Weight minus(const RootVec& v) const {
    Weight w = *this;
    for (std::size_t i = 0; i < v.size(); ++i) w.offset[i] += Scalar(v[i]);
    return w;
  }

  // <alpha_i^vee, weight> = base_i - sum_j a_ij offset_j.
  std::vector<Scalar> labels(const AffineRootSystem& sys) const {
    std::vector<Scalar> out = base_labels;
    const auto& a = sys.cartan();
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < offset.size(); ++j)
        if (a[i][j] != 0 && !offset[j].is_zero()) out[i] -= offset[j] * Rational(a[i][j]);
    return out;
  }

  // Integer offset vector; throws when the offset is not integral.
  RootVec integral_offset() const {
    RootVec v(offset.size(), 0);
    for (std::size_t i = 0; i < offset.size(); ++i) {
      if (!offset[i].is_integer()) throw PreconditionError("offset is not integral");
      v[i] = offset[i].as_int();
    }
    return v;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
};

// this - other as a vector over the simple roots; both must share a base.
inline std::vector<Scalar> difference(const Weight& a, const Weight& b) {
  if (a.base_labels != b.base_labels) throw PreconditionError("weights have different bases");
  std::vector<Scalar> d(a.offset.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = b.offset[i] - a.offset[i];
  return d;
}

// a - b when it lies in the root lattice, else throws.
inline RootVec integral_difference(const Weight& a, const Weight& b) {
  auto d = difference(a, b);
  RootVec v(d.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_integer()) throw PreconditionError("weights differ by a non-integral vector");
    v[i] = d[i].as_int();
  }
  return v;
}

// (alpha, lambda) = sum_i c_i eps_i <alpha_i^vee, lambda>.
inline Scalar bilinear(const AffineRootSystem& sys, const RootVec& alpha, const Weight& lambda) {
  auto lab = lambda.labels(sys);
  Scalar s;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0) s += lab[i] * (sys.symmetrizer()[i] * alpha[i]);
  return s;
}

inline Scalar bilinear(const AffineRootSystem& sys, const Weight& lambda, const RootVec& alpha) {
  return bilinear(sys, alpha, lambda);
}

inline Rational bilinear(const AffineRootSystem& sys, const RootVec& a, const RootVec& b) {
  return sys.form(a, b);
}

// (alpha, lambda + rho).
inline Scalar bilinear_shifted(const AffineRootSystem& sys, const RootVec& alpha,
                               const Weight& lambda) {
  Scalar s = bilinear(sys, alpha, lambda);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0) s += Scalar(sys.symmetrizer()[i] * alpha[i]);
  return s;
}

// <alpha^vee, mu> = 2 (alpha, mu) / (alpha, alpha); alpha must be real.
inline Scalar coroot_pairing(const AffineRootSystem& sys, const RootVec& alpha, const Weight& mu) {
  Rational n2 = sys.norm2(alpha);
  if (n2 == 0) throw DomainError("coroot pairing with an imaginary root");
  return bilinear(sys, alpha, mu) * (Rational(2) / n2);
}

// <alpha^vee, mu + rho>.
inline Scalar coroot_pairing_shifted(const AffineRootSystem& sys, const RootVec& alpha,
                                     const Weight& mu) {
  Rational n2 = sys.norm2(alpha);
  if (n2 == 0) throw DomainError("coroot pairing with an imaginary root");
  return bilinear_shifted(sys, alpha, mu) * (Rational(2) / n2);
}

// (delta, lambda + rho); zero exactly on the critical hyperplane.
inline Scalar shifted_level(const AffineRootSystem& sys, const Weight& lambda) {
  return bilinear_shifted(sys, sys.delta(), lambda);
}

inline bool is_critical(const AffineRootSystem& sys, const Weight& lambda) {
  return shifted_level(sys, lambda).is_zero();
}

}  // namespace affchar
