#pragma once

// Truncated formal characters. A CharSeries stores e^{-Lambda} ch as a map
// from offsets nu in Q^+ (height <= cutoff) to multiplicities of e^{-nu}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "affchar/coxkl.hpp"
#include "affchar/errors.hpp"
#include "affchar/integral.hpp"
#include "affchar/polynomial.hpp"
#include "affchar/rootsys.hpp"
#include "affchar/weight.hpp"

namespace affchar {

// Dense indexing of {nu in Z_{>=0}^{dim} : ht(nu) <= H} by mixed radix.
class OffsetIndex {
 public:
  OffsetIndex(std::size_t dim, std::int64_t H) : dim_(dim), H_(H) {
    if (H < 0) throw PreconditionError("negative cutoff");
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      if (total > 50'000'000 / static_cast<std::size_t>(H + 1)) throw CutoffError("offset table too large");
      total *= static_cast<std::size_t>(H + 1);
    }
    size_ = total;
    RootVec v(dim, 0);
    enumerate(v, 0, 0);
  }

  std::size_t dim() const { return dim_; }
  std::int64_t cutoff() const { return H_; }
  std::size_t size() const { return size_; }

  // Encoded positions of all valid offsets, increasing.
  const std::vector<std::size_t>& valid() const { return valid_; }

  std::optional<std::size_t> encode(const RootVec& v) const {
    if (!is_nonnegative(v) || height(v) > H_) return std::nullopt;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim_; ++i) idx = idx * static_cast<std::size_t>(H_ + 1) + static_cast<std::size_t>(v[i]);
    return idx;
  }

  RootVec decode(std::size_t idx) const {
    RootVec v(dim_, 0);
    for (std::size_t i = dim_; i-- > 0;) {
      v[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(H_ + 1));
      idx /= static_cast<std::size_t>(H_ + 1);
    }
    return v;
  }

  // Encoded shift for adding a vector with nonnegative entries.
  std::size_t stride(const RootVec& d) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < dim_; ++i) s = s * static_cast<std::size_t>(H_ + 1) + static_cast<std::size_t>(d[i]);
    return s;
  }

  std::int64_t height_of(std::size_t idx) const { return height(decode(idx)); }

 private:
  void enumerate(RootVec& v, std::size_t pos, std::int64_t used) {
    if (pos == dim_) {
      valid_.push_back(*encode(v));
      return;
    }
    for (std::int64_t c = 0; used + c <= H_; ++c) {
      v[pos] = c;
      enumerate(v, pos + 1, used + c);
    }
    v[pos] = 0;
  }

  std::size_t dim_;
  std::int64_t H_;
  std::size_t size_ = 0;
  std::vector<std::size_t> valid_;
};

struct CharSeries {
  Weight base;
  std::map<RootVec, std::int64_t> coeffs;  // nonzero entries only
  std::int64_t cutoff = 0;

  std::int64_t at(const RootVec& nu) const {
    auto it = coeffs.find(nu);
    return it == coeffs.end() ? 0 : it->second;
  }

  bool nonnegative() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second >= 0; });
  }

  // Restriction to heights <= H.
  CharSeries truncated(std::int64_t H) const {
    CharSeries s{base, {}, std::min(H, cutoff)};
    for (const auto& [nu, m] : coeffs)
      if (height(nu) <= s.cutoff) s.coeffs.emplace(nu, m);
    return s;
  }

  friend bool operator==(const CharSeries& a, const CharSeries& b) {
    return a.cutoff == b.cutoff && a.coeffs == b.coeffs;
  }
};

namespace detail {

inline CharSeries from_dense(const OffsetIndex& idx, const std::vector<std::int64_t>& v, const Weight& base) {
  CharSeries s;
  s.base = base;
  s.cutoff = idx.cutoff();
  for (auto k : idx.valid())
    if (v[k] != 0) s.coeffs.emplace(idx.decode(k), v[k]);
  return s;
}

inline std::vector<std::int64_t> to_dense(const OffsetIndex& idx, const CharSeries& s) {
  std::vector<std::int64_t> v(idx.size(), 0);
  for (const auto& [nu, m] : s.coeffs) {
    auto k = idx.encode(nu);
    if (k) v[*k] = m;
  }
  return v;
}

// dst[nu + d] += c * src[nu] over valid offsets.
inline void add_shifted(const OffsetIndex& idx, const std::vector<std::int64_t>& src, std::vector<std::int64_t>& dst,
                        const RootVec& d, std::int64_t c) {
  if (c == 0) return;
  auto hd = height(d);
  if (hd > idx.cutoff()) return;
  auto st = idx.stride(d);
  for (auto k : idx.valid()) {
    if (src[k] == 0) continue;
    auto nu = idx.decode(k);
    if (height(nu) + hd > idx.cutoff()) continue;
    auto& t = dst[k + st];
    t = checked_add(t, checked_mul(c, src[k]));
  }
}

}  // namespace detail

// Kostant partition function on all offsets of height <= H, as a dense
// table: the coefficients of 1/R.
class PartitionTable {
 public:
  PartitionTable(const AffineRootSystem& sys, std::int64_t H) : idx_(sys.dim(), H), K_(idx_.size(), 0) {
    K_[*idx_.encode(RootVec(sys.dim(), 0))] = 1;
    for (const auto& r : sys.positive_roots_up_to(H)) {
      auto st = idx_.stride(r.coords);
      for (int m = 0; m < r.mult; ++m) {
        for (auto k : idx_.valid()) {
          auto nu = idx_.decode(k);
          auto prev = nu - r.coords;
          if (!is_nonnegative(prev)) continue;
          K_[k] = detail::checked_add(K_[k], K_[k - st]);
        }
      }
    }
  }

  const OffsetIndex& index() const { return idx_; }
  const std::vector<std::int64_t>& dense() const { return K_; }

  std::int64_t operator()(const RootVec& nu) const {
    auto k = idx_.encode(nu);
    if (!k) {
      if (!is_nonnegative(nu)) return 0;
      throw CutoffError("offset beyond the partition table");
    }
    return K_[*k];
  }

 private:
  OffsetIndex idx_;
  std::vector<std::int64_t> K_;
};

inline std::int64_t partition_function(const AffineRootSystem& sys, const RootVec& nu) {
  if (!is_nonnegative(nu)) return 0;
  return PartitionTable(sys, height(nu))(nu);
}

inline CharSeries verma_char(const AffineRootSystem& sys, const Weight& lambda, std::int64_t H) {
  PartitionTable K(sys, H);
  return detail::from_dense(K.index(), K.dense(), lambda);
}

// R = prod_{beta > 0} (1 - e^{-beta})^{mult} truncated at height H.
inline CharSeries denominator_series(const AffineRootSystem& sys, std::int64_t H) {
  OffsetIndex idx(sys.dim(), H);
  std::vector<std::int64_t> v(idx.size(), 0);
  v[*idx.encode(RootVec(sys.dim(), 0))] = 1;
  for (const auto& r : sys.positive_roots_up_to(H)) {
    auto st = idx.stride(r.coords);
    for (int m = 0; m < r.mult; ++m) {
      for (auto it = idx.valid().rbegin(); it != idx.valid().rend(); ++it) {
        auto k = *it;
        auto nu = idx.decode(k);
        if (!is_nonnegative(nu - r.coords)) continue;
        v[k] = detail::checked_add(v[k], -v[k - st]);
      }
    }
  }
  return detail::from_dense(idx, v, Weight::zero(sys));
}

// Product of two truncated series; the result is exact to the smaller cutoff.
inline CharSeries multiply(const AffineRootSystem& sys, const CharSeries& a, const CharSeries& b) {
  auto H = std::min(a.cutoff, b.cutoff);
  OffsetIndex idx(sys.dim(), H);
  auto bd = detail::to_dense(idx, b);
  std::vector<std::int64_t> out(idx.size(), 0);
  for (const auto& [nu, m] : a.coeffs) detail::add_shifted(idx, bd, out, nu, m);
  return detail::from_dense(idx, out, a.base);
}

inline CharSeries subtract(const CharSeries& a, const CharSeries& b) {
  CharSeries s{a.base, a.coeffs, std::min(a.cutoff, b.cutoff)};
  for (const auto& [nu, m] : b.coeffs) {
    auto& t = s.coeffs[nu];
    t = detail::checked_add(t, -m);
    if (t == 0) s.coeffs.erase(nu);
  }
  return s.truncated(s.cutoff);
}

// ch M(lambda) - ch M(lambda - d) for d in Q^+.
inline CharSeries verma_difference(const AffineRootSystem& sys, const Weight& lambda, const RootVec& d,
                                   std::int64_t H) {
  if (!is_nonnegative(d)) throw PreconditionError("submodule weight must lie below the highest weight");
  PartitionTable K(sys, H);
  auto v = K.dense();
  detail::add_shifted(K.index(), K.dense(), v, d, -1);
  return detail::from_dense(K.index(), v, lambda);
}

// ch M(lambda)/M(s_alpha . lambda) for k = <alpha^vee, lambda + rho> in Z_{>0}.
inline CharSeries quotient_char(const AffineRootSystem& sys, const Weight& lambda, const RootVec& alpha,
                                std::int64_t H) {
  if (!sys.is_real_root(alpha) || !is_positive(alpha)) throw PreconditionError("quotient needs a positive real root");
  auto k = coroot_pairing_shifted(sys, alpha, lambda);
  if (!k.is_integer() || k.as_int() <= 0)
    throw PreconditionError("M(s_alpha . lambda) is not a proper submodule: pairing " + k.str());
  return verma_difference(sys, lambda, k.as_int() * alpha, H);
}

// ch M(lambda)/M(w . lambda) for w in W(lambda) given as a word over Pi(lambda).
inline CharSeries verma_quotient(const AffineRootSystem& sys, const Weight& lambda, const std::vector<int>& word,
                                 std::int64_t H) {
  auto is = build_integral_system(sys, lambda);
  auto G = is.group();
  auto mu = G.act_on_weight(G.from_word(word), lambda, true);
  return verma_difference(sys, lambda, integral_difference(lambda, mu), H);
}

struct NumeratorTerm {
  CoxeterElement y;
  std::int64_t coefficient = 0;
  RootVec offset;  // lambda - y.lambda
};

struct NumeratorData {
  Weight lambda;
  CoxeterElement x;
  std::vector<NumeratorTerm> terms;  // ordered by length, then table order
  int max_length = 0;
};

// Owns the integral Weyl group data and its KL table for one orbit.
class Block {
 public:
  Block(const AffineRootSystem& sys, const Weight& Lambda, std::int64_t window = 0)
      : sys_(sys), report_(dominant_conjugate(sys, Lambda, window)) {
    if (report_.integral.empty()) return;
    dominant_ = build_integral_system(sys, report_.dominant, window);
    if (dominant_.simple != report_.integral.simple)
      throw ConsistencyError("integral simple systems differ along one orbit");
    kl_ = std::make_unique<KLTable>(dominant_.group());
  }

  const AffineRootSystem& system() const { return sys_; }
  const DominanceReport& report() const { return report_; }
  const IntegralSystem& dominant_system() const { return dominant_; }
  KLTable& kl() { return *kl_; }
  bool trivial() const { return report_.integral.empty(); }
  const ReflectionGroup& group() const { return kl_->group(); }
  const Weight& lambda() const { return report_.dominant; }

  CosetExtremes extremes() const { return stabilizer_and_extremes(dominant_, report_.conjugator); }

  // lambda - y.lambda as an integer vector.
  RootVec offset_of(const CoxeterElement& y) const {
    return integral_difference(lambda(), group().act_on_weight(y, lambda(), true));
  }

 private:
  AffineRootSystem sys_;
  DominanceReport report_;
  IntegralSystem dominant_;
  std::unique_ptr<KLTable> kl_;
};

// All y >= x with l(y) <= Lmax, c_{x,y} = (-1)^{l(y)-l(x)} Q_{x,y}(1).
inline NumeratorData numerator_terms(Block& b, const CoxeterElement& x, int Lmax) {
  if (b.trivial()) throw PreconditionError("weight has an empty integral system");
  NumeratorData nd;
  nd.lambda = b.lambda();
  nd.x = x;
  nd.max_length = Lmax;
  auto& kl = b.kl();
  kl.extend_to(Lmax);
  auto& T = kl.table();
  int ix = T.id_of(x);
  for (int l = x.length(); l <= Lmax; ++l) {
    for (int y = T.layer_begin(l); y < T.layer_end(l); ++y) {
      if (!T.leq(ix, y)) continue;
      auto q = kl.Q(ix, y).at_one();
      if ((l - x.length()) % 2) q = -q;
      nd.terms.push_back({T.element(y), q, b.offset_of(T.element(y))});
    }
  }
  return nd;
}

struct SimpleCharResult {
  CharSeries series;
  DominanceClass cls = DominanceClass::both_empty_integral;
  int lengths_used = 0;       // largest l(y) that contributed
  std::size_t terms = 0;      // Verma characters summed
  std::size_t orbit_size = 0; // |W(lambda)| when finite and enumerated
};

// ch L(Lambda) truncated at H.
inline SimpleCharResult simple_char_detailed(Block& b, std::int64_t H) {
  const auto& sys = b.system();
  const auto& rep = b.report();
  SimpleCharResult res;
  res.cls = rep.cls;
  const Weight& Lambda = rep.integral.lambda;
  if (b.trivial()) {
    res.series = verma_char(sys, Lambda, H);
    res.terms = 1;
    return res;
  }
  PartitionTable K(sys, H);
  const auto& idx = K.index();
  std::vector<std::int64_t> acc(idx.size(), 0);
  auto& kl = b.kl();
  auto& T = kl.table();
  auto ext = b.extremes();
  RootVec base_off = b.offset_of(rep.conjugator);  // lambda - Lambda

  auto add_term = [&](const CoxeterElement& y, std::int64_t c) {
    RootVec d = b.offset_of(y) - base_off;  // Lambda - y.lambda
    if (!is_nonnegative(d)) throw ConsistencyError("Verma term above the highest weight");
    if (height(d) > H || c == 0) return height(d) <= H;
    detail::add_shifted(idx, K.dense(), acc, d, c);
    ++res.terms;
    res.lengths_used = std::max(res.lengths_used, y.length());
    return true;
  };

  if (rep.cls == DominanceClass::C_plus) {
    const auto& x = ext.longest;
    int ix = T.id_of(x);
    int quiet = 0;
    for (int l = x.length(); quiet < 2; ++l) {
      kl.extend_to(l);
      bool any_low = false, any = false;
      for (int y = T.layer_begin(l); y < T.layer_end(l); ++y) {
        if (!T.leq(ix, y)) continue;
        any = true;
        auto q = kl.Q(ix, y).at_one();
        if ((l - x.length()) % 2) q = -q;
        RootVec d = b.offset_of(T.element(y)) - base_off;
        if (height(d) <= H) {
          any_low = true;
          add_term(T.element(y), q);
        }
      }
      if (!any) break;  // finite W(lambda) exhausted
      if (l > x.length() && !any_low) ++quiet;
      else if (quiet > 0) throw ConsistencyError("offsets returned below the cutoff after a full shell above it");
    }
  } else {
    const auto& z = ext.shortest;
    int iz = T.id_of(z);
    for (int y : T.lower_interval(iz)) {
      auto p = kl.P(y, iz).at_one();
      if ((z.length() - T.length(y)) % 2) p = -p;
      add_term(T.element(y), p);
    }
    // The orbit is finite exactly when every component is of finite type.
    const auto& comps = b.dominant_system().components;
    if (std::all_of(comps.begin(), comps.end(),
                    [](const DiagramComponent& c) { return c.type == ComponentType::finite; })) {
      int l = 0;
      while (T.layer_end(l) > T.layer_begin(l)) T.extend_to(++l);
      res.orbit_size = static_cast<std::size_t>(T.layer_end(l));
    }
  }
  res.series = detail::from_dense(idx, acc, Lambda);
  return res;
}

inline CharSeries simple_char(const AffineRootSystem& sys, const Weight& Lambda, std::int64_t H) {
  Block b(sys, Lambda);
  return simple_char_detailed(b, H).series;
}

// Multiplicity of L(y.lambda) in M(x.lambda): P^lambda_{x,y}(1).
inline std::int64_t composition_multiplicity(Block& b, const CoxeterElement& x, const CoxeterElement& y) {
  if (b.trivial()) return x == y ? 1 : 0;
  auto& kl = b.kl();
  return kl.P(x, y).at_one();
}

}  // namespace affchar
