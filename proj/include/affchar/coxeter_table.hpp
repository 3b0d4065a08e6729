#pragma once

// Breadth-first enumeration of a realized Coxeter group up to a length
// bound, with integer ids, multiplication tables and Bruhat lower intervals
// stored as bitsets.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "affchar/errors.hpp"
#include "affchar/weyl.hpp"

namespace affchar {

class CoxeterTable {
 public:
  explicit CoxeterTable(ReflectionGroup group) : G_(std::move(group)) {
    add(G_.identity());
    layer_start_ = {0, 1};
  }

  const ReflectionGroup& group() const { return G_; }
  int max_length() const { return static_cast<int>(layer_start_.size()) - 2; }
  int size() const { return static_cast<int>(elems_.size()); }

  // Ids of elements of length exactly l are [layer_begin(l), layer_end(l)).
  int layer_begin(int l) const { return layer_start_[static_cast<std::size_t>(l)]; }
  int layer_end(int l) const { return layer_start_[static_cast<std::size_t>(l) + 1]; }

  const CoxeterElement& element(int id) const { return elems_[static_cast<std::size_t>(id)]; }
  int length(int id) const { return element(id).length(); }

  void extend_to(int L) {
    while (max_length() < L) {
      int l = max_length();
      std::vector<Canonical> fresh;
      std::unordered_map<Canonical, int, VecHash> seen;
      for (int id = layer_begin(l); id < layer_end(l); ++id) {
        for (std::size_t j = 0; j < G_.rank(); ++j) {
          const auto& c = element(id).canonical;
          if (G_.image_negative(c, j)) continue;
          auto n = G_.right_multiply(c, j);
          if (seen.emplace(n, 0).second) fresh.push_back(std::move(n));
        }
      }
      std::vector<CoxeterElement> layer;
      layer.reserve(fresh.size());
      for (auto& c : fresh) layer.push_back(G_.from_canonical(c));
      std::sort(layer.begin(), layer.end(),
                [](const CoxeterElement& a, const CoxeterElement& b) { return a.word < b.word; });
      for (auto& e : layer) add(std::move(e));
      layer_start_.push_back(size());
      // Fill multiplication entries that now resolve.
      for (int id = layer_begin(l); id < layer_end(l + 1); ++id) fill_mults(id);
      for (int id = layer_begin(l + 1); id < layer_end(l + 1); ++id) build_below(id);
    }
  }

  // Id of an element, extending the table as needed.
  int id_of(const CoxeterElement& w) {
    extend_to(w.length());
    auto it = index_.find(w.canonical);
    if (it == index_.end()) throw ConsistencyError("element missing from its length layer");
    return it->second;
  }

  int find(const Canonical& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }

  // s_j * w and w * s_j; -1 when the product lies beyond the table.
  int lmul(int id, std::size_t j) const { return lmul_[static_cast<std::size_t>(id)][j]; }
  int rmul(int id, std::size_t j) const { return rmul_[static_cast<std::size_t>(id)][j]; }

  bool is_left_descent(int id, std::size_t j) const {
    int o = lmul(id, j);
    return o >= 0 && length(o) < length(id);
  }

  int lowest_left_descent(int id) const {
    for (std::size_t j = 0; j < G_.rank(); ++j)
      if (is_left_descent(id, j)) return static_cast<int>(j);
    return -1;
  }

  bool leq(int x, int y) const {
    if (x > y) return false;  // ids respect length
    const auto& b = below_[static_cast<std::size_t>(y)];
    auto w = static_cast<std::size_t>(x) / 64;
    return w < b.size() && ((b[w] >> (static_cast<std::size_t>(x) % 64)) & 1ULL);
  }

  // Elements of [e, y] in increasing id order.
  std::vector<int> lower_interval(int y) const {
    std::vector<int> out;
    const auto& b = below_[static_cast<std::size_t>(y)];
    for (std::size_t w = 0; w < b.size(); ++w) {
      auto bits = b[w];
      while (bits) {
        int k = __builtin_ctzll(bits);
        out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(k)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  // Elements of [x, y] in increasing id order.
  std::vector<int> interval(int x, int y) const {
    std::vector<int> out;
    if (!leq(x, y)) return out;
    for (int z : lower_interval(y))
      if (z >= x && leq(x, z)) out.push_back(z);
    return out;
  }

 private:
  void add(CoxeterElement e) {
    index_.emplace(e.canonical, size());
    elems_.push_back(std::move(e));
    lmul_.emplace_back(G_.rank(), -1);
    rmul_.emplace_back(G_.rank(), -1);
    below_.emplace_back();
    if (elems_.size() == 1) below_[0] = {1ULL};
  }

  void fill_mults(int id) {
    const auto& c = element(id).canonical;
    for (std::size_t j = 0; j < G_.rank(); ++j) {
      auto& l = lmul_[static_cast<std::size_t>(id)][j];
      auto& r = rmul_[static_cast<std::size_t>(id)][j];
      if (l < 0) l = find(G_.left_multiply(j, c));
      if (r < 0) r = find(G_.right_multiply(c, j));
    }
  }

  // [e, y] = [e, sy] union s[e, sy] for a left descent s of y.
  void build_below(int y) {
    int s = lowest_left_descent(y);
    if (s < 0) throw ConsistencyError("non-identity element without a left descent");
    int v = lmul(y, static_cast<std::size_t>(s));
    std::vector<std::uint64_t> b(static_cast<std::size_t>(y) / 64 + 1, 0);
    auto set = [&](int z) { b[static_cast<std::size_t>(z) / 64] |= 1ULL << (static_cast<std::size_t>(z) % 64); };
    const auto& bv = below_[static_cast<std::size_t>(v)];
    for (std::size_t w = 0; w < bv.size(); ++w) b[w] |= bv[w];
    for (int z : lower_interval(v)) {
      int sz = lmul(z, static_cast<std::size_t>(s));
      if (sz < 0) throw ConsistencyError("Bruhat interval leaves the table");
      set(sz);
    }
    set(y);
    below_[static_cast<std::size_t>(y)] = std::move(b);
  }

  ReflectionGroup G_;
  std::vector<CoxeterElement> elems_;
  std::unordered_map<Canonical, int, VecHash> index_;
  std::vector<int> layer_start_;
  std::vector<std::vector<int>> lmul_, rmul_;
  std::vector<std::vector<std::uint64_t>> below_;
};

}  // namespace affchar
