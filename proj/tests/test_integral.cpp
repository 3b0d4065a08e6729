#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "affchar/integral.hpp"
#include "affchar/serialize.hpp"

using namespace affchar;

namespace {

Weight labels(std::initializer_list<const char*> l) {
  std::vector<Scalar> v;
  for (const char* s : l) v.push_back(Scalar::parse(s));
  return Weight::from_labels(v);
}

// Whether v is a nonnegative integer combination of the given positive vectors.
bool in_cone(const RootVec& v, const std::vector<RootVec>& gens, std::map<RootVec, bool>& memo) {
  if (is_zero(v)) return true;
  if (!is_nonnegative(v)) return false;
  if (auto it = memo.find(v); it != memo.end()) return it->second;
  bool ok = false;
  for (const auto& g : gens)
    if (in_cone(v - g, gens, memo)) {
      ok = true;
      break;
    }
  memo[v] = ok;
  return ok;
}

// Row rank by fraction-free elimination over the integers.
std::size_t rank_of(std::vector<RootVec> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; !m.empty() && c < m[0].size() && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      auto a = m[r][c], b = m[i][c];
      for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] = a * m[i][k] - b * m[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<Weight> sample_weights(const AffineRootSystem& sys, unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<std::string> vals{"0", "1", "-1", "2", "-3", "1/2", "-1/2", "1/3", "-2/3", "1t", "1/2t"};
  std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
  std::vector<Weight> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Scalar> lab;
    for (std::size_t i = 0; i < sys.dim(); ++i) lab.push_back(Scalar::parse(vals[pick(rng)]));
    Weight w = Weight::from_labels(lab);
    if (!is_critical(sys, w)) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("integral roots of the zero weight", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto is = integral_subsystem(sys, Weight::zero(sys), 10);
  std::set<RootVec> expect;
  for (const auto& r : sys.positive_roots_up_to(10))
    if (r.is_real) {
      CHECK(coroot_pairing_shifted(sys, r.coords, Weight::zero(sys)).is_integer());
      expect.insert(r.coords);
    }
  CHECK(std::set<RootVec>(is.positive_roots.begin(), is.positive_roots.end()) == expect);
  CHECK(is.zero_roots.empty());
}

TEST_CASE("irrational labels give an empty integral system", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto L = labels({"1t", "2t"});
  auto is = build_integral_system(sys, L);
  CHECK(is.empty());
  CHECK(is.positive_roots.empty());
  auto rep = dominant_conjugate(sys, L);
  CHECK(rep.cls == DominanceClass::both_empty_integral);
}

TEST_CASE("critical level is rejected", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  CHECK_THROWS_AS(build_integral_system(sys, labels({"-1", "-1"})), DomainError);
}

TEST_CASE("simple system of the zero weight", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto is = build_integral_system(sys, Weight::zero(sys));
  CHECK(is.simple == std::vector<RootVec>{{1, 0}, {0, 1}});
  CHECK(is.stable);
  REQUIRE(is.components.size() == 1);
  CHECK(is.components[0].type == ComponentType::affine);
  CHECK(is.diagram == IntMatrix{{2, -2}, {-2, 2}});
  CHECK(is.zero_simples.empty());
  auto j = to_json(is);
  CHECK(j["components"][0]["type"] == "affine");
}

TEST_CASE("half-integral labels at half-integral level", "[integral]") {
  // <alpha_1^vee, lambda + rho> = 1/2 and level 1/2: integral roots are the
  // (k, k+1) with k odd and the (k+1, k) with k even.
  auto sys = AffineRootSystem::build('A', 1);
  auto L = labels({"-1", "-1/2"});
  auto is = build_integral_system(sys, L);
  for (const auto& r : is.positive_roots) {
    auto k = std::min(r[0], r[1]);
    if (r[1] > r[0]) CHECK(k % 2 == 1);
    else CHECK(k % 2 == 0);
  }
  CHECK(std::set<RootVec>(is.simple.begin(), is.simple.end()) == std::set<RootVec>{{1, 0}, {1, 2}});
  REQUIRE(is.components.size() == 1);
  CHECK(is.components[0].type == ComponentType::affine);
  std::map<RootVec, bool> memo;
  for (const auto& r : is.positive_roots) CHECK(in_cone(r, is.simple, memo));
}

TEST_CASE("structural properties of integral simple systems", "[integral]") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'C', 2}, {'G', 2}}) {
    auto sys = AffineRootSystem::build(t, n);
    for (const auto& L : sample_weights(sys, 17 + static_cast<unsigned>(n), 25)) {
      auto is = build_integral_system(sys, L);
      INFO(sys.id() << " labels " << weight_labels_string(sys, L));
      CHECK(is.stable);
      CHECK(is.simple.size() <= sys.classical_roots().size());
      for (std::size_t i = 0; i < is.simple.size(); ++i)
        for (std::size_t j = 0; j < is.simple.size(); ++j)
          if (i != j) CHECK(is.diagram[i][j] <= 0);
      std::set<RootVec> cls;
      for (const auto& a : is.simple) cls.insert(sys.classical_projection(a));
      CHECK(cls.size() == is.simple.size());
      std::map<RootVec, bool> memo;
      for (const auto& r : is.positive_roots)
        if (height(r) <= 24) CHECK(in_cone(r, is.simple, memo));
      for (const auto& c : is.components) {
        std::vector<RootVec> rows;
        for (int v : c.nodes) rows.push_back(is.simple[static_cast<std::size_t>(v)]);
        CHECK(rank_of(rows) == rows.size());
      }
    }
  }
}

TEST_CASE("generators of different components commute", "[integral]") {
  auto sys = AffineRootSystem::build('A', 3);
  auto is = build_integral_system(sys, labels({"1/2", "0", "1/2", "0"}));
  REQUIRE(is.components.size() == 2);
  auto G = is.group();
  for (int a : is.components[0].nodes)
    for (int b : is.components[1].nodes) {
      auto ab = G.from_word({a, b}), ba = G.from_word({b, a});
      CHECK(ab == ba);
      for (std::size_t i = 0; i < sys.dim(); ++i)
        CHECK(G.act_on_root(ab, sys.simple_root(i)) == G.act_on_root(ba, sys.simple_root(i)));
    }
}

TEST_CASE("integral length counts inverted integral roots", "[integral]") {
  for (const auto& L : {labels({"-1", "-1/2"}), labels({"0", "0"})}) {
    auto sys = AffineRootSystem::build('A', 1);
    auto is = build_integral_system(sys, L);
    auto G = is.group();
    std::vector<std::vector<int>> words{{}};
    for (int l = 0; l <= 5; ++l) {
      std::vector<std::vector<int>> next;
      for (const auto& w : words) {
        auto e = G.from_word(w);
        if (e.length() != l) continue;
        std::size_t inverted = 0;
        for (const auto& r : is.positive_roots)
          if (is_negative(G.act_on_root(e, r))) ++inverted;
        CHECK(inverted == static_cast<std::size_t>(l));
        for (int j = 0; j < static_cast<int>(G.rank()); ++j) {
          auto v = w;
          v.push_back(j);
          next.push_back(v);
        }
      }
      words = std::move(next);
    }
  }
}

TEST_CASE("dominant conjugates", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto rep = dominant_conjugate(sys, Weight::zero(sys));
  CHECK(rep.cls == DominanceClass::C_plus);
  CHECK(rep.conjugator.word.empty());
  auto rep2 = dominant_conjugate(sys, Weight::zero(sys).minus({3, 1}));
  CHECK(rep2.cls == DominanceClass::C_plus);
  CHECK(integral_difference(rep2.dominant, Weight::zero(sys)) == RootVec{0, 0});
  CHECK(rep2.conjugator.word == std::vector<int>{0, 1});
  auto irr = dominant_conjugate(sys, labels({"1t", "0"}));
  CHECK(irr.cls == DominanceClass::C_minus);
  CHECK_FALSE(irr.level_sign.has_value());
  CHECK(irr.integral.simple == std::vector<RootVec>{{0, 1}});
}

TEST_CASE("the conjugator maps the dominant weight back", "[integral]") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'C', 2}}) {
    auto sys = AffineRootSystem::build(t, n);
    for (const auto& L : sample_weights(sys, 5, 20)) {
      auto rep = dominant_conjugate(sys, L);
      if (rep.cls == DominanceClass::both_empty_integral) continue;
      auto G = rep.integral.group();
      auto back = G.act_on_weight(rep.conjugator, rep.dominant, true);
      CHECK(difference(back, L) == std::vector<Scalar>(sys.dim(), Scalar()));
      auto dom = build_integral_system(sys, rep.dominant);
      for (std::size_t i = 0; i < dom.simple.size(); ++i) {
        auto k = dom.simple_pairing(i);
        if (rep.cls == DominanceClass::C_plus) CHECK(k >= 0);
        else CHECK(k <= 0);
      }
    }
  }
}

TEST_CASE("stabilizers and coset extremes", "[integral]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto reg = build_integral_system(sys, Weight::zero(sys));
  auto G = reg.group();
  auto w = G.from_word({0, 1, 0});
  auto ce = stabilizer_and_extremes(reg, w);
  CHECK(ce.zero_generators.empty());
  CHECK(ce.shortest == w);
  CHECK(ce.longest == w);

  // <alpha_1^vee, lambda + rho> = 0 at level 1.
  auto L = labels({"0", "-1"});
  auto is = build_integral_system(sys, L);
  REQUIRE(is.zero_simples.size() == 1);
  auto H = is.group();
  std::size_t z = static_cast<std::size_t>(is.zero_simples[0]);
  std::vector<std::vector<int>> words{{}};
  for (int l = 0; l <= 6; ++l) {
    std::vector<std::vector<int>> next;
    for (const auto& word : words) {
      auto e = H.from_word(word);
      if (e.length() != l) continue;
      auto ext = stabilizer_and_extremes(is, e);
      CHECK(ext.longest.length() == ext.shortest.length() + 1);
      CHECK(H.multiply(ext.shortest, H.generator(z)) == ext.longest);
      // The stabilizer of lambda in the shifted action is {e, s_z}.
      bool fixes = difference(H.act_on_weight(e, L, true), L) == std::vector<Scalar>(sys.dim(), Scalar());
      CHECK(fixes == (e.length() == 0 || e == H.generator(z)));
      for (int j = 0; j < static_cast<int>(H.rank()); ++j) {
        auto v = word;
        v.push_back(j);
        next.push_back(v);
      }
    }
    words = std::move(next);
  }
}
