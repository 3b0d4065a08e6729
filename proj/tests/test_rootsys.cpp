#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "affchar/rootsys.hpp"
#include "affchar/serialize.hpp"
#include "affchar/weight.hpp"

using namespace affchar;

namespace {

const std::vector<std::pair<char, int>> kTypes{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3},
                                               {'D', 4}, {'G', 2}, {'F', 4}, {'E', 6}};

// Positive real roots of height <= H as the orbit of the simple roots under
// simple reflections, computed from the Cartan matrix alone.
std::set<RootVec> real_roots_by_orbit(const AffineRootSystem& sys, std::int64_t H) {
  const auto& A = sys.cartan();
  std::set<RootVec> seen;
  std::vector<RootVec> todo;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    seen.insert(sys.simple_root(i));
    todo.push_back(sys.simple_root(i));
  }
  while (!todo.empty()) {
    RootVec v = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < sys.dim(); ++i) {
      std::int64_t p = 0;
      for (std::size_t j = 0; j < sys.dim(); ++j) p += A[i][j] * v[j];
      RootVec w = v;
      w[i] -= p;
      if (!is_positive(w) || height(w) > H) continue;
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("affine A1 Cartan matrix and marks", "[rootsys]") {
  auto sys = AffineRootSystem::build('A', 1);
  CHECK(sys.cartan() == IntMatrix{{2, -2}, {-2, 2}});
  CHECK(sys.marks() == RootVec{1, 1});
  CHECK(sys.delta() == RootVec{1, 1});
  CHECK(sys.rho_labels() == std::vector<std::int64_t>{1, 1});
  CHECK(AffineRootSystem::build('A', 2).marks() == RootVec{1, 1, 1});
}

TEST_CASE("delta spans the kernel of the Cartan matrix", "[rootsys]") {
  for (auto [t, n] : kTypes) {
    auto sys = AffineRootSystem::build(t, n);
    const auto& A = sys.cartan();
    for (std::size_t i = 0; i < sys.dim(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < sys.dim(); ++j) s += A[i][j] * sys.delta()[j];
      CHECK(s == 0);
      CHECK(A[i][i] == 2);
    }
    CHECK(sys.marks()[0] == 1);
    CHECK(sys.coxeter_number() == height(sys.delta()));
  }
}

TEST_CASE("positive roots of low height", "[rootsys]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto r2 = sys.positive_roots_up_to(2);
  REQUIRE(r2.size() == 3);
  std::set<RootVec> got;
  for (const auto& r : r2) got.insert(r.coords);
  CHECK(got == std::set<RootVec>{{1, 0}, {0, 1}, {1, 1}});
  for (const auto& r : r2)
    if (r.coords == RootVec{1, 1}) {
      CHECK_FALSE(r.is_real);
      CHECK(r.mult == 1);
      CHECK(r.delta_degree == 1);
    }
  auto r3 = sys.positive_roots_up_to(3);
  CHECK(r3.size() == 5);
  got.clear();
  for (const auto& r : r3) got.insert(r.coords);
  CHECK(got.count({2, 1}) == 1);
  CHECK(got.count({1, 2}) == 1);
  for (auto [t, n] : kTypes) {
    auto s = AffineRootSystem::build(t, n);
    auto r1 = s.positive_roots_up_to(1);
    CHECK(r1.size() == s.dim());
  }
}

TEST_CASE("real roots agree with the reflection orbit of the simple roots", "[rootsys]") {
  for (auto [t, n] : kTypes) {
    auto sys = AffineRootSystem::build(t, n);
    const std::int64_t H = 3 * sys.coxeter_number();
    std::set<RootVec> lib;
    std::size_t imaginary = 0;
    for (const auto& r : sys.positive_roots_up_to(H)) {
      if (r.is_real) lib.insert(r.coords);
      else {
        ++imaginary;
        CHECK(r.mult == n);
      }
      CHECK(r.height == height(r.coords));
    }
    INFO(sys.id());
    CHECK(lib == real_roots_by_orbit(sys, H));
    CHECK(imaginary == static_cast<std::size_t>(H / sys.coxeter_number()));
  }
}

TEST_CASE("roots per delta-degree are bounded by the width", "[rootsys]") {
  for (auto [t, n] : kTypes) {
    auto sys = AffineRootSystem::build(t, n);
    std::map<std::int64_t, std::int64_t> per_degree;
    for (const auto& r : sys.positive_real_roots_by_degree(4)) per_degree[r.delta_degree] += r.mult;
    for (auto [k, c] : per_degree) {
      std::int64_t with_imag = c + (k >= 1 ? n : 0);
      CHECK(with_imag <= sys.width_bound());
    }
  }
}

TEST_CASE("invariant form", "[rootsys]") {
  auto sys = AffineRootSystem::build('A', 1);
  for (std::size_t i = 0; i < sys.dim(); ++i) CHECK(bilinear(sys, sys.delta(), sys.simple_root(i)) == 0);
  CHECK(bilinear(sys, sys.simple_root(1), sys.simple_root(1)) == 2);
  // (rho, delta) = (rho, alpha_0) + (rho, alpha_1)
  Scalar direct = bilinear(sys, Weight::rho(sys), sys.delta());
  Scalar split = bilinear(sys, Weight::rho(sys), RootVec{1, 0}) + bilinear(sys, Weight::rho(sys), RootVec{0, 1});
  CHECK(direct == Scalar(2));
  CHECK(split == direct);
  for (auto [t, n] : kTypes) {
    auto s = AffineRootSystem::build(t, n);
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(s.form(s.delta(), s.simple_root(i)) == 0);
  }
}

TEST_CASE("coroot pairings", "[rootsys]") {
  for (auto [t, n] : kTypes) {
    auto sys = AffineRootSystem::build(t, n);
    for (std::size_t i = 0; i < sys.dim(); ++i)
      for (std::size_t j = 0; j < sys.dim(); ++j)
        CHECK(sys.coroot_pairing(sys.simple_root(i), sys.simple_root(j)) == sys.cartan()[i][j]);
    for (const auto& r : sys.positive_real_roots_by_degree(2)) CHECK(sys.coroot_pairing(r.coords, sys.delta()) == 0);
  }
  auto sys = AffineRootSystem::build('A', 1);
  // <(alpha_1 + delta)^vee, rho> by direct expansion: 2 (rho, a) / (a, a).
  RootVec a{1, 2};
  Scalar num = bilinear(sys, Weight::rho(sys), a);
  CHECK(num == Scalar(3));
  CHECK(sys.norm2(a) == 2);
  CHECK(coroot_pairing(sys, a, Weight::rho(sys)) == Scalar(3));
}

TEST_CASE("classical projection", "[rootsys]") {
  auto sys = AffineRootSystem::build('A', 1);
  CHECK(is_zero(sys.classical_projection(sys.delta())));
  CHECK(sys.classical_projection({1, 0}) == -sys.classical_projection({0, 1}));
  std::set<RootVec> images;
  for (const auto& r : sys.positive_roots_up_to(8))
    if (r.is_real) images.insert(sys.classical_projection(r.coords));
  CHECK(images.size() == 2);
  CHECK(sys.classical_roots().size() == 2);
  for (auto [t, n] : kTypes) {
    auto s = AffineRootSystem::build(t, n);
    for (const auto& cl : s.classical_roots())
      for (std::int64_t k = 0; k < 3; ++k) CHECK(s.classical_projection(s.lift(cl, k)) == cl);
  }
}

TEST_CASE("reflections preserve the root system", "[rootsys]") {
  for (auto [t, n] : kTypes) {
    auto sys = AffineRootSystem::build(t, n);
    auto roots = sys.positive_real_roots_by_degree(1);
    for (const auto& a : roots)
      for (const auto& b : roots) {
        auto c = sys.reflect(a.coords, b.coords);
        CHECK(sys.is_real_root(c));
        CHECK(sys.form(c, c) == sys.form(b.coords, b.coords));
      }
  }
}

TEST_CASE("unknown types are usage errors", "[rootsys]") {
  CHECK_THROWS_AS(AffineRootSystem::build('Q', 1), UsageError);
  CHECK_THROWS_AS(AffineRootSystem::build("AB", 1), UsageError);
  CHECK_THROWS_AS(AffineRootSystem::build('E', 4), UsageError);
  CHECK_NOTHROW(AffineRootSystem::build("a", 2));
}

TEST_CASE("root system serializes its data", "[rootsys]") {
  auto j = to_json(AffineRootSystem::build('B', 2));
  CHECK(j["type"] == "B");
  CHECK(j["rank"] == 2);
  CHECK(j["cartan"].size() == 3);
  CHECK(j["marks"] == Json::array({1, 1, 2}));
  CHECK(j["symmetrizer"].size() == 3);
}
