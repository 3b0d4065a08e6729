#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "affchar/numerics.hpp"

using namespace affchar;

namespace {

Weight labels(std::initializer_list<const char*> l) {
  std::vector<Scalar> v;
  for (const char* s : l) v.push_back(Scalar::parse(s));
  return Weight::from_labels(v);
}

// Denominator of affine A1 from its product over root families:
// alpha_0 + k delta, alpha_1 + k delta and (k+1) delta.
Complex a1_denominator(Complex z0, Complex z1, int terms = 400) {
  Complex q = z0 * z1, v = 1, qk = 1;
  for (int k = 0; k < terms; ++k) {
    v *= (Complex(1) - qk * z0) * (Complex(1) - qk * z1) * (Complex(1) - qk * q);
    qk *= q;
  }
  return v;
}

EvalPoint zpoint(Complex z0, Complex z1) { return EvalPoint::from_z({z0, z1}); }

}  // namespace

TEST_CASE("denominator near the origin", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 2);
  auto r = eval_R(sys, EvalPoint::from_z({1e-6, 1e-6, 1e-6}), 10);
  CHECK(std::abs(r.value - Complex(1)) < 1e-5);
  CHECK(r.reliable);
}

TEST_CASE("denominator against its product formula", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  for (auto [z0, z1] : std::vector<std::pair<Complex, Complex>>{{0.5, 0.5}, {Complex(0.3, 0.2), Complex(0.6, -0.1)}}) {
    auto p = zpoint(z0, z1);
    auto exact = a1_denominator(z0, z1);
    auto r30 = eval_R(sys, p, 30);
    CHECK(std::abs(r30.value - exact) <= r30.tail_bound + 1e-15);
    auto r60 = eval_R(sys, p, 60);
    CHECK(std::abs(r60.value - r30.value) <= r30.tail_bound + 1e-15);
    CHECK(r60.tail_bound < r30.tail_bound);
    auto rc = eval_R_converged(sys, p);
    CHECK(std::abs(rc.value - exact) < 1e-12);
  }
}

TEST_CASE("tail is flagged close to the boundary of Y", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto r = eval_R(sys, zpoint(0.99, 0.99), 10);
  CHECK_FALSE(r.reliable);
  CHECK_THROWS_AS(eval_R(sys, zpoint(1.2, 0.9), 10), DomainError);
}

TEST_CASE("verma character evaluates to the inverse denominator", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto p = zpoint(0.3, 0.3);
  auto v = eval_char(sys, verma_char(sys, Weight::zero(sys), 25), p);
  auto exact = Complex(1) / a1_denominator(0.3, 0.3);
  CHECK(std::abs(v.value - exact) <= v.tail_bound);
  CHECK(v.tail_bound < 1e-6);
}

TEST_CASE("quotient series against its closed form", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto spec = ModuleSpec::word_quotient(sys, Weight::zero(sys), {0, 1});
  CHECK(spec.sub_offset == RootVec{3, 1});
  Complex z0(0.35, 0.1), z1(0.4, -0.05);
  auto p = zpoint(z0, z1);
  auto v = eval_char(sys, module_char(sys, spec, 30), p);
  auto exact = (Complex(1) - z0 * z0 * z0 * z1) / a1_denominator(z0, z1);
  CHECK(std::abs(v.value - exact) / std::abs(exact) < 1e-8);
  ModuleEvaluator ev(sys, spec);
  CHECK(std::abs(ev.value(p) - exact) / std::abs(exact) < 1e-12);
}

TEST_CASE("series outside the positive chamber need a certificate", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto p = EvalPoint::from_h({-0.1, 1.5});
  auto L = Weight::zero(sys).minus({0, 1});
  auto s = simple_char(sys, L, 20);
  CHECK_THROWS_AS(eval_char(sys, s, p), DomainError);
  auto m = Majorant::reflection_quotient(sys, L, {1, 0});
  auto v = eval_char(sys, s, p, m);
  CHECK(v.reliable);
  ModuleEvaluator ev(sys, ModuleSpec::simple(L));
  CHECK(std::abs(v.value - ev.value(p)) <= v.tail_bound + 1e-12);
}

TEST_CASE("numerator of the trivial module is the denominator", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  Block b(sys, Weight::zero(sys));
  auto nd = numerator_terms(b, b.group().identity(), 14);
  auto p = zpoint(0.4, 0.4);
  auto ne = eval_numerator(sys, nd, p, 0.5, 2.0);
  auto R = a1_denominator(0.4, 0.4);
  CHECK(std::abs(ne.value - R) < 1e-12);
  CHECK(ne.tail_estimate < 1e-12);
  REQUIRE(ne.shell_abs.size() >= 8);
  // Shell magnitudes fall faster than any geometric sequence.
  for (std::size_t i = 3; i + 1 < ne.shell_abs.size(); ++i)
    CHECK(ne.shell_abs[i + 1] / ne.shell_abs[i] < ne.shell_abs[i] / ne.shell_abs[i - 1]);
  for (std::size_t i = 0; i < ne.partial_sums.size(); ++i)
    if (ne.shell_lengths[i] >= 10) CHECK(std::abs(ne.partial_sums[i] - R) < 1e-10);
  CHECK_THROWS_AS(eval_numerator(sys, nd, zpoint(0.9, 0.9), 0.5, 2.0), DomainError);
}

TEST_CASE("quadratic gap in the zero block", "[numerics]") {
  for (auto [t, n, L] : std::vector<std::tuple<char, int, int>>{{'A', 1, 12}, {'A', 2, 8}}) {
    auto sys = AffineRootSystem::build(t, n);
    Block b(sys, Weight::zero(sys));
    std::vector<Complex> h(sys.dim(), Complex(0.5, 0.1));
    auto rep = verify_quadratic_gap(b, 0.5, 2.0, {EvalPoint::from_h(h)}, L);
    CHECK(rep.ok());
    CHECK(rep.C > 0);
    for (int l : rep.exceptional_lengths) CHECK(l <= rep.prefix);
  }
  // In affine A1 the offsets lambda - y.lambda are consecutive triangular
  // numbers, so the delta-degree is l(l - 1) / 2.
  auto sys = AffineRootSystem::build('A', 1);
  Block b(sys, Weight::zero(sys));
  auto& T = b.kl().table();
  T.extend_to(16);
  for (int y = 0; y < T.layer_end(16); ++y) {
    std::int64_t l = T.length(y);
    auto off = b.offset_of(T.element(y));
    CHECK(std::min(off[0], off[1]) == l * (l - 1) / 2);
    CHECK(std::max(off[0], off[1]) == l * (l + 1) / 2);
  }
}

TEST_CASE("pole orders", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto base = EvalPoint::from_h({Complex(0.55, 0.13), Complex(0.5, -0.07)});
  ModuleEvaluator verma(sys, ModuleSpec::verma(Weight::zero(sys)));
  for (RootVec a : {RootVec{1, 0}, RootVec{0, 1}, RootVec{1, 2}}) {
    auto rep = pole_scan(verma, a, base);
    CHECK(std::abs(rep.order - 1) < 0.1);
    CHECK(rep.verdict == PoleVerdict::pole);
  }
  ModuleEvaluator triv(sys, ModuleSpec::simple(Weight::zero(sys)));
  for (RootVec a : {RootVec{1, 0}, RootVec{0, 1}}) {
    auto rep = pole_scan(triv, a, base);
    CHECK(rep.verdict == PoleVerdict::no_pole);
    CHECK_FALSE(rep.order_violation);
  }
}

TEST_CASE("predicted non-poles", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  CHECK(predicted_nonpoles(sys, ModuleSpec::verma(Weight::zero(sys))).empty());
  CHECK(predicted_nonpoles(sys, ModuleSpec::simple(labels({"1t", "-2"}))).empty());
  CHECK(predicted_nonpoles(sys, ModuleSpec::simple(Weight::zero(sys).minus({0, 1}))) == std::vector<RootVec>{{1, 0}});
  CHECK(predicted_nonpoles(sys, ModuleSpec::reflection_quotient(sys, Weight::zero(sys), {0, 1})) ==
        std::vector<RootVec>{{0, 1}});
}

TEST_CASE("integrability against holomorphy", "[numerics]") {
  auto sys = AffineRootSystem::build('A', 1);
  auto base = EvalPoint::from_h({Complex(0.55, 0.13), Complex(0.5, -0.07)});
  std::vector<RootVec> roots{{1, 0}, {0, 1}};
  auto good = integrability_check(sys, Weight::zero(sys), roots, base);
  CHECK(good.dominant_integral);
  CHECK(good.numerically_holomorphic);
  CHECK(good.agree);
  auto bad = integrability_check(sys, Weight::zero(sys).minus({0, 1}), roots, base);
  CHECK_FALSE(bad.dominant_integral);
  CHECK_FALSE(bad.numerically_holomorphic);
  CHECK(bad.agree);
}
