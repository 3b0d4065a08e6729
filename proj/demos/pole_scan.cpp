// Pole orders of ch L(lambda) along a few real root hyperplanes of affine A1.
#include <iostream>

#include "affchar/numerics.hpp"

using namespace affchar;

int main() {
  auto sys = AffineRootSystem::build('A', 1);
  auto base = EvalPoint::from_h({Complex(0.55, 0.13), Complex(0.5, -0.07)});
  struct Case {
    const char* name;
    Weight lambda;
  };
  std::vector<Case> cases{{"L(0)", Weight::zero(sys)}, {"L(s1.0)", Weight::zero(sys).minus({0, 1})},
                          {"L(labels -2,-2)", Weight::from_labels({Scalar(-2), Scalar(-2)})}};
  for (auto& c : cases) {
    ModuleEvaluator ev(sys, ModuleSpec::simple(c.lambda));
    std::cout << c.name << '\n';
    for (RootVec a : {RootVec{1, 0}, RootVec{0, 1}, RootVec{1, 2}}) {
      auto rep = pole_scan(ev, a, base);
      std::cout << "  root (" << a[0] << "," << a[1] << "): order " << rep.order << "  " << to_string(rep.verdict)
                << '\n';
    }
  }
  return 0;
}
