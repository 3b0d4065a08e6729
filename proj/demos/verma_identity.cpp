// Checks R * ch M(0) = 1 exactly and at a point of Y_> for affine A2.
#include <iostream>

#include "affchar/numerics.hpp"

using namespace affchar;

int main() {
  auto sys = AffineRootSystem::build('A', 2);
  const std::int64_t H = 12;
  auto M = verma_char(sys, Weight::zero(sys), H);
  auto prod = multiply(sys, denominator_series(sys, H), M);
  bool exact = prod.coeffs.size() == 1 && prod.at(RootVec(sys.dim(), 0)) == 1;
  std::cout << sys.id() << ": R * ch M(0) = 1 up to height " << H << ": " << (exact ? "yes" : "no") << '\n';

  auto p = EvalPoint::from_z({Complex(0.3, 0.1), Complex(0.4, -0.2), Complex(0.35, 0.05)});
  auto R = eval_R_converged(sys, p);
  auto ch = eval_char(sys, verma_char(sys, Weight::zero(sys), 30), p);
  std::cout << "R(h)          = " << R.value << '\n'
            << "ch M(0)(h)    = " << ch.value << "  (tail <= " << ch.tail_bound << ")\n"
            << "|R ch - 1|    = " << std::abs(R.value * ch.value - Complex(1)) << '\n';
  return exact ? 0 : 1;
}
