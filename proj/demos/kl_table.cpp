// Prints the nontrivial Kazhdan-Lusztig polynomials of affine A2 up to a length.
#include <iostream>

#include "affchar/coxkl.hpp"

using namespace affchar;

namespace {

std::string word_str(const std::vector<int>& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int i : w) s += "s" + std::to_string(i);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int L = argc > 1 ? std::stoi(argv[1]) : 6;
  KLTable kl(ReflectionGroup::ambient(AffineRootSystem::build('A', 2)));
  kl.compute_all(L);
  auto& T = kl.table();
  std::cout << "elements up to length " << L << ": " << T.layer_end(L) << '\n';
  for (int y = 0; y < T.layer_end(L); ++y)
    for (int x : T.lower_interval(y)) {
      auto P = kl.P(x, y);
      if (P.degree() < 1) continue;
      std::cout << "P(" << word_str(T.element(x).word) << ", " << word_str(T.element(y).word) << ") = " << P.str()
                << "    Q = " << kl.Q(x, y).str() << '\n';
    }
  return 0;
}
