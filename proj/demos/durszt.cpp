// Durszt-type example: Lambda_2 is the open upper half disk plus {0}, while
// every unitary dilation also picks up the real segment (-1, 1).

#include <iostream>

#include "hrnr/hrnr.hpp"

using namespace hrnr;

int main() {
  const auto m = models::durszt(2);
  const Rank k = Rank::finite(2);
  for (Point p : {Point(0, 0), Point(0.3, 0.4), Point(0.5, 0), Point(0, 1)}) {
    const auto v = member(m, k, p);
    std::cout << p << ": " << to_string(v.value);
    if (v.witness)
      std::cout << "  (H at angle " << v.witness->normal_angle << ", ray " << v.witness->ray_sign
                << ", dim " << v.witness_dim.str() << ")";
    std::cout << '\n';
  }
  const auto reg = region(m, k, 64);
  std::cout << "polygon vertices: " << reg.polygon.size() << '\n';
  std::cout << "wu-check: " << to_string(wu_check(m, k, reg).verdict) << '\n';
}
