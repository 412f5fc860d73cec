// Walk every index-2 face of a diagram's cube and report which decorated
// faces are ladybugs, then check the index-3 boundary graphs.

#include <iostream>

#include "khoflow/moduli.hpp"

int main() {
  using namespace khoflow;
  auto dia = parse_diagram("X 1 5 2 4; X 2 8 3 7; X 5 1 6 8; X 6 4 7 3");  // (s1 s2)^2
  auto sweep = sweep_faces(dia);
  int ladybugs = 0, six_cycles = 0;
  for (auto& f : sweep.faces) {
    if (f.index == 2 && f.ladybug) ++ladybugs;
    if (f.index == 3) six_cycles += (int)f.components.size();
  }
  std::cout << "decorated faces: " << sweep.faces.size() << "\n"
            << "ladybug faces:   " << ladybugs << "\n"
            << "6-cycles seen:   " << six_cycles << "\n"
            << (sweep.all_ok ? "all boundary checks passed\n" : "checks failed\n");
  return sweep.all_ok ? 0 : 1;
}
