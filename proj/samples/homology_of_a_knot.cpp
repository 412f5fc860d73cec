// Compute the Khovanov homology of a small knot from an inline PD code and
// print the table together with its Jones polynomial.

#include <iostream>

#include "khoflow/khcomplex.hpp"
#include "khoflow/table_io.hpp"

int main() {
  using namespace khoflow;
  auto dia = parse_diagram("X 4 1 5 2; X 2 5 3 6; X 6 3 1 4");  // left trefoil
  auto cx = build_complex(dia);
  std::cout << table_to_text(cx.homology_table());
  std::cout << "V(L) = " << cx.jones_polynomial().str() << "\n";
  return 0;
}
