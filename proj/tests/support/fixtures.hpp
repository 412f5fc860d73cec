#pragma once

// Shared diagram strings and explicit resolution-configuration fixtures.
//
// Handedness bits in the explicit fixtures are read off coordinate drawings
// with circles stored counterclockwise. Two recurring patterns: an arc joining
// two side-by-side circles carries (true, true); a chord drawn inside a
// circle carries (false, false).

#include <string>

#include "khoflow/pd.hpp"
#include "khoflow/resolution.hpp"

namespace fixtures {

inline const char* unknot_0 = "O";
inline const char* unknot_neg_kink = "X 1 2 2 1";  // 1-crossing unknot, n-=1
inline const char* unknot_pos_kink = "X 1 1 2 2";
inline const char* hopf_pos = "X 1 3 2 4; X 3 1 4 2";
inline const char* trefoil_left = "X 4 1 5 2; X 2 5 3 6; X 6 3 1 4";
inline const char* trefoil_right = "X 4 2 5 1; X 2 6 3 5; X 6 4 1 3";

inline khoflow::LinkDiagram diagram(const char* txt) { return khoflow::parse_diagram(txt); }

// One circle, two interleaved arcs: arc 0 an inside chord (N,S), arc 1 an
// outside arc (E,W). Sites counterclockwise from N.
inline khoflow::ResolutionConfig ladybug() {
  return khoflow::make_config({
      {{0, 0, 0}, {1, 0, 1}, {0, 1, 0}, {1, 1, 1}},
  });
}

// One circle, two arcs with unlinked endpoint pairs (both chords inside,
// side by side).
inline khoflow::ResolutionConfig two_chords_unlinked() {
  return khoflow::make_config({
      {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}},
  });
}

// A five-circle, four-arc configuration exercising every feature at once:
// Z4 is isolated, Z5 is a leaf, and A1 (arc 0) cuts an empty lobe off Z1,
// making it a co-leaf.
inline khoflow::ResolutionConfig running_example() {
  return khoflow::make_config({
      {{0, 0, 0}, {0, 1, 0}, {1, 0, 1}},  // Z1: chord A1 + arc A2
      {{1, 1, 1}, {2, 0, 1}},             // Z2
      {{2, 1, 1}, {3, 0, 1}},             // Z3
      {},                                 // Z4 isolated
      {{3, 1, 1}},                        // Z5: leaf
  });
}

// Basic index-3 configuration of type (e): one circle, chords A2 inside,
// A1 and A3 outside; faces {A1,A2} and {A2,A3} are ladybugs, {A1,A3} is not.
// Sites counterclockwise: A1.0, A2.0, A1.1, A3.0, A2.1, A3.1.
inline khoflow::ResolutionConfig ind3_config_e() {
  return khoflow::make_config({
      {{0, 0, 1}, {1, 0, 0}, {0, 1, 1}, {2, 0, 1}, {1, 1, 0}, {2, 1, 1}},
  });
}

// Two circles joined by three parallel arcs (type (d); no leaves, no
// co-leaves). Taken straight from the all-zero resolution of the trefoil.
inline khoflow::ResolutionConfig ind3_config_d() {
  return khoflow::resolve(diagram(trefoil_left), {0, 0, 0});
}

// Leaf-plus-ladybug configurations: the ladybug of arcs {1,2} with a leaf
// circle attached by arc 0. The two variants attach the leaf arc in a
// right-pair segment vs a left-pair segment.
inline khoflow::ResolutionConfig ind3_leaf_ladybug(bool right_segment) {
  using A = std::array<int, 3>;
  std::vector<A> big;
  // ladybug sites ccw: N(1,0,F) W(2,0,T) S(1,1,F) E(2,1,T); leaf arc endpoint
  // inserted either in segment (E,N) (right pair) or (N,W) (left pair).
  if (right_segment)
    big = {A{1, 0, 0}, A{2, 0, 1}, A{1, 1, 0}, A{2, 1, 1}, A{0, 0, 1}};
  else
    big = {A{1, 0, 0}, A{0, 0, 1}, A{2, 0, 1}, A{1, 1, 0}, A{2, 1, 1}};
  return khoflow::make_config({big, {A{0, 1, 1}}});
}

}  // namespace fixtures
