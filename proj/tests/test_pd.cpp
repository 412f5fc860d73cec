#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "khoflow/pd.hpp"

using namespace khoflow;

// Diagrams used throughout the suite. All are verified planar below.
namespace fixtures {
inline const char* unknot_neg_kink = "X 1 2 2 1";          // the 1-crossing unknot, n-=1
inline const char* unknot_pos_kink = "X 1 1 2 2";
inline const char* hopf_pos = "X 1 3 2 4; X 3 1 4 2";      // positive Hopf link
inline const char* trefoil_left = "X 4 1 5 2; X 2 5 3 6; X 6 3 1 4";
inline const char* trefoil_right = "X 4 2 5 1; X 2 6 3 5; X 6 4 1 3";  // mirror
}  // namespace fixtures

TEST_CASE("parse_pd on the basic shapes") {
  SECTION("three-crossing knot listing") {
    auto code = parse_pd("X 1 4 2 3 ; X 3 6 4 5 ; X 5 2 6 1");
    REQUIRE(code.size() == 3);
    REQUIRE(code.edge_labels().size() == 6);
  }
  SECTION("empty input") {
    auto code = parse_pd("");
    REQUIRE(code.size() == 0);
    REQUIRE(code.unknot_components == 0);
  }
  SECTION("one-crossing kink") {
    auto code = parse_pd("X 1 1 2 2");
    REQUIRE(code.size() == 1);
    REQUIRE(code.edge_labels().size() == 2);
  }
  SECTION("bracketed form and comments") {
    auto code = parse_pd("# a trefoil\nPD[X[4,1,5,2], X[2,5,3,6], X[6,3,1,4]]");
    REQUIRE(code.size() == 3);
  }
  SECTION("sign overrides and unknot components") {
    auto code = parse_pd("X+ 1 3 2 4; X 3 1 4 2; O; O");
    REQUIRE(code.crossings[0].sign_override == 1);
    REQUIRE(code.unknot_components == 2);
  }
  SECTION("errors") {
    REQUIRE_THROWS_AS(parse_pd("X 1 b 2 2"), MalformedToken);
    REQUIRE_THROWS_AS(parse_pd("X 1 2 3"), MalformedToken);
    REQUIRE_THROWS_AS(parse_pd("X 1 2 3 4"), EdgeCountError);
    REQUIRE_THROWS_AS(parse_pd("X 1 1 1 2"), EdgeCountError);
    REQUIRE_THROWS_AS(parse_pd("Y 1 2 2 1"), MalformedToken);
  }
}

TEST_CASE("pd round-trips through serialize") {
  for (auto* txt : {fixtures::unknot_neg_kink, fixtures::hopf_pos, fixtures::trefoil_left}) {
    auto code = parse_pd(txt);
    auto again = parse_pd(serialize(code));
    REQUIRE(again.size() == code.size());
    for (std::size_t i = 0; i < code.size(); ++i) REQUIRE(again.crossings[i].e == code.crossings[i].e);
    REQUIRE(again.unknot_components == code.unknot_components);
  }
}

TEST_CASE("orientation and signs") {
  SECTION("negative kink: the 1-crossing unknot") {
    auto dia = parse_diagram(fixtures::unknot_neg_kink);
    REQUIRE(dia.n_plus == 0);
    REQUIRE(dia.n_minus == 1);
    REQUIRE(dia.components.size() == 1);
  }
  SECTION("positive kink") {
    auto dia = parse_diagram(fixtures::unknot_pos_kink);
    REQUIRE(dia.n_plus == 1);
    REQUIRE(dia.n_minus == 0);
  }
  SECTION("positive hopf link") {
    auto dia = parse_diagram(fixtures::hopf_pos);
    REQUIRE(dia.n_plus == 2);
    REQUIRE(dia.n_minus == 0);
    REQUIRE(dia.components.size() == 2);
  }
  SECTION("left trefoil") {
    auto dia = parse_diagram(fixtures::trefoil_left);
    REQUIRE(dia.n_plus == 0);
    REQUIRE(dia.n_minus == 3);
    REQUIRE(dia.components.size() == 1);
  }
  SECTION("mirror swaps signs") {
    auto dia = mirror(parse_diagram(fixtures::trefoil_left));
    REQUIRE(dia.n_plus == 3);
    REQUIRE(dia.n_minus == 0);
    auto dia2 = parse_diagram(fixtures::trefoil_right);
    REQUIRE(dia2.n_plus == 3);
  }
  SECTION("sign override contradiction is reported") {
    REQUIRE_THROWS_AS(parse_diagram("X- 1 1 2 2"), AmbiguousOrientation);
  }
  SECTION("numbering that admits no consistent orientation") {
    // a component passing over at all three crossings with non-consecutive
    // labels leaves the over directions undetermined
    const char* odd = "X 1 2 3 4; X 3 4 5 6; X 5 6 1 2";
    REQUIRE_THROWS_AS(parse_diagram(odd), AmbiguousOrientation);
    // explicit overrides resolve it
    auto dia = parse_diagram("X+ 1 2 3 4; X+ 3 4 5 6; X+ 5 6 1 2");
    REQUIRE(dia.n_plus == 3);
    REQUIRE(dia.components.size() == 2);
  }
}

TEST_CASE("fixture diagrams are planar") {
  for (auto* txt : {fixtures::unknot_neg_kink, fixtures::unknot_pos_kink, fixtures::hopf_pos,
                    fixtures::trefoil_left, fixtures::trefoil_right}) {
    INFO(txt);
    REQUIRE(rotation_genus(parse_diagram(txt)) == 0);
  }
}

TEST_CASE("strand passages count") {
  // sum over components of crossing passages = 2 * crossings
  for (auto* txt : {fixtures::hopf_pos, fixtures::trefoil_left}) {
    auto dia = parse_diagram(txt);
    std::size_t passes = 0;
    for (auto& comp : dia.components) passes += comp.size();
    REQUIRE(passes == 2 * dia.crossings.size());
  }
}

TEST_CASE("sign multiset invariant under strand-order relabeling") {
  // relabel edges of the left trefoil by rotating labels along the strand
  auto base = parse_diagram(fixtures::trefoil_left);
  auto rotate_labels = [&](int shift) {
    PdCode code = parse_pd(fixtures::trefoil_left);
    for (auto& x : code.crossings)
      for (auto& e : x.e) e = (e - 1 + shift) % 6 + 1;
    return orient_and_sign(code);
  };
  for (int shift = 1; shift < 6; ++shift) {
    auto dia = rotate_labels(shift);
    REQUIRE(dia.n_plus == base.n_plus);
    REQUIRE(dia.n_minus == base.n_minus);
  }
}

TEST_CASE("smoothing a crossing") {
  SECTION("smoothing the kink leaves an unknot") {
    auto dia = parse_diagram(fixtures::unknot_neg_kink);
    auto s0 = smooth_crossing(dia, 0, 0);
    REQUIRE(s0.num_crossings() == 0);
    REQUIRE(s0.components.size() == 1);  // one crossingless circle
    auto s1 = smooth_crossing(dia, 0, 1);
    REQUIRE(s1.components.size() == 2);
  }
  SECTION("trefoil smoothings") {
    auto dia = parse_diagram(fixtures::trefoil_left);
    auto s0 = smooth_crossing(dia, 0, 0);
    REQUIRE(s0.num_crossings() == 2);
    REQUIRE(rotation_genus(s0) == 0);
    auto s1 = smooth_crossing(dia, 0, 1);
    REQUIRE(s1.num_crossings() == 2);
    REQUIRE(rotation_genus(s1) == 0);
    REQUIRE_THROWS_AS(smooth_crossing(dia, 5, 0), LengthMismatch);
  }
}
