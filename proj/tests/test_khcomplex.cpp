#include <catch2/catch_amalgamated.hpp>

#include "khoflow/exactness.hpp"
#include "khoflow/khcomplex.hpp"
#include "support/fixtures.hpp"

using namespace khoflow;

namespace {

// look up a differential entry by generator content
std::int64_t entry(const KhBlock& b, int h, KhGenerator from, KhGenerator to) {
  auto& cols = b.gens.at(h);
  auto& rows = b.gens.at(h + 1);
  int cj = -1, ri = -1;
  for (int j = 0; j < (int)cols.size(); ++j)
    if (cols[j].vertex == from.vertex && cols[j].plus_mask == from.plus_mask) cj = j;
  for (int i = 0; i < (int)rows.size(); ++i)
    if (rows[i].vertex == to.vertex && rows[i].plus_mask == to.plus_mask) ri = i;
  REQUIRE(cj >= 0);
  REQUIRE(ri >= 0);
  return b.cx.d_at(h)->get(ri, cj);
}

BigradedTable shifted(const BigradedTable& t, int dh, int dq) {
  BigradedTable out;
  for (auto& [ij, g] : t) out[{ij.first + dh, ij.second + dq}] = g;
  return out;
}

}  // namespace

TEST_CASE("the one-crossing unknot complex") {
  auto cx = build_complex(fixtures::diagram(fixtures::unknot_neg_kink));
  SECTION("generators and gradings") {
    REQUIRE(cx.diagram().n_minus == 1);
    // quantum gradings -3..1; x=(u0,+) at (-1,-1), y at (-1,-3)
    auto bm1 = cx.block(-1);
    REQUIRE(bm1.cx.dim_at(-1) == 1);  // x
    REQUIRE(bm1.cx.dim_at(0) == 2);   // b, c
    auto b1 = cx.block(1);
    REQUIRE(b1.cx.dim_at(0) == 1);  // a
  }
  SECTION("differentials: dx = b + c, dy = d") {
    auto bm1 = cx.block(-1);
    // vertex 0 has one circle; vertex 1 has two
    KhGenerator x{0, 1};  // x_plus on the single circle
    REQUIRE(entry(bm1, -1, x, {1, 0b01}) == 1);
    REQUIRE(entry(bm1, -1, x, {1, 0b10}) == 1);
    auto bm3 = cx.block(-3);
    KhGenerator y{0, 0};
    REQUIRE(entry(bm3, -1, y, {1, 0}) == 1);
  }
  SECTION("homology: Z at (0,-1) and (0,1)") {
    auto t = cx.homology_table();
    BigradedTable want;
    want[{0, -1}] = {1, {}};
    want[{0, 1}] = {1, {}};
    REQUIRE(t == want);
  }
}

TEST_CASE("the hopf link complex matches the displayed diagrams") {
  auto cx = build_complex(fixtures::diagram(fixtures::hopf_pos));
  REQUIRE(cx.diagram().n_plus == 2);
  SECTION("quantum grading 4: da = b + c, db = -d - e, dc = d + e") {
    auto b4 = cx.block(4);
    REQUIRE(b4.cx.dim_at(0) == 1);
    REQUIRE(b4.cx.dim_at(1) == 2);
    REQUIRE(b4.cx.dim_at(2) == 2);
    KhGenerator a{0, 0b11}, b{1, 1}, c{2, 1}, d{3, 0b01}, e{3, 0b10};
    REQUIRE(entry(b4, 0, a, b) == 1);
    REQUIRE(entry(b4, 0, a, c) == 1);
    REQUIRE(entry(b4, 1, b, d) == -1);
    REQUIRE(entry(b4, 1, b, e) == -1);
    REQUIRE(entry(b4, 1, c, d) == 1);
    REQUIRE(entry(b4, 1, c, e) == 1);
  }
  SECTION("homology: Z at (0,0),(0,2),(2,4),(2,6)") {
    BigradedTable want;
    want[{0, 0}] = {1, {}};
    want[{0, 2}] = {1, {}};
    want[{2, 4}] = {1, {}};
    want[{2, 6}] = {1, {}};
    REQUIRE(cx.homology_table() == want);
  }
}

TEST_CASE("left trefoil homology and reduced homology") {
  auto cx = build_complex(fixtures::diagram(fixtures::trefoil_left));
  SECTION("unreduced with 2-torsion") {
    BigradedTable want;
    want[{-3, -9}] = {1, {}};
    want[{-2, -7}] = {0, {2}};
    want[{-2, -5}] = {1, {}};
    want[{0, -3}] = {1, {}};
    want[{0, -1}] = {1, {}};
    REQUIRE(cx.homology_table() == want);
  }
  SECTION("reduced: three Z's") {
    BigradedTable want;
    want[{-3, -8}] = {1, {}};
    want[{-2, -6}] = {1, {}};
    want[{0, -2}] = {1, {}};
    REQUIRE(reduced_homology_table(cx, 1) == want);
  }
  SECTION("mod 2 obeys universal coefficients") {
    // cochain grading: H^i(F2) = H^i(Z) (x) F2 + Tor(H^{i+1}(Z), F2)
    auto z = cx.homology_table();
    auto f2 = cx.homology_table(RingSpec::field(2));
    for (auto& [ij, g] : f2) {
      auto zg = z.count(ij) ? z[ij] : HomologyGroup{};
      auto above = z.count({ij.first + 1, ij.second}) ? z[{ij.first + 1, ij.second}] : HomologyGroup{};
      auto count2 = [](const HomologyGroup& h) {
        std::int64_t c = 0;
        for (auto t : h.torsion)
          if (t % 2 == 0) ++c;
        return c;
      };
      REQUIRE(g.free_rank == zg.free_rank + count2(zg) + count2(above));
    }
  }
}

TEST_CASE("delta squared vanishes blockwise") {
  for (auto* txt : {fixtures::unknot_pos_kink, fixtures::hopf_pos, fixtures::trefoil_left,
                    fixtures::trefoil_right}) {
    auto cx = build_complex(fixtures::diagram(txt));
    auto [qlo, qhi] = cx.quantum_range();
    for (int q = qlo; q <= qhi; ++q) {
      auto b = cx.block(q);
      INFO(txt << " q=" << q);
      REQUIRE(b.cx.differentials_square_to_zero());
    }
  }
}

TEST_CASE("gauge invariance of khovanov homology") {
  auto dia = fixtures::diagram(fixtures::trefoil_left);
  auto base = build_complex(dia).homology_table();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto cx = build_complex(dia, standard_sign(3).gauged_random(seed));
    REQUIRE(cx.homology_table() == base);
  }
}

TEST_CASE("the covering relation on labeled configurations") {
  // two circles joined by one arc, in a common picture
  auto d = make_config({{{0, 0, 1}}, {{0, 1, 1}}});
  auto merged = surger_one(d, 0);
  auto lc = [](ResolutionConfig c, std::vector<int> l) { return LabeledConfig{std::move(c), std::move(l)}; };
  SECTION("merge label rules") {
    REQUIRE(prec_covers(lc(d, {x_plus, x_plus}), lc(merged, {x_plus})));
    REQUIRE_FALSE(prec_covers(lc(d, {x_plus, x_plus}), lc(merged, {x_minus})));
    REQUIRE(prec_covers(lc(d, {x_plus, x_minus}), lc(merged, {x_minus})));
    REQUIRE_FALSE(prec_covers(lc(d, {x_plus, x_minus}), lc(merged, {x_plus})));
    REQUIRE_FALSE(prec_covers(lc(d, {x_minus, x_minus}), lc(merged, {x_minus})));
  }
  SECTION("split label rules") {
    auto one = make_config({{{0, 0, 0}, {0, 1, 0}}});  // chord on one circle
    auto two = surger_one(one, 0);
    REQUIRE(two.num_circles() == 2);
    REQUIRE(prec_covers(lc(one, {x_plus}), lc(two, {x_plus, x_minus})));
    REQUIRE(prec_covers(lc(one, {x_plus}), lc(two, {x_minus, x_plus})));
    REQUIRE_FALSE(prec_covers(lc(one, {x_plus}), lc(two, {x_plus, x_plus})));
    REQUIRE(prec_covers(lc(one, {x_minus}), lc(two, {x_minus, x_minus})));
    REQUIRE_FALSE(prec_covers(lc(one, {x_minus}), lc(two, {x_plus, x_minus})));
  }
  SECTION("strictness") {
    REQUIRE_FALSE(prec_covers(lc(d, {x_plus, x_plus}), lc(d, {x_plus, x_plus})));
    REQUIRE_FALSE(prec(lc(d, {x_plus, x_plus}), lc(d, {x_plus, x_plus})));
  }
  SECTION("transitive closure through a ladybug") {
    auto lb = fixtures::ladybug();
    auto top = full_surgery(lb);
    REQUIRE(prec(lc(lb, {x_plus}), lc(top, {x_minus})));
    REQUIRE_FALSE(prec(lc(lb, {x_minus}), lc(top, {x_minus})));
    REQUIRE_FALSE(prec(lc(lb, {x_plus}), lc(top, {x_plus})));
  }
}

TEST_CASE("crossingless unknot complexes") {
  auto cx = build_complex(fixtures::diagram(fixtures::unknot_0));
  BigradedTable want;
  want[{0, -1}] = {1, {}};
  want[{0, 1}] = {1, {}};
  REQUIRE(cx.homology_table() == want);
  // reduced: a single generator in bidegree (0,0)
  BigradedTable rwant;
  rwant[{0, 0}] = {1, {}};
  REQUIRE(reduced_homology_table(cx, cx.diagram().edge_label[0]) == rwant);
}

TEST_CASE("reduced split structure") {
  auto cx = build_complex(fixtures::diagram(fixtures::trefoil_left));
  auto split = reduced_split(cx, 1);
  SECTION("generator counts halve") {
    auto [qlo, qhi] = cx.quantum_range();
    for (int q = qlo; q <= qhi; ++q) {
      auto whole = cx.block(q);
      auto sub = cx.block(q, split.sub);
      auto quot = cx.block(q, split.quot);
      for (auto& [h, dim] : whole.cx.dim)
        REQUIRE(sub.cx.dim_at(h) + quot.cx.dim_at(h) == dim);
    }
  }
  SECTION("flipping the basepoint label: sub at j-1 == quot at j+1") {
    auto [qlo, qhi] = cx.quantum_range();
    for (int q = qlo + 1; q + 1 <= qhi; q += 2) {
      auto sub = cx.block(q - 1, split.sub);
      auto quot = cx.block(q + 1, split.quot);
      for (auto& [h, gens] : sub.gens) {
        REQUIRE(quot.cx.dim_at(h) == (int)gens.size());
        if (!sub.cx.d_at(h)) {
          REQUIRE((quot.cx.d_at(h) == nullptr || quot.cx.d_at(h)->nnz() == sub.cx.d_at(h)->nnz()));
          continue;
        }
        // the generator bijection flips the basepoint circle's label bit
        auto flip = [&](const KhGenerator& g) {
          int c = cx.circle_of_edge(g.vertex, split.basepoint_edge_index);
          return KhGenerator{g.vertex, g.plus_mask ^ (1u << c)};
        };
        if (!sub.gens.count(h + 1)) continue;
        for (auto& from : gens)
          for (auto& to : sub.gens.at(h + 1)) {
            auto e1 = entry(sub, h, from, to);
            auto e2 = entry(quot, h, flip(from), flip(to));
            REQUIRE(e1 == e2);
          }
      }
    }
  }
  SECTION("unreduced/reduced long exact sequence is rank exact") {
    auto [qlo, qhi] = cx.quantum_range();
    for (int q = qlo; q <= qhi; ++q) {
      auto rep = les_rank_exact(cx.block(q, split.sub), cx.block(q), cx.block(q, split.quot));
      INFO("q=" << q << ": " << rep.detail);
      REQUIRE(rep.exact);
    }
  }
}

TEST_CASE("skein split") {
  auto dia = fixtures::diagram(fixtures::trefoil_left);
  auto cx = build_complex(dia);
  for (int c = 0; c < 3; ++c) {
    auto sk = skein_split(cx, c);
    SECTION("resolved diagrams at crossing " + std::to_string(c)) {
      REQUIRE(sk.l0.num_crossings() == 2);
      REQUIRE(sk.l1.num_crossings() == 2);
    }
    SECTION("pieces compute the resolved homology, shifted (crossing " + std::to_string(c) + ")") {
      auto sub_t = cx.homology_table(RingSpec::integers(), 0, sk.sub);
      auto l1_t = build_complex(sk.l1).homology_table();
      REQUIRE(sub_t == shifted(l1_t, sk.dh_sub, sk.dq_sub));
      auto quot_t = cx.homology_table(RingSpec::integers(), 0, sk.quot);
      auto l0_t = build_complex(sk.l0).homology_table();
      REQUIRE(quot_t == shifted(l0_t, sk.dh_quot, sk.dq_quot));
    }
    SECTION("skein long exact sequence (crossing " + std::to_string(c) + ")") {
      auto [qlo, qhi] = cx.quantum_range();
      for (int q = qlo; q <= qhi; ++q) {
        auto rep = les_rank_exact(cx.block(q, sk.sub), cx.block(q), cx.block(q, sk.quot));
        INFO("q=" << q << ": " << rep.detail);
        REQUIRE(rep.exact);
      }
    }
  }
  SECTION("degenerate crossing index") {
    REQUIRE_THROWS_AS(skein_split(cx, 3), LengthMismatch);
  }
}

TEST_CASE("euler characteristic and jones") {
  SECTION("unknots") {
    for (auto* txt : {fixtures::unknot_0, fixtures::unknot_neg_kink, fixtures::unknot_pos_kink}) {
      auto cx = build_complex(fixtures::diagram(txt));
      Laurent want;
      want.add_term(1, 1);
      want.add_term(-1, 1);
      REQUIRE(cx.graded_euler() == want);
      REQUIRE(cx.jones_polynomial() == Laurent(1, 0));
    }
  }
  SECTION("positive hopf") {
    auto cx = build_complex(fixtures::diagram(fixtures::hopf_pos));
    Laurent want;
    for (int p : {0, 2, 4, 6}) want.add_term(p, 1);
    REQUIRE(cx.graded_euler() == want);
  }
  SECTION("left trefoil") {
    auto cx = build_complex(fixtures::diagram(fixtures::trefoil_left));
    Laurent want;  // -q^-9 + q^-5 + q^-3 + q^-1
    want.add_term(-9, -1);
    want.add_term(-5, 1);
    want.add_term(-3, 1);
    want.add_term(-1, 1);
    REQUIRE(cx.graded_euler() == want);
    Laurent v;  // q^-2 + q^-6 - q^-8
    v.add_term(-2, 1);
    v.add_term(-6, 1);
    v.add_term(-8, -1);
    REQUIRE(cx.jones_polynomial() == v);
  }
}

TEST_CASE("mirror duality of free parts") {
  auto dia = fixtures::diagram(fixtures::trefoil_left);
  auto t = build_complex(dia).homology_table(RingSpec::rationals());
  auto tm = build_complex(mirror(dia)).homology_table(RingSpec::rationals());
  BigradedTable reflected;
  for (auto& [ij, g] : t) reflected[{-ij.first, -ij.second}] = g;
  REQUIRE(tm == reflected);
}
