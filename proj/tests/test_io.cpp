#include <catch2/catch_amalgamated.hpp>

#include "khoflow/khcomplex.hpp"
#include "khoflow/table_io.hpp"
#include "support/fixtures.hpp"

using namespace khoflow;

TEST_CASE("homology tables round-trip through json") {
  for (auto* txt : {fixtures::trefoil_left, fixtures::hopf_pos, fixtures::unknot_0}) {
    auto table = build_complex(fixtures::diagram(txt)).homology_table();
    auto j = table_to_json(table);
    auto back = table_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(back == table);
  }
}

TEST_CASE("sweep reports serialize") {
  auto sw = sweep_faces(fixtures::diagram(fixtures::trefoil_left));
  auto j = sweep_to_json(sw);
  REQUIRE(j.at("all_ok").get<bool>());
  REQUIRE(j.at("faces").size() == sw.faces.size());
}
