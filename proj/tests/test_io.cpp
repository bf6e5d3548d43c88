#include <doctest.h>

#include "fixtures.hpp"
#include "scissors/io.hpp"

using namespace scissors;

TEST_CASE("simplicial set round trip") {
  SimpSet s = circle_Ssigma();
  SimpSet t = simpset_from_json(parse_json(simpset_to_json(s).dump()));
  CHECK(simpset_to_json(t) == simpset_to_json(s));
  CHECK(homology(normalized_chains(t)) == homology(normalized_chains(s)));
}

TEST_CASE("group and family round trips") {
  auto g = fixtures::square_group(2);
  auto h = group_from_json(parse_json(group_to_json(g).dump()));
  CHECK(h.order() == 8);
  CHECK(h.table() == g.table());
  CHECK(h.character() == g.character());
  CHECK(h.has_matrices());
  auto gen = group_from_json(parse_json(R"({"generators": [[["0","-1"],["1","0"]]]})"));
  CHECK(gen.order() == 4);
  auto fam = fixtures::coordinate_family(2);
  auto back = family_from_json(family_to_json(*fam));
  CHECK(back->size() == fam->size());
  auto lines = family_from_json(parse_json(R"({"geometry": {"flavor": "spherical", "dim": 1},
      "subspaces": [["1","0"], ["0","1"], ["1","1"]]})"));
  CHECK(lines->size() == 4);
  auto f = build_flag_join(lines, {{lines->whole()}});
  auto hh = nonzero(homology(normalized_chains(*f->space)));
  REQUIRE(hh.size() == 1);
  CHECK(hh[0].degree == 1);
  CHECK(hh[0].rank == 2);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_WITH_AS(parse_json("{\"a\": [1, 2"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(family_from_json(parse_json("{}")), doctest::Contains("geometry"), Error);
  CHECK_THROWS_WITH_AS(polytope_from_json(parse_json(R"({"flavor": "euclidean", "vertices": [[0.5, 0, 0]],
      "simplices": []})")), doctest::Contains("strings"), Error);
}

TEST_CASE("polytope input") {
  PrecisionScope ps(200);
  auto p = polytope_from_json(parse_json(R"({"flavor": "euclidean3",
      "vertices": [["0","0","0"],["1","0","0"],["0","1","0"],["0","0","1"]],
      "simplices": [[0,1,2,3,1]]})"));
  CHECK(p.simplices.size() == 1);
  CHECK(volume(p.simplices[0]).value == doctest::Approx(1.0 / 6));
  auto j = tensor_to_json(dehn_classical(unit_cube()));
  CHECK(j["zero"] == true);
}
