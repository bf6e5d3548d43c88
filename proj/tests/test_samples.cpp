#include <doctest.h>

#include "fixtures.hpp"

using namespace fixtures;

TEST_CASE("random simplicial sets satisfy the simplicial identities") {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    auto s = random_pointed_simpset(rng);
    CHECK_FALSE(s.check().has_value());
  }
}

TEST_CASE("random quotient cubes commute") {
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto c = random_quotient_cube(rng, 1 + t % 3);
    auto bad = c.check();
    CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));
  }
}

TEST_CASE("random point families contain every proper span") {
  std::mt19937 rng(3);
  for (int d = 1; d <= 3; ++d) {
    auto [f, pts] = random_point_family(rng, d);
    CHECK(static_cast<int>(pts.size()) == d + 1);
    CHECK(static_cast<int>(f->members().size()) >= (1 << (d + 1)) - 2);
  }
}
