#include <doctest.h>

#include "scissors/grouphom.hpp"

using namespace scissors;

namespace {

SimpSet bouquet(int k) {
  SimpSet s;
  for (int i = 0; i < k; ++i) s.add(1, "e" + std::to_string(i), {s.base(0), s.base(0)});
  return s;
}

GroupAction rotate_bouquet(SimpSetPtr x, int k) {
  GroupAction a(x, FiniteGroup::cyclic(k));
  for (int g = 0; g < k; ++g) {
    std::vector<int> edges(k);
    for (int i = 0; i < k; ++i) edges[i] = (i + g) % k;
    a.set(g, {{0}, edges});
  }
  return a;
}

}  // namespace

TEST_CASE("bar complexes of Z/2") {
  auto g = FiniteGroup::z2_sign();
  auto bar = bar_complex(g, {1, 1}, 7);
  CHECK_FALSE(bar.check());
  auto h = group_homology(g, {1, 1}, Coeff::Z, 7);
  CHECK(h[0].rank == 1);
  for (int i = 1; i < 7; ++i) {
    if (i % 2)
      CHECK(h[i].torsion == std::vector<Int>{2});
    else
      CHECK(h[i].zero());
  }
  auto ht = group_homology(g, g.character(), Coeff::Z, 7);
  for (int i = 0; i < 7; ++i) {
    CHECK(ht[i].rank == 0);
    if (i % 2 == 0)
      CHECK(ht[i].torsion == std::vector<Int>{2});
    else
      CHECK(ht[i].zero());
  }
  for (auto& x : group_homology(g, g.character(), Coeff::Zhalf, 7)) CHECK(x.zero());
  auto triv = group_homology(FiniteGroup::trivial(), {}, Coeff::Zhalf, 4);
  CHECK(triv[0].rank == 1);
  for (int i = 1; i < 4; ++i) CHECK(triv[i].zero());
}

TEST_CASE("dihedral abelianization") {
  auto d4 = FiniteGroup::dihedral(4);
  auto h = group_homology(d4, {}, Coeff::Z, 3);
  CHECK(h[1].rank == 0);
  CHECK(h[1].torsion == std::vector<Int>{2, 2});
  auto ht = group_homology(d4, d4.character(), Coeff::Z, 2);
  CHECK(ht[0].rank == 0);
  CHECK(ht[0].torsion == std::vector<Int>{2});
  CHECK(group_homology(d4, d4.character(), Coeff::Zhalf, 2)[0].zero());
}

TEST_CASE("bar-model orbit chains agree with the diagonal model") {
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  auto act = ssigma_action(ss);
  auto diag = homology(normalized_chains(homotopy_orbits(act, 6)), Coeff::Z, 5);
  auto bar = homology(orbit_chains(normalized_chains(*ss), chain_action(act), 6).complex, Coeff::Z, 5);
  CHECK(diag == bar);
  auto x = std::make_shared<SimpSet>(bouquet(3));
  auto rot = rotate_bouquet(x, 3);
  CHECK_FALSE(rot.check());
  auto oc = orbit_chains(normalized_chains(*x), chain_action(rot), 5);
  CHECK_FALSE(oc.complex.check());
  CHECK(homology(normalized_chains(homotopy_orbits(rot, 5)), Coeff::Z, 4) == homology(oc.complex, Coeff::Z, 4));
}

TEST_CASE("homotopy orbit spectral sequence in the concentrated case") {
  auto s0 = std::make_shared<SimpSet>(sphere0());
  auto d3 = FiniteGroup::dihedral(3);
  auto r = hoss_check(GroupAction::trivial(s0, d3), 5);
  CHECK(r.ok);
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  auto r2 = hoss_check(ssigma_action(ss), 6);
  CHECK(r2.ok);
  CHECK(r2.concentrated_degree == 1);
  CHECK(r2.orbits[1].torsion == std::vector<Int>{2});
  auto x = std::make_shared<SimpSet>(bouquet(3));
  CHECK(hoss_check(rotate_bouquet(x, 3), 5).ok);
}

TEST_CASE("restricting homotopy orbits to a subcomplex") {
  auto x = std::make_shared<SimpSet>(bouquet(2));
  auto a = rotate_bouquet(x, 2);
  std::vector<std::vector<bool>> y{{true}, {true, false}};
  auto r = reduce_orbits(a, y, 5);
  CHECK(r.h.order() == 1);
  auto hy = homology(normalized_chains(r.orbits), Coeff::Z, 4);
  auto hx = homology(normalized_chains(homotopy_orbits(a, 5)), Coeff::Z, 4);
  CHECK(nonzero(hy) == nonzero(hx));
  CHECK(nonzero(hy).size() == 1);
  CHECK(nonzero(hy)[0].degree == 1);
  auto full = reduce_orbits(a, {{true}, {true, true}}, 4);
  CHECK(full.h.order() == 2);
  auto x3 = std::make_shared<SimpSet>(bouquet(3));
  auto a3 = rotate_bouquet(x3, 3);
  CHECK_THROWS_WITH_AS(reduce_orbits(a3, {{true}, {true, true, false}}, 3), doctest::Contains("ConditionsFail"),
                       Error);
}
