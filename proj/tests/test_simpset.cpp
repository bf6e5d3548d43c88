#include <doctest.h>

#include <random>

#include "scissors/chain.hpp"
#include "scissors/simpset.hpp"

using namespace scissors;

namespace {

std::vector<HomologyGroup> reduced(const SimpSet& x, Coeff c = Coeff::Z, int max = -1) {
  return nonzero(homology(normalized_chains(x, max), c, max));
}

bool single(const std::vector<HomologyGroup>& h, int degree, int rank, std::vector<Int> torsion = {}) {
  return h.size() == 1 && h[0].degree == degree && h[0].rank == rank && h[0].torsion == torsion;
}

}  // namespace

TEST_CASE("mask helpers") {
  CHECK(surjection_values(0b101, 3) == std::vector<int>{0, 0, 1, 1});
  CHECK(mask_from_values({0, 0, 1, 1}) == 0b101u);
  CHECK(insert_bit(0b1, 0, true) == 0b11u);
  CHECK(insert_bit(0b1, 1, false) == 0b1u);
  CHECK(remove_bit(0b110, 1) == 0b10u);
  CHECK(compress_mask(0b1010, 0b0010) == 0b100u);
}

TEST_CASE("circles") {
  auto s1 = circle_S1();
  CHECK(s1.count(0) == 1);
  CHECK(s1.count(1) == 1);
  CHECK_FALSE(s1.check());
  auto ss = circle_Ssigma();
  CHECK(ss.count(0) == 2);
  CHECK(ss.count(1) == 2);
  CHECK_FALSE(ss.check());
  // d0(+1) is the second vertex
  CHECK(ss.face(SimpSet::nd(1, 1), 0) == SimpSet::nd(0, 1));
  CHECK(single(reduced(s1), 1, 1));
  CHECK(single(reduced(ss), 1, 1));
  auto ssp = std::make_shared<SimpSet>(ss);
  CHECK_FALSE(ssigma_action(ssp).check());
}

TEST_CASE("face formula on degenerate simplices") {
  auto s1 = circle_S1();
  // s0 of the edge: faces d0 = edge, d1 = edge, d2 = s0 d1(edge) = s0 *
  Simp e = SimpSet::nd(1, 0);
  Simp s = s1.degen(e, 0);
  CHECK(s1.face(s, 0) == e);
  CHECK(s1.face(s, 1) == e);
  CHECK(s1.face(s, 2) == s1.base(1));
  // simplicial identities on all simplices up to degree 4
  for (int n = 2; n <= 4; ++n)
    for (auto& x : s1.simplices(n, true))
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) CHECK(s1.face(s1.face(x, j), i) == s1.face(s1.face(x, i), j - 1));
}

TEST_CASE("smash products of circles") {
  auto s1 = circle_S1(), ss = circle_Ssigma();
  auto a = smash(s1, s1);
  CHECK_FALSE(a.space.check());
  CHECK(single(reduced(a.space), 2, 1));
  auto b = smash(ss, s1);
  CHECK_FALSE(b.space.check());
  CHECK(single(reduced(b.space), 2, 1));
  auto c = smash(s1, point());
  CHECK(c.space.size() == 0);
}

TEST_CASE("reduced join") {
  auto s0 = sphere0();
  auto j = reduced_join(s0, s0);
  CHECK_FALSE(j.space.check());
  CHECK(j.space.count(1) == 1);
  CHECK(single(reduced(j.space), 1, 1));
  auto s1 = circle_S1();
  auto j2 = reduced_join(s1, s1);
  CHECK_FALSE(j2.space.check());
  CHECK(single(reduced(j2.space), 3, 1));
  CHECK(reduced_join(point(), s1).space.size() == 0);
}

TEST_CASE("subdivision") {
  CHECK(subdivide(point()).space.size() == 0);
  auto sd1 = subdivide(circle_S1());
  CHECK_FALSE(sd1.space.check());
  CHECK(single(reduced(sd1.space), 1, 1));
  auto sd2 = subdivide(sphere_simplex_model(2));
  CHECK_FALSE(sd2.space.check());
  CHECK(single(reduced(sd2.space), 2, 1));
}

TEST_CASE("smash to join") {
  auto s0 = std::make_shared<SimpSet>(sphere0());
  auto m = build_smash_to_join(s0, s0);
  CHECK_FALSE(m.map->check());
  // (1, s0 x0, s0 y0) goes to the join edge
  auto c = induced_chain_map(*m.map);
  CHECK(is_quasi_iso(normalized_chains(*m.source), normalized_chains(*m.target), c));
  auto s1 = std::make_shared<SimpSet>(circle_S1());
  auto m2 = build_smash_to_join(s1, s1);
  CHECK_FALSE(m2.map->check());
  auto cs = normalized_chains(*m2.source), ct = normalized_chains(*m2.target);
  HomologyBasis hs(cs, 3), ht(ct, 3);
  auto f = induced_homology(hs, ht, induced_chain_map(*m2.map));
  REQUIRE(f.size() == 1);
  CHECK(abs(f[0][0]) == 1);
}

TEST_CASE("gamma has degree two") {
  auto g = gamma_map();
  CHECK_FALSE(g.map->check());
  auto cs = normalized_chains(*g.source), ct = normalized_chains(*g.target);
  HomologyBasis hs(cs, 2), ht(ct, 2);
  auto f = induced_homology(hs, ht, induced_chain_map(*g.map));
  REQUIRE(f.size() == 1);
  CHECK(abs(f[0][0]) == 2);
}

TEST_CASE("homotopy orbits of spheres") {
  auto s0 = std::make_shared<SimpSet>(sphere0());
  auto a = GroupAction::trivial(s0, FiniteGroup::z2_sign());
  auto o = homotopy_orbits(a, 5);
  CHECK_FALSE(o.check());
  auto h = homology(normalized_chains(o), Coeff::Z, 4);
  CHECK(h[0].zero() == false);
  CHECK(h[1].torsion == std::vector<Int>{2});
  CHECK(h[2].zero());
  CHECK(h[3].torsion == std::vector<Int>{2});
  CHECK(h[4].zero());
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  auto o2 = homotopy_orbits(ssigma_action(ss), 5);
  CHECK_FALSE(o2.check());
  auto h2 = homology(normalized_chains(o2), Coeff::Z, 4);
  CHECK(h2[1].torsion == std::vector<Int>{2});
  CHECK(h2[2].zero());
  CHECK(h2[3].torsion == std::vector<Int>{2});
  auto hz = homology(normalized_chains(o2), Coeff::Zhalf, 4);
  for (auto& g : hz) CHECK(g.zero());
}
