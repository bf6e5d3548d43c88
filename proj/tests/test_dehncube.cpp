#include <doctest.h>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "scissors/dehncube.hpp"

using namespace scissors;
using namespace fixtures;

namespace {

// Objects (b, a_1..a_i), b ≥ lo, a_j ≥ 2 (even-direction) or ≥ 1 (hat).
std::set<IndexObject> compositions(int d, bool hat) {
  std::set<IndexObject> out;
  std::function<void(IndexObject, int)> rec = [&](IndexObject o, int left) {
    if (left == 0) {
      out.insert(o);
      return;
    }
    for (int a = 1; a <= left; ++a) {
      if (!hat && a % 2) continue;
      auto p = o;
      p.parts.push_back(a);
      rec(p, left - a);
    }
  };
  for (int b = hat ? 0 : 1; b <= d; ++b) rec({b, {}}, d - b);
  return out;
}

// Rank of twisted coinvariants of H̃_d(F) from the character average.
int coinvariant_rank(const FlagSpace& f, const FiniteGroup& g, int d) {
  auto c = normalized_chains(*f.space);
  HomologyBasis hb(c, d);
  auto act = chain_action(f.action(g));
  Int sum = 0;
  for (int e = 0; e < g.order(); ++e) {
    auto m = free_part(induced_homology(hb, hb, act.maps[e]), hb, hb);
    Int tr = 0;
    for (size_t i = 0; i < m.size(); ++i) tr += m[i][i];
    sum += tr * g.det(e);
  }
  CHECK(sum % g.order() == 0);
  return static_cast<int>(Int(sum / g.order()).get_si());
}

}  // namespace

TEST_CASE("index cubes match composition enumeration") {
  for (int d = 1; d <= 6; ++d)
    for (bool hat : {false, true}) {
      auto idx = enumerate_index(d, hat);
      std::set<IndexObject> got(idx.objects.begin(), idx.objects.end());
      CHECK(got.size() == idx.objects.size());
      CHECK(got == compositions(d, hat));
      CHECK(static_cast<int>(idx.morphisms.size()) == idx.m() * (idx.vertices() / 2));
      CHECK(idx.objects[0] == IndexObject{d, {}});
    }
  auto i5 = enumerate_index(5, false);
  CHECK(i5.m() == 2);
  std::set<IndexObject> want{{5, {}}, {3, {2}}, {1, {4}}, {1, {2, 2}}};
  CHECK(std::set<IndexObject>(i5.objects.begin(), i5.objects.end()) == want);
  auto h2 = enumerate_index(2, true);
  std::set<IndexObject> want_h{{2, {}}, {1, {1}}, {0, {2}}, {0, {1, 1}}};
  CHECK(std::set<IndexObject>(h2.objects.begin(), h2.objects.end()) == want_h);
  CHECK(enumerate_index(4, false).m() == 1);
  for (auto& mor : i5.morphisms) CHECK(mor.direction % 2 == 0);
}

TEST_CASE("splits of cube edges") {
  auto idx = enumerate_index(5, true);
  // (5) cut at 3 splits the single factor of geometric dimension 5 at local dimension 3
  int bit3 = static_cast<int>(std::find(idx.cut_of_bit.begin(), idx.cut_of_bit.end(), 3) - idx.cut_of_bit.begin());
  CHECK(idx.split(0, bit3) == std::pair{0, 3});
  int bit1 = static_cast<int>(std::find(idx.cut_of_bit.begin(), idx.cut_of_bit.end(), 1) - idx.cut_of_bit.begin());
  // from (1,4) adding the cut at 3 splits V_1 (geometric dim 3) at local 1
  CHECK(idx.split(1 << bit1, bit3) == std::pair{1, 1});
}

TEST_CASE("Dehn cube squares commute") {
  for (auto fam : {circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}}), coordinate_family(2), diagonal_family()}) {
    int d = fam->dim(fam->whole());
    auto cube = build_dehn_cube(fam, enumerate_index(d, true), true);
    CHECK(check_cube_squares(cube).ok);
    for (auto& [k, m] : cube.smashed_maps) CHECK_FALSE(m->check());
  }
}

TEST_CASE("hat cube total complex is Z in degree d+1") {
  for (auto fam : {circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}}), coordinate_family(1), coordinate_family(2)}) {
    auto r = verify_Zid(fam);
    CHECK_MESSAGE(r.ok, r.message);
  }
}

TEST_CASE("sub-cube totals are the shifted N_I") {
  std::vector<FamilyPtr> fams{circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}}), coordinate_family(2), diagonal_family()};
  for (auto& fam : fams) {
    int d = fam->dim(fam->whole());
    for (int mask = 1; mask < 1 << d; ++mask) {
      std::vector<int> dims;
      for (int k = 0; k < d; ++k)
        if (mask >> k & 1) dims.push_back(k);
      auto r = subcube_cofiber_check(fam, dims);
      CHECK_MESSAGE(r.ok, r.message);
    }
  }
}

TEST_CASE("three-dimensional coordinate cube") {
  auto fam = coordinate_family(3);
  auto z = verify_Zid(fam);
  CHECK_MESSAGE(z.ok, z.message);
  for (auto dims : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    auto r = subcube_cofiber_check(fam, dims);
    CHECK_MESSAGE(r.ok, r.message);
  }
}

TEST_CASE("f_A on H_{d+1}") {
  auto fam = coordinate_family(1);
  auto one = compare_f_A(fam, {1, {}});
  CHECK(one.ok);
  for (auto& s : one.summands) CHECK(s.scale == 1);
  auto split = compare_f_A(fam, {0, {1}});
  CHECK_MESSAGE(split.ok, split.message);
  CHECK(split.multiplier() == std::pair<Int, Int>{1, 2});
  for (auto& s : split.summands) {
    REQUIRE(s.matrix.size() == 1);
    CHECK(abs(s.matrix[0][0]) == 2);
  }
  auto fam2 = coordinate_family(2);
  for (IndexObject a : {IndexObject{0, {2}}, IndexObject{1, {1}}, IndexObject{0, {1, 1}}}) {
    auto r = compare_f_A(fam2, a);
    CHECK_MESSAGE(r.ok, a.str(), r.message);
  }
}

TEST_CASE("f_A in dimension three") {
  auto fam = coordinate_family(3);
  for (IndexObject a : {IndexObject{1, {2}}, IndexObject{3, {}}}) {
    auto r = compare_f_A(fam, a);
    CHECK_MESSAGE(r.ok, a.str(), r.message);
  }
}

TEST_CASE("Dehn complex of the circle") {
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  auto g = square_group(2);
  auto r = dehn_complex(fam, g);
  CHECK(r.index.m() == 0);
  CHECK_FALSE(r.complex.check());
  CHECK(r.bottom_row_matches);
  CHECK(r.below_row_vanishes);
}

TEST_CASE("Dehn complex in dimension three") {
  auto fam = coordinate_family(3);
  QMat a = identity_matrix(4), b = identity_matrix(4);
  a[0][0] = -1;
  b[1][1] = -1;
  auto g = FiniteGroup::generated_by({a, b});
  CHECK(g.order() == 4);
  auto r = dehn_complex(fam, g);
  CHECK(r.index.m() == 1);
  CHECK_FALSE(r.complex.check());
  CHECK_MESSAGE(r.bottom_row_matches, r.message);
  CHECK_MESSAGE(r.below_row_vanishes, r.message);
  for (int mask = 0; mask < 2; ++mask)
    CHECK(r.vertex_homology[mask].rank == coinvariant_rank(*r.flags[mask], g, 3));
}

TEST_CASE("vertex groups of the Dehn complex are twisted coinvariants") {
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  std::vector<FiniteGroup> groups{FiniteGroup::generated_by({identity_matrix(2)}), square_group(2)};
  QMat flip = identity_matrix(2);
  flip[1][1] = -1;
  groups.push_back(FiniteGroup::generated_by({flip}));
  for (auto& g : groups) {
    auto r = dehn_complex(fam, g);
    CHECK(r.vertex_homology[0].rank == coinvariant_rank(*r.flags[0], g, 1));
    CHECK(r.complex.rank(0) == r.vertex_homology[0].rank);
  }
  auto trivial = dehn_complex(fam, groups[0]);
  CHECK(trivial.homology[0].rank == 3);
}

TEST_CASE("twisted model agrees with the smash with S^sigma") {
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  QMat flip = identity_matrix(2);
  flip[1][1] = -1;
  for (auto g : {square_group(2), FiniteGroup::generated_by({flip})}) {
    auto r = dehn_complex(fam, g, 4, Coeff::Z);
    auto sm = smash_ssigma(r.flags[0]);
    auto act = chain_action(sm.action(g));
    auto oc = orbit_chains(normalized_chains(*sm.space), act, 4);
    auto h = homology(oc.complex, Coeff::Z, 2);
    CHECK(h[2] == r.vertex_homology[0]);
  }
  auto fam2 = coordinate_family(2);
  auto g = square_group(3);
  auto r = dehn_complex(fam2, g, 4, Coeff::Z);
  auto sm = smash_ssigma(r.flags[0]);
  auto oc = orbit_chains(normalized_chains(*sm.space), chain_action(sm.action(g)), 4);
  CHECK(homology(oc.complex, Coeff::Z, 3)[3] == r.vertex_homology[0]);
  CHECK(r.vertex_homology[0].rank == coinvariant_rank(*r.flags[0], g, 2));
}

namespace {

int element(const FiniteGroup& g, const QMat& m) {
  for (int a = 0; a < g.order(); ++a)
    if (g.matrix(a) == m) return a;
  return -1;
}

}  // namespace

TEST_CASE("edge map on single tuples") {
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  QMat rot{{0, -1}, {1, 0}}, flip{{1, 0}, {0, -1}};
  auto g = FiniteGroup::generated_by({rot, flip});
  auto f = build_flag_space(fam, {1, {}});
  QVec x0{1, 0};
  int r = element(g, rot), s = element(g, flip);
  auto pts = edge_points(g, {r}, x0);
  CHECK(pts == std::vector<QVec>{{0, 1}, {1, 0}});
  auto c = edge_map(*f, g, {r}, x0);
  CHECK(c == flag_class(*f, pts));
  // a reflection flips the sign of the flag class
  int rs = g.mul(r, s);
  auto c2 = edge_map(*f, g, {rs}, x0);
  auto want = flag_class(*f, edge_points(g, {rs}, x0));
  for (auto& [k, v] : want) v = -v;
  CHECK(c2 == want);
  CHECK_THROWS_WITH_AS(edge_map(*f, g, {s}, x0), doctest::Contains("DegenerateConfiguration"), Error);
  CHECK(edge_map_chain(*f, g, {{{s}, 3}}, x0).empty());
}

TEST_CASE("edge images of bar cycles and boundaries") {
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  QMat rot{{0, -1}, {1, 0}};
  auto g = FiniteGroup::generated_by({rot});
  auto data = dehn_complex(fam, g);
  CHECK(data.complex.rank(0) > 0);
  for (QVec x0 : {QVec{1, 0}, QVec{1, 1}}) {
    for (auto& z : random_bar_cycles(g, 1, 6, 11)) {
      auto r = edge_to_dehn(data, z, x0);
      CHECK_MESSAGE(r.ok, r.message);
    }
    for (auto& b : random_bar_boundaries(g, 1, 6, 12)) {
      auto r = edge_to_dehn(data, b, x0);
      CHECK_MESSAGE(r.ok, r.message);
      CHECK(r.dehn_chain.empty());
    }
  }
  // [g x0] - [x0] is a coinvariant boundary
  auto r = edge_to_dehn(data, {{{element(g, rot)}, 1}}, {1, 0});
  CHECK(r.ok);
  CHECK(r.dehn_chain.empty());
}

TEST_CASE("edge images in dimension two") {
  auto fam = coordinate_family(2);
  QMat p{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  auto g = FiniteGroup::generated_by({p});
  auto data = dehn_complex(fam, g);
  QVec x0{1, 0, 0};
  for (auto& z : random_bar_cycles(g, 2, 4, 5)) CHECK(edge_to_dehn(data, z, x0).ok);
  for (auto& b : random_bar_boundaries(g, 2, 4, 6)) {
    auto r = edge_to_dehn(data, b, x0);
    CHECK(r.ok);
    CHECK(r.dehn_chain.empty());
  }
}


TEST_CASE("staircase identity for random bar cycles") {
  struct Case {
    int d;
    FiniteGroup g;
    QVec x;
  };
  std::vector<Case> cases{{1, square_group(2), {2, 1}},
                          {1, hexagonal_dihedral(), {1, 0}},
                          {2, square_group(3), {2, 1, 1}},
                          {2, s3_sign(), {3, 2, 1}}};
  for (auto& c : cases) {
    CHECK(c.g.order() >= 8);
    auto r = tech_identity_check(c.d, c.g, c.x, 4, 7);
    CHECK_MESSAGE(r.ok, r.message);
    CHECK(r.trials == 4);
    CHECK(r.staircase_failures == 0);
    CHECK(r.identity_failures == 0);
    CHECK(r.formula_failures == 0);
    if (c.d == 1) {
      CHECK(r.discriminating > 0);
      CHECK(r.sign == 1);
    }
  }
  auto zero = tech_identity_check(1, square_group(2), {2, 1}, 0, 1);
  CHECK(zero.trials == 0);
}
