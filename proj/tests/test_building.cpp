#include <doctest.h>

#include "fixtures.hpp"
#include "scissors/grouphom.hpp"

using namespace scissors;
using namespace fixtures;

namespace {

std::vector<HomologyGroup> reduced_homology(const SimpSet& x) { return nonzero(homology(normalized_chains(x))); }

}  // namespace

TEST_CASE("family closure") {
  auto fam = coordinate_family(2);
  CHECK(fam->size() == 7);
  CHECK_FALSE(fam->check());
  CHECK(fam->dim(fam->whole()) == 2);
  auto x = QuadSpace::spherical(2);
  CHECK_THROWS_WITH_AS(SubspaceFamily::make(x, {line(unit(3, 0), x)}, {"perp"}, 0), doctest::Contains("ClosureFailure"),
                       Error);
  auto d = diagonal_family();
  CHECK_FALSE(d->check());
  int diag = d->find(line({1, 1, 0}, x));
  REQUIRE(diag >= 0);
  CHECK(d->find(orth_complement(d->member(diag))) >= 0);
  auto pts = circle_points({unit(2, 0), {1, 1}});
  CHECK_THROWS_WITH_AS(pts->perp(pts->find(line(unit(2, 0), pts->geometry()))), doctest::Contains("ClosureMissing"),
                       Error);
}

TEST_CASE("T and F on point families") {
  auto fam = circle_points({unit(2, 0), {1, 1}, {1, 2}});
  auto t = build_T(fam, 1);
  CHECK(t.space->count(0) == 5);  // basepoint, three points, X
  CHECK(t.space->count(1) == 3);
  CHECK(build_T(fam, -1).space->size() == 0);
  auto f = build_F(fam);
  auto h = reduced_homology(*f->space);
  REQUIRE(h.size() == 1);
  CHECK(h[0].degree == 1);
  CHECK(h[0].rank == 2);
  CHECK(h[0].torsion.empty());

  auto only_x = std::make_shared<SubspaceFamily>(SubspaceFamily::make(QuadSpace::spherical(1), {}));
  auto fx = build_F(only_x);
  CHECK(fx->space->size() == 1);
  auto hx = reduced_homology(*fx->space);
  REQUIRE(hx.size() == 1);
  CHECK(hx[0].degree == 0);
}

TEST_CASE("F agrees with the quotient of T") {
  for (auto fam : {coordinate_family(2), diagonal_family()}) {
    auto f = build_F(fam);
    auto tq = build_T_quotient(fam, 2);
    CHECK_FALSE(f->space->check());
    CHECK(f->space->size() == tq.space->size());
    CHECK(homology(normalized_chains(*f->space)) == homology(normalized_chains(*tq.space)));
    auto t2 = build_T(fam, 2);
    std::vector<std::vector<bool>> sub(t2.space->dim() + 1);
    for (int k = 0; k <= t2.space->dim(); ++k) {
      sub[k].assign(t2.space->count(k), false);
      for (int i = 0; i < t2.space->count(k); ++i) sub[k][i] = k == 0 && i == 0 ? true : fam->dim(t2.chains[k][i].back()) < 2;
    }
    auto q = quotient(*t2.space, sub);
    CHECK(homology(normalized_chains(q.space)) == homology(normalized_chains(*f->space)));
    for (auto& g : nonzero(homology(normalized_chains(*f->space)))) CHECK(g.degree <= 2);
  }
}

TEST_CASE("N_I subcomplexes") {
  auto fam = coordinate_family(2);
  auto all = build_N_I(fam, {0, 1});
  CHECK(all->space->size() == 1);
  for (int n = 1; n <= 4; ++n) CHECK(all->space->simplices(n).size() == 1);  // basepoint and X = ... = X
  auto none = build_N_I(fam, {});
  CHECK(none->space->size() == build_F(fam)->space->size());
  auto pts = circle_points({unit(2, 0), unit(2, 1), {1, 1}});
  auto n0 = build_N_I(pts, {0});
  CHECK(n0->space->size() == 1);
  CHECK(n0->space->label(0, 1) == "[X]");
  auto f = build_F(fam);
  auto marks = n_i_marks(*f, {1});
  int count = 0;
  for (auto& row : marks)
    for (bool b : row) count += b;
  CHECK(count - 1 == build_N_I(fam, {1})->space->size());
}

TEST_CASE("Dehn map for a single subspace") {
  auto fam = coordinate_family(2);
  auto x = fam->geometry();
  int p = fam->find(line(unit(3, 0), x));
  int q = fam->find(line(unit(3, 1), x));
  int l = fam->find(Subspace::span_auto({unit(3, 0), unit(3, 1)}, x));
  int e3 = fam->find(line(unit(3, 2), x));
  int xx = fam->whole();
  auto [d, out] = dehn_sequence(*fam, {xx}, {p, l, xx}, 0, 1);
  CHECK(d == Decomposition{l, e3});
  CHECK(out == std::vector<int>{p, l, e3});
  auto base = dehn_sequence(*fam, {xx}, {q, xx}, 0, 1);
  CHECK(base.first.empty());
  auto degen = dehn_sequence(*fam, {xx}, {l, l, xx}, 0, 1);
  CHECK(degen.second == std::vector<int>{l, l, e3});

  auto du = dehn_U(fam, l);
  CHECK_FALSE(du.map->check());
  // the simplicial extension to a degenerate flag follows the pivot rule
  for (auto seq : std::vector<std::vector<int>>{{l, l, xx}, {p, l, l, xx}, {p, p, l, xx, xx}, {l, xx, xx}}) {
    Simp s = du.source->simplex(0, seq);
    auto [dd, o] = dehn_sequence(*fam, {xx}, seq, 0, 1);
    CHECK((*du.map)(s) == du.target->simplex(0, o));
  }
  CHECK(du.target->space->label(2, du.target->simplex(0, {p, l, e3}).nd) == du.target->str(0, {p, l, e3}));
}

TEST_CASE("Dehn maps are simplicial and equivariant") {
  struct Case {
    FamilyPtr fam;
    FiniteGroup g;
  };
  std::vector<Case> cases{{coordinate_family(2), hyperoctahedral(3)},
                          {coordinate_family(3), square_group(4)},
                          {diagonal_family(), FiniteGroup::generated_by({QMat{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}})}};
  for (auto& c : cases) {
    int d = c.fam->dim(c.fam->whole());
    for (int i = 0; i < d; ++i) {
      auto di = dehn_i(c.fam, i);
      CHECK_FALSE(di.map->check());
      auto as = di.source->action(c.g);
      auto at = di.target->action(c.g);
      CHECK_FALSE(as.check());
      CHECK_FALSE(at.check());
      bool eq = true;
      for (int g = 0; g < c.g.order(); ++g)
        for (int k = 0; k <= di.source->space->dim(); ++k)
          for (int s = 0; s < di.source->space->count(k); ++s) {
            Simp x = SimpSet::nd(k, s);
            eq &= (*di.map)(as.act(g, x)) == at.act(g, (*di.map)(x));
          }
      CHECK(eq);
    }
  }
}

TEST_CASE("Dehn squares commute") {
  for (auto fam : {coordinate_family(2), coordinate_family(3), diagonal_family()}) {
    int d = fam->dim(fam->whole());
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        auto r = check_dehn_square(fam, i, j);
        CHECK_MESSAGE(r.ok, r.message);
      }
  }
  auto only_x = std::make_shared<SubspaceFamily>(SubspaceFamily::make(QuadSpace::spherical(2), {}));
  CHECK(check_dehn_square(only_x, 0, 1).ok);
}

TEST_CASE("composite Dehn maps are the quotient by the N") {
  auto pts = circle_points({unit(2, 0), unit(2, 1)});
  auto pfam = std::make_shared<SubspaceFamily>(
      SubspaceFamily::make(QuadSpace::spherical(1), pts->members(), {"perp"}));
  auto one = dehn_composite_iso(pfam, {0});
  CHECK_MESSAGE(one.report.ok, one.report.message);
  CHECK(one.target->decomps.size() == 2);
  auto id = dehn_composite_iso(pfam, {});
  CHECK(id.report.ok);
  CHECK(id.target == id.source);
  for (auto fam : {coordinate_family(2), coordinate_family(3), diagonal_family()}) {
    int d = fam->dim(fam->whole());
    for (int mask = 1; mask < (1 << d); ++mask) {
      std::vector<int> dims;
      for (int i = 0; i < d; ++i)
        if (mask >> i & 1) dims.push_back(i);
      auto r = dehn_composite_iso(fam, dims);
      CHECK_MESSAGE(r.report.ok, r.report.message);
      CHECK_FALSE(r.map->check());
    }
  }
}

TEST_CASE("tuple spaces") {
  auto x1 = QuadSpace::spherical(1);
  auto one = tpl(x1, {unit(2, 0)}, 0, 3);
  CHECK(one.space->count(0) == 2);
  for (int n = 1; n <= 3; ++n) CHECK(one.space->count(n) == 0);
  auto two = tpl(x1, {unit(2, 0), unit(2, 1)}, 1, 3);
  CHECK(two.index.count({0, 1, 0}));
  CHECK_FALSE(two.space->check());
  auto anti = tpl(x1, {unit(2, 0), {-1, 0}}, 1, 2);
  CHECK(anti.space->count(1) == 0);
  CHECK(anti.space->count(0) == 3);
}

TEST_CASE("span map on the circle") {
  std::vector<QVec> pts{unit(2, 0), {1, 1}, {1, 2}};
  auto x1 = QuadSpace::spherical(1);
  std::vector<Subspace> lines;
  for (auto& p : pts) lines.push_back(line(p, x1));
  auto fam = std::make_shared<SubspaceFamily>(SubspaceFamily::make(x1, lines));
  auto t = tpl(x1, pts, 1, 3, true);
  auto target = build_T_quotient(fam, 1);
  auto h = span_map_h(t, target);
  CHECK_FALSE(h.map->check());
  auto cs = normalized_chains(*h.source);
  auto ct = normalized_chains(*target.space);
  HomologyBasis hs(cs, 1), ht(ct, 1);
  CHECK(hs.rank() == 2);
  CHECK(ht.rank() == 2);
  auto m = induced_homology(hs, ht, induced_chain_map(*h.map));
  REQUIRE(m.size() == 2);
  Int det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  CHECK(abs(det) == 1);
  // a single tuple goes to the vertex given by its span
  auto single = tpl(x1, {unit(2, 0)}, 1, 0);
  auto hs1 = span_map_h(single, build_T(fam, 1));
  CHECK(hs1.source->count(0) == 2);
  CHECK(target.space->count(0) >= 1);
  CHECK(build_T(fam, 1).space->label(0, hs1.map->image(0, 1).nd) == "[" + fam->name(fam->find(lines[0])) + "]");
}

TEST_CASE("span map is equivariant under a quarter turn") {
  auto x1 = QuadSpace::spherical(1);
  std::vector<QVec> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  std::vector<Subspace> lines;
  for (auto& p : pts) lines.push_back(line(p, x1));
  auto fam = std::make_shared<SubspaceFamily>(SubspaceFamily::make(x1, lines));
  auto t = tpl(x1, pts, 1, 2, true);
  auto target = build_T_quotient(fam, 1);
  auto h = span_map_h(t, target);
  QMat rot{{0, -1}, {1, 0}};
  std::vector<int> pperm;
  for (auto& p : t.points) {
    QVec q = matvec(rot, p);
    pperm.push_back(static_cast<int>(std::find(t.points.begin(), t.points.end(), q) - t.points.begin()));
  }
  auto fperm = fam->permutation(rot);
  std::map<std::pair<Simp, std::vector<uint32_t>>, int> sd_index;
  for (int n = 0; n <= h.source->dim(); ++n)
    for (int i = 0; i < h.source->count(n); ++i) sd_index[h.sd->cells[n][i]] = i;
  bool ok = true;
  for (int n = 0; n <= h.source->dim(); ++n)
    for (int i = 0; i < h.source->count(n); ++i) {
      auto [x, chain] = h.sd->cells[n][i];
      if (t.space->is_base(x)) continue;
      auto tu = t.tuples[x.deg][x.nd];
      for (int& a : tu) a = pperm[a];
      Simp gx = t.simplex(tu);
      int gi = sd_index.at({gx, chain});
      Simp lhs = h.map->image(n, gi);
      Simp rhs = h.map->image(n, i);
      if (!target.space->is_base(rhs)) {
        auto seq = target.chains[rhs.nd_deg()][rhs.nd];
        for (int& u : seq) u = fperm[u];
        rhs = Simp{rhs.deg, rhs.mask, target.index.at(seq)};
      }
      ok &= lhs == rhs;
    }
  CHECK(ok);
}

TEST_CASE("flag classes") {
  auto pts = circle_points({unit(2, 0), unit(2, 1)});
  auto f = build_F(pts);
  auto c = flag_class(*f, {unit(2, 0), unit(2, 1)});
  auto cx = normalized_chains(*f->space);
  CHECK(c.size() == 2);
  CHECK(cx.boundary(1, c).empty());
  int p0 = pts->find(line(unit(2, 0), pts->geometry()));
  CHECK(c.at(chain_index(*f->space, f->simplex(0, {p0, pts->whole()}))) == 1);
  auto swapped = flag_class(*f, {unit(2, 1), unit(2, 0)});
  SparseVec sum = c;
  axpy(sum, 1, swapped);
  CHECK(sum.empty());
  CHECK_THROWS_WITH_AS(flag_class(*f, {unit(2, 0), {2, 0}}), doctest::Contains("DegenerateSimplex"), Error);

  auto x2 = QuadSpace::spherical(2);
  std::vector<QVec> tri{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  std::vector<Subspace> seeds;
  for (int a = 0; a < 3; ++a) {
    seeds.push_back(line(tri[a], x2));
    for (int b = a + 1; b < 3; ++b) seeds.push_back(Subspace::span_auto({tri[a], tri[b]}, x2));
  }
  auto fam = std::make_shared<SubspaceFamily>(SubspaceFamily::make(x2, seeds));
  auto sf = smash_ssigma(build_F(fam));
  auto cls = simplex_class(sf, tri);
  auto cc = normalized_chains(*sf.space);
  CHECK(cls.size() >= 6);
  CHECK(cc.boundary(3, cls).empty());
  CHECK(flag_class(*sf.f, tri).size() == 6);
  CHECK_THROWS_WITH_AS(flag_class(*build_F(coordinate_family(2)), tri), doctest::Contains("ClosureMissing"), Error);
}

TEST_CASE("flag classes under isometries") {
  auto fam = coordinate_family(2);
  auto g = hyperoctahedral(3);
  auto sf = smash_ssigma(build_F(fam));
  auto act = sf.action(g);
  CHECK_FALSE(act.check());
  auto chains = normalized_chains(*sf.space);
  auto ca = chain_action(act);
  std::vector<QVec> pts{unit(3, 0), unit(3, 1), unit(3, 2)};
  auto cls = simplex_class(sf, pts);
  CHECK(chains.boundary(3, cls).empty());
  for (int e = 0; e < g.order(); ++e) {
    std::vector<QVec> moved;
    for (auto& p : pts) moved.push_back(matvec(g.matrix(e), p));
    SparseVec lhs = ca.maps[e].apply(3, cls);
    SparseVec rhs;
    axpy(rhs, g.det(e), simplex_class(sf, moved));
    CHECK(lhs == rhs);
  }
}
