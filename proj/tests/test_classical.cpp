#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "scissors/classical.hpp"

using namespace scissors;

namespace {

RVec unitv(int n, int i) {
  RVec v(n, Real(0));
  v[i] = 1;
  return v;
}

double dbl(const Real& x) { return x.convert_to<double>(); }

RMat rotation(int n, int a, int b, const Real& t) {
  RMat m(n, RVec(n, Real(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  m[a][a] = cos(t);
  m[b][b] = cos(t);
  m[a][b] = -sin(t);
  m[b][a] = sin(t);
  return m;
}

GeodesicSimplex random_euclidean(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<RVec> v;
  for (int i = 0; i < 4; ++i) v.push_back({Real(u(rng)), Real(u(rng)), Real(u(rng))});
  return GeodesicSimplex::make(Geometry::Euclidean, v);
}

}  // namespace

TEST_CASE("dihedral angles") {
  PrecisionScope ps(200);
  auto cube = unit_cube();
  bool right = false;
  for (auto& s : cube.simplices)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) right |= abs(dihedral_angle(s, {a, b}) - pi_real() / 2) < 1e-50;
  CHECK(right);
  auto t = regular_tetrahedron();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK(abs(dihedral_angle(t, {a, b}) - acos(Real(1) / 3)) < 1e-55);
  auto oct = GeodesicSimplex::make(Geometry::Spherical, {unitv(3, 0), unitv(3, 1), unitv(3, 2)});
  for (int k = 0; k < 3; ++k) CHECK(abs(dihedral_angle(oct, {k}) - pi_real() / 2) < 1e-55);
  CHECK_THROWS_WITH_AS(dihedral_angle(t, {0}), doctest::Contains("DegenerateFace"), Error);
}

TEST_CASE("link projections agree with facet normals") {
  PrecisionScope ps(120);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_euclidean(rng);
    auto splits = classical_dehn_i(s, 1);
    CHECK(splits.size() == 6);
    for (auto& sp : splits) {
      const auto& l = sp.link.vertices;
      REQUIRE(l.size() == 2);
      Real a = acos(l[0][0] * l[1][0] + l[0][1] * l[1][1]);
      CHECK(abs(a - dihedral_angle(s, sp.face)) < 1e-30);
      CHECK(abs(distance(Geometry::Euclidean, sp.face_simplex.vertices[0], sp.face_simplex.vertices[1]) -
                distance(Geometry::Euclidean, s.vertices[sp.face[0]], s.vertices[sp.face[1]])) < 1e-30);
    }
  }
  CHECK_THROWS(classical_dehn_i(random_euclidean(rng), 0));
  CHECK_THROWS(classical_dehn_i(random_euclidean(rng), 3));
  // orthoscheme in S^3: consecutive orthogonal steps
  Real c = 1 / sqrt(Real(2));
  auto orth = GeodesicSimplex::make(Geometry::Spherical, {{1, 0, 0, 0}, {c, c, 0, 0}, {c, 0, c, 0}, {c, 0, 0, c}});
  for (auto& sp : classical_dehn_i(orth, 1)) {
    auto& l = sp.link.vertices;
    Real ip = l[0][0] * l[1][0] + l[0][1] * l[1][1];
    CHECK(abs(ip - cos(dihedral_angle(orth, sp.face))) < 1e-30);
  }
}

TEST_CASE("hyperbolic angles from the Gram matrix match projections") {
  PrecisionScope ps(120);
  auto lift = [](Real x, Real y, Real z) {
    return RVec{sqrt(1 + x * x + y * y + z * z), x, y, z};
  };
  auto s = GeodesicSimplex::make(Geometry::Hyperbolic, {lift(0, 0, 0), lift(Real("0.7"), 0, 0), lift(0, Real("0.5"), 0),
                                                       lift(Real("0.1"), Real("0.2"), Real("0.9"))});
  for (auto& sp : classical_dehn_i(s, 1)) {
    auto& l = sp.link.vertices;
    Real a = acos(l[0][0] * l[1][0] + l[0][1] * l[1][1]);
    CHECK(abs(a - dihedral_angle(s, sp.face)) < 1e-30);
  }
}

TEST_CASE("PSLQ") {
  PrecisionScope ps(200);
  Real pi = pi_real();
  auto r = pslq({pi, pi / 2}, 1e6, 200);
  CHECK(r.found);
  CHECK(std::abs(r.relation[0]) == 1);
  CHECK(std::abs(r.relation[1]) == 2);
  auto r2 = pslq({pi, sqrt(Real(2)), 3 * pi - 5 * sqrt(Real(2))}, 1e6, 200);
  CHECK(r2.found);
  CHECK(r2.residual < 1e-50);
  auto none = pslq({pi, acos(Real(1) / 3)}, 1e6, 200);
  CHECK_FALSE(none.found);
  CHECK(none.norm_bound > 1e6);
}

TEST_CASE("tensor reduction") {
  PrecisionScope ps(200);
  Real pi = pi_real();
  DehnTensor a;
  a.terms = {{Real(1), pi / 2}};
  CHECK(tensor_reduce(a).zero());
  Real th = acos(Real(1) / 3);
  DehnTensor b;
  b.terms = {{Real(2), th}, {Real(-2), th}};
  CHECK(tensor_reduce(b).zero());
  DehnTensor c;
  c.terms = {{Real(1), th}};
  auto rc = tensor_reduce(c);
  CHECK_FALSE(rc.zero());
  CHECK(rc.heuristic);
  REQUIRE(rc.terms.size() == 1);
  CHECK(abs(rc.terms[0].first - 1) < 1e-50);
  // ℓ ⊗ (π - θ) = -ℓ ⊗ θ
  DehnTensor d;
  d.terms = {{Real(1), th}, {Real(1), pi - th}};
  CHECK(tensor_reduce(d).zero());
  DehnTensor e;
  e.terms = {{Real(3), th}, {Real(1), pi / 3 + th}};
  auto re = tensor_reduce(e);
  REQUIRE(re.terms.size() == 1);
  CHECK(abs(re.terms[0].first - 4) < 1e-50);
}

TEST_CASE("cube and tetrahedron") {
  PrecisionScope ps(200);
  auto t0 = std::chrono::steady_clock::now();
  CHECK(dehn_classical(unit_cube()).zero());
  CHECK(dehn_classical(box(Real(2), Real("0.3"), sqrt(Real(5)))).zero());
  Polytope tet;
  tet.add(regular_tetrahedron());
  auto t = dehn_classical(tet);
  REQUIRE(t.terms.size() == 1);
  CHECK(abs(t.terms[0].first - 6) < 1e-50);
  CHECK(abs(t.terms[0].second - acos(Real(1) / 3)) < 1e-50);
  CHECK(t.heuristic);
  REQUIRE(t.certificates.size() == 2);
  CHECK(t.certificates[1].norm_bound > 1e6);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(5));
}

TEST_CASE("Dehn invariant is additive and isometry invariant") {
  // twelve independent angles need more than the default precision to certify
  PrecisionScope ps(400);
  ReducePolicy pol{400, 1e6, 100};
  std::mt19937 rng(9);
  auto s1 = random_euclidean(rng), s2 = random_euclidean(rng);
  Polytope p1, p2, both;
  p1.add(s1);
  p2.add(s2);
  both.add(s1);
  both.add(s2);
  DehnTensor sum;
  for (auto* p : {&p1, &p2})
    for (auto& [l, a] : dehn_classical(*p, pol).terms) sum.terms.push_back({l, a});
  DehnTensor diff = sum;
  for (auto& [l, a] : dehn_classical(both, pol).terms) diff.terms.push_back({-l, a});
  CHECK(tensor_reduce(diff, pol).zero());
  // rotate and translate s1
  RMat r = rotation(3, 0, 1, Real("0.4"));
  std::vector<RVec> moved;
  for (auto& v : s1.vertices) {
    RVec w(3, Real(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w[i] += r[i][j] * v[j];
    w[2] += 5;
    moved.push_back(w);
  }
  Polytope pm;
  pm.add(GeodesicSimplex::make(Geometry::Euclidean, moved));
  DehnTensor d2;
  for (auto& [l, a] : dehn_classical(p1, pol).terms) d2.terms.push_back({l, a});
  for (auto& [l, a] : dehn_classical(pm, pol).terms) d2.terms.push_back({-l, a});
  CHECK(tensor_reduce(d2, pol).zero());
}

TEST_CASE("suspension") {
  PrecisionScope ps(160);
  Real th("0.9");
  Polytope arc;
  arc.add(GeodesicSimplex::make(Geometry::Spherical, {{1, 0, 0}, {cos(th), sin(th), 0}}));
  auto lune = suspension_sigma(arc, {0, 0, 1});
  CHECK(lune.simplices.size() == 2);
  double area = 0;
  for (auto& s : lune.simplices) area += volume(s).value;
  CHECK(area == doctest::Approx(2 * 0.9).epsilon(1e-12));
  CHECK(suspension_sigma(Polytope{}, {0, 0, 1}).simplices.empty());
  CHECK_THROWS_WITH_AS(suspension_sigma(arc, {0, 1, 1}), doctest::Contains("NotInHyperplane"), Error);
  // full equator: four quarter arcs give the whole sphere
  Polytope eq;
  for (int k = 0; k < 4; ++k) {
    Real a = pi_real() / 2 * k, b = pi_real() / 2 * (k + 1);
    eq.add(GeodesicSimplex::make(Geometry::Spherical, {{cos(a), sin(a), 0}, {cos(b), sin(b), 0}}));
  }
  double total = 0;
  for (auto& s : suspension_sigma(eq, {0, 0, 1}).simplices) total += volume(s).value;
  CHECK(total == doctest::Approx(4 * M_PI).epsilon(1e-12));
  // a lune in S^3: edges in the equator meet at a flat angle split in two halves
  Real c = cos(th), s = sin(th);
  Polytope tri;
  tri.add(GeodesicSimplex::make(Geometry::Spherical, {{1, 0, 0, 0}, {c, s, 0, 0}, {Real("0.6"), 0, Real("0.8"), 0}}));
  auto l3 = suspension_sigma(tri, {0, 0, 0, 1});
  DehnTensor eqpart;
  for (auto& t : dehn_terms(l3)) {
    bool in_eq = t.a < 3 && t.b < 3;
    if (in_eq) {
      CHECK(abs(t.angle - pi_real() / 2) < 1e-40);
      eqpart.terms.push_back({t.length * t.sign, t.angle});
    }
  }
  CHECK(eqpart.terms.size() == 6);
  CHECK(tensor_reduce(eqpart, {160, 1e6, 80}).zero());
}

TEST_CASE("volumes") {
  PrecisionScope ps(120);
  double cube = 0;
  for (auto& s : unit_cube().simplices) cube += volume(s).value;
  CHECK(cube == doctest::Approx(1).epsilon(1e-14));
  CHECK(volume(regular_tetrahedron()).value == doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-14));
  auto oct = GeodesicSimplex::make(Geometry::Spherical, {unitv(3, 0), unitv(3, 1), unitv(3, 2)});
  CHECK(volume(oct).value == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK(volume_by_integration(oct).value == doctest::Approx(M_PI / 2).epsilon(1e-9));
  auto oct3 = GeodesicSimplex::make(Geometry::Spherical, {unitv(4, 0), unitv(4, 1), unitv(4, 2), unitv(4, 3)});
  CHECK(volume(oct3).value == doctest::Approx(M_PI * M_PI / 8).epsilon(1e-9));
  CHECK(16 * volume(oct3).value == doctest::Approx(sphere_volume(3)).epsilon(1e-9));
  // hyperbolic triangle: integral against the angle defect
  auto lift = [](Real x, Real y) { return RVec{sqrt(1 + x * x + y * y), x, y}; };
  auto h = GeodesicSimplex::make(Geometry::Hyperbolic, {lift(0, 0), lift(Real("1.5"), 0), lift(Real("0.3"), Real("2"))});
  CHECK(volume_by_integration(h).value == doctest::Approx(volume(h).value).epsilon(1e-9));
  // hyperbolic tetrahedron: additivity over a cone from an interior point
  auto lift3 = [](Real x, Real y, Real z) { return RVec{sqrt(1 + x * x + y * y + z * z), x, y, z}; };
  std::vector<RVec> v{lift3(0, 0, 0), lift3(1, 0, 0), lift3(0, 1, 0), lift3(0, 0, 1)};
  auto big = GeodesicSimplex::make(Geometry::Hyperbolic, v);
  RVec mid(4, Real(0));
  for (auto& x : v)
    for (int k = 0; k < 4; ++k) mid[k] += x[k];
  Real nn = sqrt(mid[0] * mid[0] - mid[1] * mid[1] - mid[2] * mid[2] - mid[3] * mid[3]);
  for (auto& x : mid) x /= nn;
  double parts = 0;
  for (int k = 0; k < 4; ++k) {
    auto w = v;
    w[k] = mid;
    parts += volume(GeodesicSimplex::make(Geometry::Hyperbolic, w)).value;
  }
  CHECK(parts == doctest::Approx(volume(big).value).epsilon(1e-9));
}

TEST_CASE("CCS simplices") {
  PrecisionScope ps(120);
  auto r = ccs_simplex(Geometry::Spherical, {rotation(2, 0, 1, Real("0.3"))}, {1, 0});
  CHECK(r.sign == 1);
  CHECK(volume(r.simplex).value == doctest::Approx(0.3).epsilon(1e-14));
  RMat refl{{1, 0}, {0, -1}};
  auto rr = ccs_simplex(Geometry::Spherical, {refl}, {Real("0.6"), Real("0.8")});
  CHECK(rr.sign == -1);
  RMat minus{{-1, 0}, {0, -1}};
  CHECK_THROWS_WITH_AS(ccs_simplex(Geometry::Spherical, {minus}, {1, 0}), doctest::Contains("NotGeneric"), Error);
  // vertex order x0, g2 x0, g2 g1 x0
  auto g1 = rotation(3, 0, 1, Real("0.5")), g2 = rotation(3, 0, 2, Real("0.7"));
  RVec x0{1, 0, 0};
  auto t = ccs_simplex(Geometry::Spherical, {g1, g2}, x0);
  auto apply = [](const RMat& m, const RVec& x) {
    RVec y(x.size(), Real(0));
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
  };
  CHECK(t.simplex.vertices[0] == x0);
  auto p1 = apply(g2, x0), p2 = apply(g2, apply(g1, x0));
  for (int k = 0; k < 3; ++k) {
    CHECK(abs(t.simplex.vertices[1][k] - p1[k]) < 1e-30);
    CHECK(abs(t.simplex.vertices[2][k] - p2[k]) < 1e-30);
  }
  CHECK_THROWS_WITH_AS(ccs_simplex(Geometry::Spherical, {RMat{{2, 0}, {0, 1}}}, {1, 0}), doctest::Contains("NotIsometry"),
                       Error);
}
