#pragma once

#include <random>

#include "scissors/building.hpp"

namespace scissors::samples {

inline QVec unit(int n, int i) {
  QVec v(n, 0);
  v[i] = 1;
  return v;
}

inline Subspace line(const QVec& v, QuadSpacePtr x) { return Subspace::span_auto({v}, x); }

// Coordinate subspaces of the spherical d-space.
inline FamilyPtr coordinate_family(int d) {
  auto x = QuadSpace::spherical(d);
  std::vector<Subspace> seeds;
  for (int i = 0; i <= d; ++i) seeds.push_back(line(unit(d + 1, i), x));
  return std::make_shared<SubspaceFamily>(SubspaceFamily::make(x, seeds, {"perp", "project"}));
}

// Points of the spherical line with no closure.
inline FamilyPtr circle_points(const std::vector<QVec>& pts) {
  auto x = QuadSpace::spherical(1);
  std::vector<Subspace> seeds;
  for (auto& p : pts) seeds.push_back(line(p, x));
  return std::make_shared<SubspaceFamily>(SubspaceFamily::make(x, seeds));
}

// Coordinate family of the 2-sphere refined by the diagonal (1,1,0) and its closure.
inline FamilyPtr diagonal_family() {
  auto x = QuadSpace::spherical(2);
  std::vector<Subspace> seeds;
  for (int i = 0; i < 3; ++i) seeds.push_back(line(unit(3, i), x));
  seeds.push_back(line({1, 1, 0}, x));
  return std::make_shared<SubspaceFamily>(SubspaceFamily::make(x, seeds, {"perp", "project"}));
}

// Signed permutations of the coordinates.
inline FiniteGroup hyperoctahedral(int n) {
  std::vector<QMat> gens;
  for (int i = 0; i + 1 < n; ++i) {
    QMat s = identity_matrix(n);
    std::swap(s[i], s[i + 1]);
    gens.push_back(s);
  }
  QMat r = identity_matrix(n);
  r[0][0] = -1;
  gens.push_back(r);
  return FiniteGroup::generated_by(gens);
}

// Symmetries of a square in the first two coordinates, identity elsewhere.
inline FiniteGroup square_group(int n) {
  QMat rot = identity_matrix(n), refl = identity_matrix(n);
  rot[0][0] = 0;
  rot[0][1] = -1;
  rot[1][0] = 1;
  rot[1][1] = 0;
  refl[1][1] = -1;
  return FiniteGroup::generated_by({rot, refl});
}

// S_3 permuting coordinates times {±1}, order 12.
inline FiniteGroup s3_sign() {
  QMat c{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, t{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, m = identity_matrix(3);
  for (auto& row : m)
    for (auto& v : row) v = -v;
  return FiniteGroup::generated_by({c, t, m});
}

// Dihedral group of order 12 preserving the form [[2,1],[1,2]]; its matrices are rational.
inline FiniteGroup hexagonal_dihedral() {
  return FiniteGroup::generated_by({QMat{{0, -1}, {1, 1}}, QMat{{0, 1}, {1, 0}}});
}

// Pointed simplicial set: a random simplicial complex on up to five vertices
// (vertex 0 the basepoint), optionally with a random subcomplex collapsed.
SimpSet random_pointed_simpset(std::mt19937& rng, int max_simplices = 30);

// Cube of quotients X / (A_i, i in ε) of a random simplicial set by random subcomplexes.
CubeDiagram random_quotient_cube(std::mt19937& rng, int m);

// Family of all spans of proper subsets of d+1 random integer points in general position,
// with the points; no closure.
std::pair<FamilyPtr, std::vector<QVec>> random_point_family(std::mt19937& rng, int d);

}  // namespace scissors::samples
