#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>
#include <vector>

#include "scissors/error.hpp"

namespace scissors {

using Real = boost::multiprecision::mpfr_float;
using RVec = std::vector<Real>;
using RMat = std::vector<RVec>;

// Sets the working precision of newly created Reals for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real pi_real();
Real parse_real(const std::string& s);
std::string real_str(const Real& x, int digits = 30);

enum class Geometry { Euclidean, Spherical, Hyperbolic };
std::string geometry_name(Geometry f);
Geometry parse_geometry(const std::string& s);

// Euclidean vertices live in R^d; spherical and hyperbolic ones in R^{d+1},
// the latter on the upper sheet of -x_0^2 + x_1^2 + ... = -1.
struct GeodesicSimplex {
  Geometry flavor = Geometry::Euclidean;
  int dim = 0;
  std::vector<RVec> vertices;
  static GeodesicSimplex make(Geometry f, std::vector<RVec> vertices);
  void validate() const;
  int ambient() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
};

// Simplices with multiplicities; interior-disjointness is the caller's job.
struct Polytope {
  Geometry flavor = Geometry::Euclidean;
  int dim = 0;
  std::vector<GeodesicSimplex> simplices;
  std::vector<int> signs;
  void add(GeodesicSimplex s, int sign = 1);
};

// Bilinear form of the flavor: euclidean dot, or diag(-1, 1, ..., 1) for hyperbolic.
Real form(Geometry f, const RVec& a, const RVec& b);
Real distance(Geometry f, const RVec& a, const RVec& b);

// Angle at a codimension-2 face (given by its d-1 vertex indices) between the two facets containing it.
Real dihedral_angle(const GeodesicSimplex& s, std::vector<int> face);

struct DehnSplit {
  std::vector<int> face;       // J, |J| = i + 1
  GeodesicSimplex face_simplex;
  GeodesicSimplex link;        // spherical, normalized projections of the complementary vertices
};
std::vector<DehnSplit> classical_dehn_i(const GeodesicSimplex& s, int i);

struct PslqResult {
  bool found = false;
  std::vector<long long> relation;  // Σ relation_k x_k ≈ 0 when found
  Real residual;                     // |Σ relation_k x_k| for the found relation
  Real norm_bound;                   // any relation has Euclidean norm at least this
  int iterations = 0;
};
// Integer relation search; stops once norm_bound exceeds max_norm.
PslqResult pslq(const std::vector<Real>& x, double max_norm, int bits, int max_iterations = 10000);

struct AngleCertificate {
  int angle = 0;          // index into the basis
  bool independent = true;
  Real norm_bound;        // no relation with norm below this
};

struct ReducePolicy {
  int bits = 200;
  double coefficient_bound = 1e6;
  int residual_bits = 100;  // accepted relations have residual below 2^{-residual_bits}
};

// Σ length ⊗ angle in R ⊗ R/πZ.
struct DehnTensor {
  std::vector<std::pair<Real, Real>> terms;
  int bits = 200;
  bool reduced = false;
  bool heuristic = false;   // nonvanishing rests on failed relation searches
  std::vector<Real> basis;  // basis[0] = π
  std::vector<AngleCertificate> certificates;
  bool zero() const { return reduced && terms.empty(); }
  std::string str(int digits = 20) const;
};
DehnTensor tensor_reduce(const DehnTensor& t, const ReducePolicy& p = {});

struct DehnTerm {
  int simplex = 0;
  int a = 0, b = 0;  // edge endpoints
  Real length, angle;
  int sign = 1;
};
std::vector<DehnTerm> dehn_terms(const Polytope& p);
DehnTensor dehn_classical(const Polytope& p, const ReducePolicy& policy = {});

// Union of the cones over Q to ±axis; Q must lie in axis^⊥.
Polytope suspension_sigma(const Polytope& q, const RVec& axis);

struct VolumeResult {
  double value = 0;
  double error = 0;
};
VolumeResult volume(const GeodesicSimplex& s, double tolerance = 1e-9);
// Radial-projection integral, available in every dimension; volume() uses it for d = 3.
VolumeResult volume_by_integration(const GeodesicSimplex& s, double tolerance = 1e-9);
double sphere_volume(int n);  // of the unit S^n

struct CcsResult {
  GeodesicSimplex simplex;
  int sign = 1;
  std::vector<Real> dets;
};
// Vertices x0, g_d x0, g_d g_{d-1} x0, ..., g_d⋯g_1 x0.
CcsResult ccs_simplex(Geometry f, const std::vector<RMat>& tuple, const RVec& x0);

// Fixtures.
Polytope unit_cube();
Polytope box(const Real& a, const Real& b, const Real& c);
GeodesicSimplex regular_tetrahedron();

}  // namespace scissors
