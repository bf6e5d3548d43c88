#include "scissors/classical.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace scissors {

namespace {

unsigned digits_for(int bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1; }

Real pow2(int e) {
  Real r = 1;
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

Real tolerance() { return pow2(-static_cast<int>(mpfr_get_default_prec()) / 2); }

Real clamp1(const Real& x) { return x > 1 ? Real(1) : x < -1 ? Real(-1) : x; }

RVec sub(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RVec scaled(const RVec& a, const Real& s) {
  RVec r(a);
  for (auto& v : r) v *= s;
  return r;
}

void axpy(RVec& y, const Real& a, const RVec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Real dot(const RVec& a, const RVec& b) {
  Real s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Gaussian elimination with partial pivoting; returns the determinant and overwrites m.
Real det_inplace(RMat m) {
  int n = static_cast<int>(m.size());
  Real d = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[p][c])) p = r;
    if (m[p][c] == 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      Real f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

RMat inverse(RMat m) {
  int n = static_cast<int>(m.size());
  RMat inv(n, RVec(n, Real(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[p][c])) p = r;
    if (abs(m[p][c]) < tolerance()) throw Error("DegenerateFace", "singular Gram matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Real piv = m[c][c];
    for (int k = 0; k < n; ++k) {
      m[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Real f = m[r][c];
      for (int k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

RMat gram(Geometry f, const std::vector<RVec>& v) {
  RMat g(v.size(), RVec(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) g[i][j] = form(f, v[i], v[j]);
  return g;
}

// Vectors spanning the simplex directions: differences for euclidean, the vertices otherwise.
std::vector<RVec> frame(const GeodesicSimplex& s, const std::vector<int>& idx) {
  std::vector<RVec> out;
  if (s.flavor == Geometry::Euclidean) {
    for (size_t k = 1; k < idx.size(); ++k) out.push_back(sub(s.vertices[idx[k]], s.vertices[idx[0]]));
  } else {
    for (int k : idx) out.push_back(s.vertices[k]);
  }
  return out;
}

Geometry inner_geometry(Geometry f) { return f == Geometry::Hyperbolic ? Geometry::Hyperbolic : Geometry::Euclidean; }

// Component of x orthogonal to span(basis) under the flavor's form.
RVec project_out(Geometry f, const std::vector<RVec>& basis, const RVec& x) {
  if (basis.empty()) return x;
  Geometry g = inner_geometry(f);
  RMat gi = inverse(gram(g, basis));
  RVec rhs;
  for (auto& b : basis) rhs.push_back(form(g, b, x));
  RVec out = x;
  for (size_t i = 0; i < basis.size(); ++i) {
    Real c = 0;
    for (size_t j = 0; j < basis.size(); ++j) c += gi[i][j] * rhs[j];
    axpy(out, -c, basis[i]);
  }
  return out;
}

}  // namespace

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision()) {
  if (bits < 16) throw Error("InvalidArgument", "precision must be at least 16 bits");
  Real::default_precision(digits_for(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real pi_real() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Real parse_real(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw Error("ParseError", "not a real number: " + s);
  }
}

std::string real_str(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string geometry_name(Geometry f) {
  switch (f) {
    case Geometry::Euclidean: return "euclidean";
    case Geometry::Spherical: return "spherical";
    case Geometry::Hyperbolic: return "hyperbolic";
  }
  return "";
}

Geometry parse_geometry(const std::string& s) {
  if (s == "euclidean" || s == "euclidean3") return Geometry::Euclidean;
  if (s.rfind("spherical", 0) == 0) return Geometry::Spherical;
  if (s.rfind("hyperbolic", 0) == 0) return Geometry::Hyperbolic;
  throw Error("ParseError", "unknown flavor " + s);
}

Real form(Geometry f, const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw Error("InvalidArgument", "vector sizes differ");
  Real s = dot(a, b);
  if (f == Geometry::Hyperbolic) s -= 2 * a[0] * b[0];
  return s;
}

Real distance(Geometry f, const RVec& a, const RVec& b) {
  switch (f) {
    case Geometry::Euclidean: {
      auto d = sub(a, b);
      return sqrt(dot(d, d));
    }
    case Geometry::Spherical: return acos(clamp1(form(f, a, b)));
    case Geometry::Hyperbolic: {
      Real c = -form(f, a, b);
      return acosh(c < 1 ? Real(1) : c);
    }
  }
  return 0;
}

GeodesicSimplex GeodesicSimplex::make(Geometry f, std::vector<RVec> vertices) {
  GeodesicSimplex s;
  s.flavor = f;
  s.dim = static_cast<int>(vertices.size()) - 1;
  s.vertices = std::move(vertices);
  s.validate();
  return s;
}

void GeodesicSimplex::validate() const {
  if (static_cast<int>(vertices.size()) != dim + 1 || dim < 0) throw Error("InvalidSimplex", "vertex count");
  int n = ambient();
  for (auto& v : vertices)
    if (static_cast<int>(v.size()) != n) throw Error("InvalidSimplex", "vertex sizes differ");
  if (flavor != Geometry::Euclidean && n < dim + 1) throw Error("InvalidSimplex", "ambient dimension too small");
  Real tol = tolerance();
  for (auto& v : vertices) {
    if (flavor == Geometry::Spherical && abs(form(flavor, v, v) - 1) > tol)
      throw Error("InvalidSimplex", "spherical vertex is not a unit vector");
    if (flavor == Geometry::Hyperbolic && (abs(form(flavor, v, v) + 1) > tol || v[0] <= 0))
      throw Error("InvalidSimplex", "hyperbolic vertex is off the upper sheet");
  }
  std::vector<int> all(vertices.size());
  std::iota(all.begin(), all.end(), 0);
  auto fr = frame(*this, all);
  if (!fr.empty() && abs(det_inplace(gram(inner_geometry(flavor), fr))) < tol)
    throw Error("InvalidSimplex", "vertices are not independent");
}

void Polytope::add(GeodesicSimplex s, int sign) {
  if (simplices.empty() && dim == 0) {
    flavor = s.flavor;
    dim = s.dim;
  }
  if (s.flavor != flavor || s.dim != dim) throw Error("InvalidPolytope", "mixed flavors or dimensions");
  simplices.push_back(std::move(s));
  signs.push_back(sign);
}

// ---------------------------------------------------------------------------
// angles

Real dihedral_angle(const GeodesicSimplex& s, std::vector<int> face) {
  int d = s.dim;
  std::sort(face.begin(), face.end());
  face.erase(std::unique(face.begin(), face.end()), face.end());
  if (static_cast<int>(face.size()) != d - 1 || d < 1) throw Error("DegenerateFace", "face must have d - 1 vertices");
  std::vector<int> rest;
  for (int k = 0; k <= d; ++k)
    if (!std::binary_search(face.begin(), face.end(), k)) rest.push_back(k);
  if (rest.size() != 2) throw Error("DegenerateFace", "face indices out of range");
  int k = rest[0], l = rest[1];
  if (s.flavor != Geometry::Euclidean) {
    RMat w = inverse(gram(s.flavor, s.vertices));
    return acos(clamp1(-w[k][l] / sqrt(w[k][k] * w[l][l])));
  }
  // inward facet normals from the dual basis of the edge vectors at vertex 0
  std::vector<int> all(d + 1);
  std::iota(all.begin(), all.end(), 0);
  auto e = frame(s, all);
  int n = s.ambient();
  RMat gi = inverse(gram(Geometry::Euclidean, e));
  std::vector<RVec> dual(d, RVec(n, Real(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) axpy(dual[i], gi[i][j], e[j]);
  auto normal = [&](int v) {
    if (v > 0) return dual[v - 1];
    RVec r(n, Real(0));
    for (auto& x : dual) axpy(r, Real(-1), x);
    return r;
  };
  RVec nk = normal(k), nl = normal(l);
  return acos(clamp1(-dot(nk, nl) / sqrt(dot(nk, nk) * dot(nl, nl))));
}

std::vector<DehnSplit> classical_dehn_i(const GeodesicSimplex& s, int i) {
  int d = s.dim;
  if (i <= 0 || i >= d) throw Error("InvalidArgument", "i must lie strictly between 0 and d");
  std::vector<DehnSplit> out;
  std::vector<bool> pick(d + 1, false);
  std::fill(pick.begin(), pick.begin() + i + 1, true);
  do {
    std::vector<int> J, Jc;
    for (int k = 0; k <= d; ++k) (pick[k] ? J : Jc).push_back(k);
    auto basis = frame(s, J);
    Geometry g = inner_geometry(s.flavor);
    if (!basis.empty() && abs(det_inplace(gram(g, basis))) < tolerance())
      throw Error("DegenerateSpan", "face span is degenerate");
    DehnSplit sp;
    sp.face = J;
    sp.face_simplex.flavor = s.flavor;
    sp.face_simplex.dim = i;
    for (int k : J) sp.face_simplex.vertices.push_back(s.vertices[k]);
    // normalized projections onto U^⊥, written in an orthonormal basis of U^⊥
    std::vector<RVec> proj;
    for (int k : Jc) {
      RVec x = s.flavor == Geometry::Euclidean ? sub(s.vertices[k], s.vertices[J[0]]) : s.vertices[k];
      RVec p = project_out(s.flavor, basis, x);
      Real nn = form(g, p, p);
      if (nn <= tolerance()) throw Error("DegenerateSpan", "projection vanishes");
      proj.push_back(scaled(p, 1 / sqrt(nn)));
    }
    std::vector<RVec> onb;
    for (auto& p : proj) {
      RVec q = project_out(s.flavor, onb, p);
      Real nn = form(g, q, q);
      if (nn <= tolerance()) throw Error("DegenerateSpan", "link vertices are dependent");
      onb.push_back(scaled(q, 1 / sqrt(nn)));
    }
    sp.link.flavor = Geometry::Spherical;
    sp.link.dim = d - i - 1;
    for (auto& p : proj) {
      RVec c;
      for (auto& b : onb) c.push_back(form(g, b, p));
      sp.link.vertices.push_back(c);
    }
    out.push_back(std::move(sp));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// ---------------------------------------------------------------------------
// integer relations

PslqResult pslq(const std::vector<Real>& xin, double max_norm, int bits, int max_iterations) {
  PrecisionScope scope(bits);
  int n = static_cast<int>(xin.size());
  if (n < 2) throw Error("InvalidArgument", "need at least two numbers");
  PslqResult r;
  Real eps = pow2(-(bits - 16));
  // trivial relations
  Real norm = 0;
  for (auto& v : xin) norm += v * v;
  norm = sqrt(norm);
  if (norm == 0) throw Error("InvalidArgument", "zero vector");
  for (int k = 0; k < n; ++k)
    if (abs(xin[k]) < eps * norm) {
      r.found = true;
      r.relation.assign(n, 0);
      r.relation[k] = 1;
      r.residual = abs(xin[k]);
      r.norm_bound = 1;
      return r;
    }
  std::vector<Real> y(n);
  for (int k = 0; k < n; ++k) y[k] = xin[k] / norm;
  std::vector<Real> s(n);
  for (int k = n - 1; k >= 0; --k) s[k] = sqrt(y[k] * y[k] + (k + 1 < n ? s[k + 1] * s[k + 1] : Real(0)));
  RMat H(n, RVec(n - 1, Real(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < std::min(i + 1, n - 1); ++j) {
      if (i == j) H[i][j] = s[j + 1] / s[j];
      else H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
    }
  RMat A(n, RVec(n, Real(0))), B(n, RVec(n, Real(0)));
  for (int i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;
  auto reduce = [&](int i, int jmax) {
    for (int j = jmax; j >= 0; --j) {
      if (H[j][j] == 0) continue;
      Real t = round(H[i][j] / H[j][j]);
      if (t == 0) continue;
      y[j] += t * y[i];
      for (int k = 0; k <= j; ++k) H[i][k] -= t * H[j][k];
      for (int k = 0; k < n; ++k) {
        A[i][k] -= t * A[j][k];
        B[k][j] += t * B[k][i];
      }
    }
  };
  for (int i = 1; i < n; ++i) reduce(i, i - 1);
  Real gamma = sqrt(Real(4) / 3);
  Real limit = pow2(bits - 24);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    int m = 0;
    Real best = -1, g = gamma;
    for (int i = 0; i < n - 1; ++i, g *= gamma) {
      Real v = g * abs(H[i][i]);
      if (v > best) best = v, m = i;
    }
    std::swap(y[m], y[m + 1]);
    std::swap(A[m], A[m + 1]);
    std::swap(H[m], H[m + 1]);
    for (int k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);
    if (m < n - 2) {
      Real t0 = sqrt(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1]);
      Real t1 = H[m][m] / t0, t2 = H[m][m + 1] / t0;
      for (int i = m; i < n; ++i) {
        Real t3 = H[i][m], t4 = H[i][m + 1];
        H[i][m] = t1 * t3 + t2 * t4;
        H[i][m + 1] = -t2 * t3 + t1 * t4;
      }
    }
    for (int i = m + 1; i < n; ++i) reduce(i, std::min(i - 1, m + 1));
    Real hmax = 0;
    for (int j = 0; j < n - 1; ++j) hmax = std::max<Real>(hmax, abs(H[j][j]));
    r.norm_bound = hmax == 0 ? Real(0) : 1 / hmax;
    for (int j = 0; j < n; ++j)
      if (abs(y[j]) < eps) {
        r.found = true;
        Real res = 0;
        for (int k = 0; k < n; ++k) {
          r.relation.push_back(B[k][j].convert_to<long long>());
          res += B[k][j] * xin[k];
        }
        r.residual = abs(res);
        return r;
      }
    if (r.norm_bound > max_norm) return r;
    for (auto& row : A)
      for (auto& v : row)
        if (abs(v) > limit) throw Error("PrecisionExhausted", "relation search ran out of precision");
  }
  throw Error("PrecisionExhausted", "relation search did not terminate");
}

// ---------------------------------------------------------------------------
// tensors

std::string DehnTensor::str(int digits) const {
  if (reduced && terms.empty()) return "0";
  std::string out;
  for (auto& [l, a] : terms) {
    if (!out.empty()) out += " + ";
    out += real_str(l, digits) + " ⊗ " + real_str(a, digits);
  }
  return out;
}

DehnTensor tensor_reduce(const DehnTensor& t, const ReducePolicy& p) {
  PrecisionScope scope(p.bits);
  Real pi = pi_real(), tol = pow2(-p.residual_bits);
  DehnTensor out;
  out.bits = p.bits;
  out.reduced = true;
  // merge numerically equal angles, reduced into [0, π)
  std::vector<std::pair<Real, Real>> merged;
  for (auto& [l, a0] : t.terms) {
    Real a = a0 - floor(a0 / pi) * pi;
    if (abs(a - pi) < tol) a = 0;
    auto it = std::find_if(merged.begin(), merged.end(), [&](auto& m) { return abs(m.first - a) < tol; });
    if (it == merged.end()) merged.push_back({a, l});
    else it->second += l;
  }
  out.basis = {pi};
  out.certificates.push_back({0, true, Real(0)});
  std::vector<Real> coeff{Real(0)};
  Real scale = 1;
  for (auto& [l, a] : t.terms) scale = std::max<Real>(scale, abs(l));
  for (auto& [a, l] : merged) {
    if (abs(a) < tol || abs(l) < tol * scale) continue;  // integer multiples of π, cancelled lengths
    std::vector<Real> xs = out.basis;
    xs.push_back(a);
    auto r = pslq(xs, p.coefficient_bound, p.bits);
    if (r.found) {
      if (r.residual >= tol) throw Error("PrecisionExhausted", "relation residual above threshold");
      long long c = r.relation.back();
      if (c == 0) throw Error("PrecisionExhausted", "angle basis became dependent");
      // a = -Σ r_j B_j / c; the π component dies
      for (size_t j = 1; j < out.basis.size(); ++j) coeff[j] -= l * Real(r.relation[j]) / Real(c);
    } else {
      out.basis.push_back(a);
      out.certificates.push_back({static_cast<int>(out.basis.size()) - 1, true, r.norm_bound});
      coeff.push_back(l);
    }
  }
  for (size_t j = 1; j < out.basis.size(); ++j)
    if (abs(coeff[j]) > tol * scale) out.terms.push_back({coeff[j], out.basis[j]});
  out.heuristic = !out.terms.empty();
  return out;
}

std::vector<DehnTerm> dehn_terms(const Polytope& p) {
  if (p.dim != 3) throw Error("InvalidArgument", "Dehn invariant needs a 3-dimensional polytope");
  std::vector<DehnTerm> out;
  for (size_t k = 0; k < p.simplices.size(); ++k) {
    const auto& s = p.simplices[k];
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        DehnTerm t;
        t.simplex = static_cast<int>(k);
        t.a = a;
        t.b = b;
        t.length = distance(s.flavor, s.vertices[a], s.vertices[b]);
        t.angle = dihedral_angle(s, {a, b});
        t.sign = p.signs[k];
        out.push_back(std::move(t));
      }
  }
  return out;
}

DehnTensor dehn_classical(const Polytope& p, const ReducePolicy& policy) {
  PrecisionScope scope(policy.bits);
  DehnTensor raw;
  raw.bits = policy.bits;
  for (auto& t : dehn_terms(p)) raw.terms.push_back({t.length * t.sign, t.angle});
  return tensor_reduce(raw, policy);
}

Polytope suspension_sigma(const Polytope& q, const RVec& axis) {
  Polytope out;
  if (q.simplices.empty()) return out;
  if (q.flavor != Geometry::Spherical) throw Error("InvalidArgument", "suspension needs a spherical polytope");
  Real n = sqrt(dot(axis, axis));
  if (n == 0) throw Error("InvalidArgument", "zero axis");
  RVec u = scaled(axis, 1 / n), v = scaled(u, Real(-1));
  for (size_t k = 0; k < q.simplices.size(); ++k) {
    for (auto& x : q.simplices[k].vertices)
      if (abs(dot(x, u)) > tolerance()) throw Error("NotInHyperplane", "vertex is not orthogonal to the axis");
    for (const RVec* pole : {&u, &v}) {
      auto verts = q.simplices[k].vertices;
      verts.push_back(*pole);
      out.add(GeodesicSimplex::make(Geometry::Spherical, verts), q.signs[k]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// volume

double sphere_volume(int n) { return 2 * std::pow(M_PI, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0); }

VolumeResult volume_by_integration(const GeodesicSimplex& s, double tol) {
  int d = s.dim;
  if (s.flavor == Geometry::Euclidean) throw Error("InvalidArgument", "euclidean volume is a determinant");
  int n = s.ambient();
  if (n != d + 1) throw Error("InvalidArgument", "simplex must span its ambient space");
  std::vector<std::vector<double>> v(d + 1, std::vector<double>(n));
  RMat m;
  for (int i = 0; i <= d; ++i) {
    m.push_back(s.vertices[i]);
    for (int k = 0; k < n; ++k) v[i][k] = s.vertices[i][k].convert_to<double>();
  }
  double jac = std::abs(det_inplace(m).convert_to<double>());
  bool hyp = s.flavor == Geometry::Hyperbolic;
  auto density = [&](const std::vector<double>& t) {
    std::vector<double> x = v[0];
    for (int i = 1; i <= d; ++i)
      for (int k = 0; k < n; ++k) x[k] += t[i - 1] * (v[i][k] - v[0][k]);
    double q = 0;
    for (int k = 0; k < n; ++k) q += x[k] * x[k];
    if (hyp) q -= 2 * x[0] * x[0], q = -q;
    return jac / std::pow(q, (d + 1) / 2.0);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  std::vector<double> t(d, 0.0);
  double outer_err = 0;
  std::function<double(int, double)> level = [&](int k, double room) -> double {
    if (k == d) return density(t);
    double err = 0;
    double val = GK::integrate(
        [&](double u) {
          t[k] = u;
          return level(k + 1, room - u);
        },
        0.0, room, 12, tol * 1e-2, &err);
    if (k == 0) outer_err = err;
    return val;
  };
  VolumeResult r;
  r.value = level(0, 1.0);
  r.error = outer_err;
  if (!(r.error <= tol * std::max(1.0, std::abs(r.value)))) throw Error("ToleranceNotMet", "quadrature error too large");
  return r;
}

VolumeResult volume(const GeodesicSimplex& s, double tol) {
  int d = s.dim;
  VolumeResult r;
  if (s.flavor == Geometry::Euclidean) {
    std::vector<int> all(d + 1);
    std::iota(all.begin(), all.end(), 0);
    Real g = det_inplace(gram(Geometry::Euclidean, frame(s, all)));
    Real f = 1;
    for (int k = 2; k <= d; ++k) f *= k;
    r.value = (sqrt(abs(g)) / f).convert_to<double>();
    return r;
  }
  if (d > 3) throw Error("InvalidArgument", "volume is implemented up to dimension 3");
  if (d == 0) {
    r.value = 1;
    return r;
  }
  if (d == 1) {
    r.value = distance(s.flavor, s.vertices[0], s.vertices[1]).convert_to<double>();
    return r;
  }
  if (d == 2) {
    Real sum = 0;
    for (int k = 0; k < 3; ++k) sum += dihedral_angle(s, {k});
    Real pi = pi_real();
    r.value = (s.flavor == Geometry::Spherical ? sum - pi : pi - sum).convert_to<double>();
    return r;
  }
  return volume_by_integration(s, tol);
}

// ---------------------------------------------------------------------------
// CCS simplices

CcsResult ccs_simplex(Geometry f, const std::vector<RMat>& tuple, const RVec& x0) {
  if (f == Geometry::Euclidean) throw Error("InvalidArgument", "CCS simplices are spherical or hyperbolic");
  int d = static_cast<int>(tuple.size());
  int n = static_cast<int>(x0.size());
  if (n != d + 1) throw Error("InvalidArgument", "basepoint must lie in R^{d+1}");
  Real tol = tolerance();
  CcsResult r;
  for (auto& g : tuple) {
    if (static_cast<int>(g.size()) != n) throw Error("InvalidArgument", "matrix size");
    // columns must be orthonormal for the form
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        RVec ca(n), cb(n);
        for (int k = 0; k < n; ++k) ca[k] = g[k][a], cb[k] = g[k][b];
        RVec ea(n, Real(0)), eb(n, Real(0));
        ea[a] = 1;
        eb[b] = 1;
        if (abs(form(f, ca, cb) - form(f, ea, eb)) > tol) throw Error("NotIsometry", "matrix does not preserve the form");
      }
    Real dt = det_inplace(g);
    r.dets.push_back(dt);
    r.sign *= dt > 0 ? 1 : -1;
  }
  std::vector<RVec> pts{x0};
  RMat h(n, RVec(n, Real(0)));
  for (int k = 0; k < n; ++k) h[k][k] = 1;
  for (int i = d - 1; i >= 0; --i) {
    RMat nh(n, RVec(n, Real(0)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) nh[a][b] += h[a][c] * tuple[i][c][b];
    h = nh;
    RVec p(n, Real(0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) p[a] += h[a][b] * x0[b];
    pts.push_back(p);
  }
  if (abs(det_inplace(pts)) < tol) throw Error("NotGeneric", "vertices are not linearly independent");
  r.simplex = GeodesicSimplex::make(f, pts);
  return r;
}

// ---------------------------------------------------------------------------
// fixtures

Polytope box(const Real& a, const Real& b, const Real& c) {
  Polytope p;
  std::vector<int> perm{0, 1, 2};
  RVec scale{a, b, c};
  do {
    std::vector<RVec> verts{RVec(3, Real(0))};
    RVec cur(3, Real(0));
    for (int k : perm) {
      cur[k] = scale[k];
      verts.push_back(cur);
    }
    p.add(GeodesicSimplex::make(Geometry::Euclidean, verts));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

Polytope unit_cube() { return box(1, 1, 1); }

GeodesicSimplex regular_tetrahedron() {
  Real s = 1 / (2 * sqrt(Real(2)));
  std::vector<RVec> v{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  return GeodesicSimplex::make(Geometry::Euclidean, v);
}

}  // namespace scissors
