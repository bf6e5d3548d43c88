#include "scissors/exactlin.hpp"

#include <sstream>

namespace scissors {

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw Error("ParseError", "empty rational");
  auto dot_pos = s.find('.');
  if (dot_pos != std::string::npos && s.find('/') == std::string::npos) {
    // decimal literal
    std::string digits = s.substr(0, dot_pos) + s.substr(dot_pos + 1);
    size_t frac = s.size() - dot_pos - 1;
    mpz_class den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw Error("ParseError", "bad decimal '" + raw + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("ParseError", "bad rational '" + raw + "'");
  if (q.get_den() == 0) throw Error("ParseError", "zero denominator in '" + raw + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

QMat identity_matrix(int n) {
  QMat m(n, QVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat t(a[0].size(), QVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

QMat matmul(const QMat& a, const QMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat c(n, QVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

QVec matvec(const QMat& a, const QVec& v) {
  QVec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational determinant(QMat a) {
  int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::vector<int> rref(QMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t cols = a[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (size_t j = c; j < cols; ++j) a[row][j] *= inv;
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = c; j < cols; ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++row;
  }
  a.resize(row);
  return pivots;
}

int rank(QMat a) { return static_cast<int>(rref(a).size()); }

QMat null_space(const QMat& a, int ncols) {
  QMat r = a;
  auto piv = rref(r);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : piv) is_pivot[p] = true;
  QMat out;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(ncols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::string flavor_name(Flavor f) { return f == Flavor::Spherical ? "spherical" : "hyperbolic"; }

Flavor parse_flavor(const std::string& s) {
  if (s == "spherical") return Flavor::Spherical;
  if (s == "hyperbolic") return Flavor::Hyperbolic;
  throw Error("ParseError", "unknown flavor '" + s + "'");
}

std::pair<int, int> signature(const QMat& gram) {
  QMat a = gram;
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) throw Error("DegenerateForm", "gram not square");
    for (int j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) throw Error("DegenerateForm", "gram not symmetric");
  }
  int neg = 0, pos = 0;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[j], a[k]);
        for (auto& row : a) std::swap(row[j], row[k]);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) throw Error("DegenerateForm", "form is degenerate");
        // replace e_k by e_k + e_j; new diagonal entry is 2 a[k][j]
        for (int c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (int r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    for (int r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      Rational f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      for (int rr = k; rr < n; ++rr) a[rr][r] -= f * a[rr][k];
    }
    if (a[k][k] > 0)
      ++pos;
    else
      ++neg;
  }
  return {neg, pos};
}

std::shared_ptr<const QuadSpace> QuadSpace::make(Flavor flavor, QMat gram) {
  auto sig = signature(gram);
  int n = static_cast<int>(gram.size());
  bool ok = flavor == Flavor::Spherical ? sig.first == 0 : sig.first == 1 && n >= 2;
  if (!ok)
    throw Error("SignatureMismatch", "signature (" + std::to_string(sig.first) + "," +
                                         std::to_string(sig.second) + ") does not match " +
                                         flavor_name(flavor));
  auto q = std::shared_ptr<QuadSpace>(new QuadSpace());
  q->flavor_ = flavor;
  q->gram_ = std::move(gram);
  q->n_minus_ = sig.first;
  q->n_plus_ = sig.second;
  return q;
}

std::shared_ptr<const QuadSpace> QuadSpace::spherical(int n) {
  return make(Flavor::Spherical, identity_matrix(n + 1));
}

std::shared_ptr<const QuadSpace> QuadSpace::hyperbolic(int n) {
  QMat g = identity_matrix(n + 1);
  g[0][0] = -1;
  return make(Flavor::Hyperbolic, g);
}

Rational QuadSpace::form(const QVec& a, const QVec& b) const {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
  }
  return s;
}

Subspace make_subspace(QMat basis, QuadSpacePtr ambient, SubspaceKind kind, int n_minus) {
  Subspace s;
  s.ambient_ = std::move(ambient);
  s.basis_ = std::move(basis);
  s.kind_ = kind;
  s.n_minus_ = n_minus;
  return s;
}

QMat Subspace::restricted_gram() const {
  int k = linear_dim();
  QMat g(k, QVec(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g[i][j] = ambient_->form(basis_[i], basis_[j]);
  return g;
}

namespace {

Subspace build(const std::vector<QVec>& vectors, QuadSpacePtr ambient, const SubspaceKind* kind) {
  QMat b = vectors;
  for (auto& v : b)
    if (static_cast<int>(v.size()) != ambient->linear_dim())
      throw Error("DimensionMismatch", "vector length differs from ambient dimension");
  rref(b);
  Subspace s = make_subspace(std::move(b), ambient, SubspaceKind::Angular, 0);
  int nm = 0;
  if (!s.empty()) {
    try {
      nm = signature(s.restricted_gram()).first;
    } catch (const Error&) {
      throw Error("DegenerateSpan", "restricted form is degenerate on " + s.str());
    }
  }
  SubspaceKind k;
  if (kind) {
    k = *kind;
    int want = k == SubspaceKind::Subspace ? ambient->n_minus() : 0;
    if (nm != want) throw Error("SignatureMismatch", "span " + s.str() + " has wrong signature for its kind");
  } else {
    if (nm == ambient->n_minus() && !s.empty())
      k = SubspaceKind::Subspace;
    else if (nm == 0)
      k = SubspaceKind::Angular;
    else
      throw Error("SignatureMismatch", "span " + s.str() + " is neither subspace nor angular");
  }
  return make_subspace(s.basis(), ambient, k, nm);
}

}  // namespace

Subspace Subspace::span(const std::vector<QVec>& vectors, QuadSpacePtr ambient, SubspaceKind kind) {
  return build(vectors, std::move(ambient), &kind);
}

Subspace Subspace::span_auto(const std::vector<QVec>& vectors, QuadSpacePtr ambient) {
  if (vectors.empty()) return make_subspace({}, std::move(ambient), SubspaceKind::Angular, 0);
  return build(vectors, std::move(ambient), nullptr);
}

Subspace Subspace::whole(QuadSpacePtr ambient) {
  return span(identity_matrix(ambient->linear_dim()), ambient, SubspaceKind::Subspace);
}

bool Subspace::contains(const QVec& v) const {
  QMat m = basis_;
  m.push_back(v);
  return rank(m) == linear_dim();
}

bool Subspace::contains(const Subspace& other) const {
  QMat m = basis_;
  for (auto& r : other.basis_) m.push_back(r);
  return rank(m) == linear_dim();
}

bool Subspace::operator<(const Subspace& o) const {
  if (basis_.size() != o.basis_.size()) return basis_.size() < o.basis_.size();
  for (size_t i = 0; i < basis_.size(); ++i)
    for (size_t j = 0; j < basis_[i].size(); ++j)
      if (basis_[i][j] != o.basis_[i][j]) return basis_[i][j] < o.basis_[i][j];
  return false;
}

std::string Subspace::str() const {
  std::ostringstream os;
  os << "span{";
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ",";
    os << "(";
    for (size_t j = 0; j < basis_[i].size(); ++j) os << (j ? "," : "") << basis_[i][j].get_str();
    os << ")";
  }
  os << "}";
  return os.str();
}

Subspace orth_complement(const Subspace& u) {
  const auto& amb = u.ambient();
  // rows of B·G; kernel gives the vectors orthogonal to U
  QMat pairing = matmul(u.basis(), amb->gram());
  QMat ns = u.empty() ? identity_matrix(amb->linear_dim()) : null_space(pairing, amb->linear_dim());
  return Subspace::span_auto(ns, amb);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  // v ∈ a ∩ b  ⟺  v ⊥ (a⊥ + b⊥) with respect to the standard dot product
  int n = a.ambient()->linear_dim();
  QMat eq;
  for (auto& r : null_space(a.basis(), n)) eq.push_back(r);
  for (auto& r : null_space(b.basis(), n)) eq.push_back(r);
  if (a.empty() || b.empty()) return Subspace::span_auto({}, a.ambient());
  QMat ns = eq.empty() ? identity_matrix(n) : null_space(eq, n);
  return Subspace::span_auto(ns, a.ambient());
}

Subspace project(const Subspace& u, const Subspace& v) {
  if (!v.contains(u)) throw Error("NotNested", u.str() + " is not contained in " + v.str());
  return intersect(v, orth_complement(u));
}

Subspace direct_sum(const Subspace& a, const Subspace& b) {
  QMat m = a.basis();
  for (auto& r : b.basis()) m.push_back(r);
  return Subspace::span_auto(m, a.ambient());
}

bool orthogonal(const Subspace& a, const Subspace& b) {
  for (auto& x : a.basis())
    for (auto& y : b.basis())
      if (a.ambient()->form(x, y) != 0) return false;
  return true;
}

bool is_isometry(const QMat& m, const QuadSpace& x, Isometry* iso) {
  int n = x.linear_dim();
  if (static_cast<int>(m.size()) != n) return false;
  for (auto& r : m)
    if (static_cast<int>(r.size()) != n) return false;
  if (matmul(matmul(transpose(m), x.gram()), m) != x.gram()) return false;
  if (iso) {
    iso->matrix = m;
    iso->det_sign = determinant(m) > 0 ? 1 : -1;
  }
  return true;
}

Subspace apply(const QMat& m, const Subspace& u) {
  std::vector<QVec> img;
  for (auto& r : u.basis()) img.push_back(matvec(m, r));
  return Subspace::span_auto(img, u.ambient());
}

}  // namespace scissors
