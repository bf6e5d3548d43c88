#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "scissors/error.hpp"

namespace scissors {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

QMat identity_matrix(int n);
QMat transpose(const QMat& a);
QMat matmul(const QMat& a, const QMat& b);
QVec matvec(const QMat& a, const QVec& v);
Rational dot(const QVec& a, const QVec& b);
Rational determinant(QMat a);

// Row reduce in place; returns pivot columns. Rows that become zero are dropped.
std::vector<int> rref(QMat& a);
int rank(QMat a);
// Basis (as rows) of {v : a v = 0}.
QMat null_space(const QMat& a, int ncols);

enum class Flavor { Spherical, Hyperbolic };
std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

// (n_minus, n_plus) of a nondegenerate symmetric form.
std::pair<int, int> signature(const QMat& gram);

class QuadSpace {
 public:
  static std::shared_ptr<const QuadSpace> make(Flavor flavor, QMat gram);
  // Standard models: identity gram in linear dimension n+1, or diag(-1,1,...,1).
  static std::shared_ptr<const QuadSpace> spherical(int n);
  static std::shared_ptr<const QuadSpace> hyperbolic(int n);

  Flavor flavor() const { return flavor_; }
  const QMat& gram() const { return gram_; }
  int linear_dim() const { return static_cast<int>(gram_.size()); }
  int dim() const { return linear_dim() - 1; }
  int n_minus() const { return n_minus_; }
  int n_plus() const { return n_plus_; }
  Rational form(const QVec& a, const QVec& b) const;

 private:
  QuadSpace() = default;
  Flavor flavor_ = Flavor::Spherical;
  QMat gram_;
  int n_minus_ = 0, n_plus_ = 0;
};

using QuadSpacePtr = std::shared_ptr<const QuadSpace>;

enum class SubspaceKind { Subspace, Angular };

class Subspace {
 public:
  Subspace() = default;
  // Canonical RREF span; validates nondegeneracy and the signature rule for kind.
  static Subspace span(const std::vector<QVec>& vectors, QuadSpacePtr ambient, SubspaceKind kind);
  // Span with the kind inferred from the restricted signature.
  static Subspace span_auto(const std::vector<QVec>& vectors, QuadSpacePtr ambient);
  static Subspace whole(QuadSpacePtr ambient);

  const QMat& basis() const { return basis_; }
  const QuadSpacePtr& ambient() const { return ambient_; }
  SubspaceKind kind() const { return kind_; }
  int linear_dim() const { return static_cast<int>(basis_.size()); }
  int dim() const { return linear_dim() - 1; }
  bool empty() const { return basis_.empty(); }
  int n_minus() const { return n_minus_; }
  QMat restricted_gram() const;

  bool contains(const QVec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;
  std::string str() const;

 private:
  QuadSpacePtr ambient_;
  QMat basis_;
  SubspaceKind kind_ = SubspaceKind::Angular;
  int n_minus_ = 0;
  friend Subspace make_subspace(QMat basis, QuadSpacePtr ambient, SubspaceKind kind, int n_minus);
};

Subspace make_subspace(QMat basis, QuadSpacePtr ambient, SubspaceKind kind, int n_minus);
Subspace orth_complement(const Subspace& u);
// V ∩ U⊥ for U ⊆ V.
Subspace project(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace direct_sum(const Subspace& a, const Subspace& b);
bool orthogonal(const Subspace& a, const Subspace& b);

struct Isometry {
  QMat matrix;
  int det_sign = 1;
};

// True iff MᵀGM = G; fills iso when true.
bool is_isometry(const QMat& m, const QuadSpace& x, Isometry* iso = nullptr);
Subspace apply(const QMat& m, const Subspace& u);

}  // namespace scissors
