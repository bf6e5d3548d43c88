#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scissors/chain.hpp"
#include "scissors/exactlin.hpp"
#include "scissors/group.hpp"
#include "scissors/simpset.hpp"

namespace scissors {

// Finite set of subspaces of X, closed under the listed operations
// ("perp", "project", "perp_sum").
class SubspaceFamily {
 public:
  static SubspaceFamily make(QuadSpacePtr geometry, std::vector<Subspace> seeds,
                             std::vector<std::string> closure_ops = {}, int max_rounds = 3);

  const QuadSpacePtr& geometry() const { return geometry_; }
  int size() const { return static_cast<int>(members_.size()); }
  const Subspace& member(int u) const { return members_[u]; }
  const std::vector<Subspace>& members() const { return members_; }
  const std::string& name(int u) const { return names_[u]; }
  const std::vector<std::string>& closure_ops() const { return ops_; }
  int whole() const { return whole_; }
  int dim(int u) const { return members_[u].dim(); }
  bool contains(int outer, int inner) const { return contains_[outer][inner]; }
  int find(const Subspace& s) const;
  // Index of s; ClosureMissing when it is not a member.
  int require(const Subspace& s, const std::string& what = "subspace") const;
  int perp(int u) const;            // X ∩ U⊥
  int project(int u, int v) const;  // V ∩ U⊥ for U ⊆ V
  // Members of a flag building with top T: nonempty members inside T of the same signature type.
  bool allowed_in(int top, int u) const;
  // Permutation of members induced by an isometry; throws when the family is not preserved.
  std::vector<int> permutation(const QMat& m) const;
  std::optional<std::string> check() const;

 private:
  QuadSpacePtr geometry_;
  std::vector<Subspace> members_;
  std::vector<std::string> names_, ops_;
  std::vector<std::vector<bool>> contains_;
  int whole_ = 0;
};

using FamilyPtr = std::shared_ptr<const SubspaceFamily>;

// Ordered orthogonal summands of X (or of a member), left to right.
using Decomposition = std::vector<int>;

// Wedge over decompositions of reduced joins of flag buildings. A simplex of
// degree n is a decomposition and a sequence of n+1 members; consecutive
// entries are nested within a factor, factors appear left to right, and each
// factor's run ends at its top. Repeated entries are degeneracies.
struct FlagSpace {
  FamilyPtr fam;
  std::vector<Decomposition> decomps;
  std::vector<int> excluded_dims;
  SimpSetPtr space;
  std::vector<std::vector<std::pair<int, std::vector<int>>>> cells;  // [k][i]
  std::map<std::pair<int, std::vector<int>>, int> index;

  int find_decomp(const Decomposition& d) const;
  // Factor of a member within a decomposition, -1 if none.
  int factor_of(int decomp, int u) const;
  // Simplex for a sequence; the basepoint when some factor lost its top.
  Simp simplex(int decomp, const std::vector<int>& seq) const;
  // Expanded sequence of any simplex; decomp = -1 for the basepoint.
  std::pair<int, std::vector<int>> sequence(const Simp& s) const;
  GroupAction action(const FiniteGroup& g) const;
  std::string str(int decomp, const std::vector<int>& seq) const;
};
using FlagSpacePtr = std::shared_ptr<const FlagSpace>;

FlagSpacePtr build_flag_join(FamilyPtr fam, std::vector<Decomposition> decomps, std::vector<int> excluded_dims = {});
// F^V for a member V (the whole space by default).
FlagSpacePtr build_F(FamilyPtr fam, int top = -1);
// Flags of F^X avoiding every geometric dimension in I.
FlagSpacePtr build_N_I(FamilyPtr fam, const std::vector<int>& dims);
// Marks of N_I inside F^X as a subcomplex.
std::vector<std::vector<bool>> n_i_marks(const FlagSpace& f, const std::vector<int>& dims);

// T^m, pointed by a disjoint basepoint: chains of members of dimension ≤ m.
struct TSpace {
  FamilyPtr fam;
  int m = 0;
  bool quotient = false;  // T^m / T^{m-1}
  SimpSetPtr space;
  std::vector<std::vector<std::vector<int>>> chains;
  std::map<std::vector<int>, int> index;
  Simp simplex(const std::vector<int>& seq) const;
};
TSpace build_T(FamilyPtr fam, int m);
TSpace build_T_quotient(FamilyPtr fam, int m);

// Ordered orthogonal decompositions of member `top` with the given geometric factor dimensions.
std::vector<Decomposition> decompositions(const SubspaceFamily& fam, int top, const std::vector<int>& dims);

// Generalized Dehn map: in factor `factor`, split at the member of local
// dimension `local_dim`; later entries of that factor are projected to its complement.
// The pivot is the last entry of that dimension, so degenerate sequences follow the same rule.
// An empty decomposition stands for the basepoint.
std::pair<Decomposition, std::vector<int>> dehn_sequence(const SubspaceFamily& fam, const Decomposition& d,
                                                         const std::vector<int>& seq, int factor, int local_dim);
// Target containing every refinement of the source decompositions.
FlagSpacePtr dehn_target(const FlagSpace& src, int factor, int local_dim);
SimpMap dehn_map(const FlagSpacePtr& src, const FlagSpacePtr& dst, int factor, int local_dim);

struct DehnMap {
  FlagSpacePtr source, target;
  std::shared_ptr<SimpMap> map;
};
DehnMap dehn_U(FamilyPtr fam, int u);
DehnMap dehn_i(FamilyPtr fam, int i);

struct CheckReport {
  bool ok = true;
  std::string message;
};
// (1 ⋆̄ D) ∘ D_i = (D ⋆̄ 1) ∘ D_j on every nondegenerate simplex of F^X.
CheckReport check_dehn_square(FamilyPtr fam, int i, int j);

struct CompositeIso {
  FlagSpacePtr source, target;
  std::shared_ptr<SimpMap> map;
  CheckReport report;
};
// D_I as the composite of the Dehn maps for I (geometric dims, any order),
// checked against the quotient by ∪ N_{i} and the flag reassembly inverse.
CompositeIso dehn_composite_iso(FamilyPtr fam, std::vector<int> dims);

// Tuples of points whose every subset spans a valid subspace of dimension ≤ m.
struct TplSpace {
  QuadSpacePtr geometry;
  std::vector<QVec> points;
  int m = 0;
  bool quotient = false;  // Tpl^m / Tpl^{m-1}
  SimpSetPtr space;
  std::vector<std::vector<std::vector<int>>> tuples;
  std::map<std::vector<int>, int> index;
  Simp simplex(const std::vector<int>& t) const;
  // Span of the listed points; empty when invalid.
  std::optional<Subspace> span_of(const std::vector<int>& t) const;
};
QVec normalize_point(const QVec& v);
TplSpace tpl(QuadSpacePtr geometry, std::vector<QVec> points, int m, int max_degree, bool quotient = false);

struct SpanMap {
  std::shared_ptr<SubdivisionResult> sd;
  SimpSetPtr source;
  std::shared_ptr<SimpMap> map;
};
// On the barycentric subdivision of Tpl: a chain of vertex subsets of a tuple goes to the flag of their spans.
SpanMap span_map_h(const TplSpace& t, const TSpace& target);

// Σ_σ sgn σ [span x_σ0 ⊂ … ⊂ X] in the chains of F^X.
SparseVec flag_class(const FlagSpace& f, const std::vector<QVec>& points);
// The same sum crossed with the S^σ class [+1] - [-1].
struct SmashedF {
  SimpSetPtr ssigma;
  FlagSpacePtr f;
  std::shared_ptr<SmashResult> data;
  SimpSetPtr space;
  GroupAction action(const FiniteGroup& g) const;
};
SmashedF smash_ssigma(FlagSpacePtr f);
SparseVec simplex_class(const SmashedF& s, const std::vector<QVec>& points);
// ℤ-class [+1] - [-1] in the chains of S^σ.
SparseVec ssigma_class(const SimpSet& ssigma);

}  // namespace scissors
