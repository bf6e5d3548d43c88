#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scissors/error.hpp"
#include "scissors/simpset.hpp"

namespace scissors {

using Int = mpz_class;
using IntMat = std::vector<std::vector<Int>>;  // dense, row-major
using SparseVec = std::map<int, Int>;

struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<SparseVec> col;
  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}
  void add(int r, int c, const Int& v);
  SparseVec apply(const SparseVec& x) const;
  IntMat dense() const;
  static SparseMatrix from_dense(const IntMat& m, int cols_if_empty = 0);
};
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
void axpy(SparseVec& y, const Int& a, const SparseVec& x);  // y += a x, zeros removed

struct SmithForm {
  // left * m * right = diag(divisors, 0, ...)
  IntMat left, left_inv, right, right_inv;
  std::vector<Int> divisors;  // nonzero diagonal, each dividing the next
  int rank() const { return static_cast<int>(divisors.size()); }
};
SmithForm smith(const IntMat& m, int rows, int cols, bool transforms = true);

class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(std::vector<int> ranks);
  int top() const { return static_cast<int>(ranks_.size()) - 1; }
  int rank(int n) const { return n >= 0 && n <= top() ? ranks_[n] : 0; }
  // Boundary C_n -> C_{n-1}.
  const SparseMatrix& d(int n) const;
  SparseMatrix& d_mut(int n) { return d_[n]; }
  std::vector<std::string>& labels(int n) { return labels_[n]; }
  const std::vector<std::string>& labels(int n) const { return labels_[n]; }
  std::string label(int n, int i) const;
  std::optional<std::string> check() const;
  SparseVec boundary(int n, const SparseVec& x) const { return d(n).apply(x); }

 private:
  std::vector<int> ranks_;
  std::vector<SparseMatrix> d_;
  std::vector<std::vector<std::string>> labels_;
  SparseMatrix empty_;
};

// f[n] : C_n -> D_n
struct ChainMap {
  std::vector<SparseMatrix> f;
  SparseVec apply(int n, const SparseVec& x) const;
};
std::optional<std::string> check_chain_map(const ChainComplex& c, const ChainComplex& d, const ChainMap& f);

enum class Coeff { Z, Zhalf, Q };
std::string coeff_name(Coeff c);
Coeff parse_coeff(const std::string& s);

struct HomologyGroup {
  int degree = 0;
  int rank = 0;
  std::vector<Int> torsion;
  bool zero() const { return rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return degree == o.degree && rank == o.rank && torsion == o.torsion;
  }
  std::string str() const;
};
std::vector<Int> adjust_torsion(std::vector<Int> divisors, Coeff c);
std::vector<HomologyGroup> homology(const ChainComplex& c, Coeff coeff = Coeff::Z, int max_degree = -1);
// Degrees where homology is nonzero.
std::vector<HomologyGroup> nonzero(const std::vector<HomologyGroup>& h);

// Chain-homotopy-equivalent reduction of a complex obtained by cancelling
// pairs of generators joined by a unit boundary coefficient.
class ReducedComplex {
 public:
  ReducedComplex(const ChainComplex& c, bool track);
  const std::vector<int>& survivors(int n) const { return survivors_[n]; }
  int top() const { return static_cast<int>(survivors_.size()) - 1; }
  // Boundary between surviving generators, rows/cols in survivor order.
  IntMat residual(int n) const;
  // Projection of a chain of C onto the reduced complex (indices of C).
  SparseVec project(int n, SparseVec x) const;
  // A cycle of C representing the reduced cycle y.
  SparseVec lift(int n, SparseVec y) const;

 private:
  struct Step {
    int deg_b;        // a sits in degree deg_b + 1
    int b, a;
    Int c;            // coefficient of b in the boundary of a, a unit
    SparseVec col_a;  // boundary of a when cancelled
    std::vector<std::pair<int, Int>> row_b;  // coefficient of b in the boundaries of the other generators
  };
  std::vector<std::vector<int>> survivors_;
  std::vector<std::vector<SparseVec>> cols_;  // current boundaries by degree
  std::vector<Step> steps_;
  bool track_;
};

// Subgroup A/B of ℤ^N with A = ker(K) and B ⊆ A given by generating columns.
class Subquotient {
 public:
  Subquotient(const IntMat& kernel_of, int ambient, const IntMat& rel_columns, int nrel);
  int size() const { return static_cast<int>(orders_.size()); }
  const std::vector<Int>& orders() const { return orders_; }  // 0 for ℤ summands
  const std::vector<std::vector<Int>>& generators() const { return gens_; }
  std::vector<Int> coordinates(const std::vector<Int>& x) const;
  int rank() const;
  std::vector<Int> torsion() const;

 private:
  int ambient_ = 0, ker_rank_ = 0;
  IntMat kernel_right_inv_;
  IntMat rel_left_;
  std::vector<int> keep_;  // rows of rel_left_ giving nontrivial coordinates
  std::vector<Int> orders_;
  std::vector<std::vector<Int>> gens_;
};

// Explicit generators of H_n(C) over ℤ; generator i has order orders[i] (0 = free).
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& c, int n);
  HomologyBasis(std::shared_ptr<const ReducedComplex> red, const ChainComplex& c, int n);
  int degree() const { return n_; }
  int size() const { return quotient_->size(); }
  const std::vector<Int>& orders() const { return quotient_->orders(); }
  int rank() const { return quotient_->rank(); }
  std::vector<int> free_indices() const;
  SparseVec generator(int i) const;
  // Class of a cycle; torsion coordinates reduced modulo their order.
  std::vector<Int> coordinates(const SparseVec& cycle) const;
  const ReducedComplex& reduced() const { return *red_; }

 private:
  void init(const ChainComplex& c);
  int n_;
  std::shared_ptr<const ReducedComplex> red_;
  std::unique_ptr<Subquotient> quotient_;
};

// Matrix of f_* : H_n(C) -> H_n(D) in the chosen bases (columns = source generators).
IntMat induced_homology(const HomologyBasis& src, const HomologyBasis& dst, const ChainMap& f);
// Restriction to free summands (the map on H/torsion).
IntMat free_part(const IntMat& m, const HomologyBasis& src, const HomologyBasis& dst);

ChainComplex mapping_cone(const ChainComplex& c, const ChainComplex& d, const ChainMap& f);
// True iff f induces isomorphisms in every degree with the given coefficients.
bool is_quasi_iso(const ChainComplex& c, const ChainComplex& d, const ChainMap& f, Coeff coeff = Coeff::Z);

// Reduced normalized chains: generators are non-basepoint nondegenerate simplices.
ChainComplex normalized_chains(const SimpSet& x, int max_degree = -1);
// Index of a simplex among generators of normalized_chains, or -1 when it is degenerate or the basepoint.
int chain_index(const SimpSet& x, const Simp& s);
ChainMap induced_chain_map(const SimpMap& f, int max_degree = -1);
SparseVec simplex_chain(const SimpSet& x, const Simp& s, int sign = 1);

// Eilenberg–Zilber shuffle product C(X) ⊗ C(Y) -> C(X ∧ Y) on nondegenerate generators.
SparseVec cross(const SimpSet& x, const SimpSet& y, const SmashResult& xy, const Simp& a, const Simp& b);
SparseVec cross(const SimpSet& x, const SimpSet& y, const SmashResult& xy, int p, const SparseVec& u, int q,
                const SparseVec& v);

// Cubes of chain complexes. Vertex ε is a bitmask; direction j is bit j.
struct CubeDiagram {
  int m = 0;
  std::vector<ChainComplex> vertices;
  std::map<std::pair<int, int>, ChainMap> edges;  // (ε, j) with bit j clear -> map to ε | 1<<j
  const ChainMap& edge(int eps, int j) const;
  // Chain maps and commuting squares; message names the failing square.
  std::optional<std::string> check() const;
};

struct TotalLayout {
  // total degree -> list of (vertex, internal degree, offset)
  std::vector<std::vector<std::tuple<int, int, int>>> blocks;
  std::vector<std::vector<int>> filtration;  // total degree -> filtration of each generator
};
ChainComplex total_complex(const CubeDiagram& cube, TotalLayout* layout = nullptr);

struct SSPage {
  int r = 1;
  // entries[p][q]
  std::map<std::pair<int, int>, HomologyGroup> entries;
  // d^r : E_{p,q} -> E_{p-r,q+r-1}, keyed by source (p,q)
  std::map<std::pair<int, int>, IntMat> differentials;
  const HomologyGroup* at(int p, int q) const;
};
// Pages E^1 .. E^{m+1} of the filtration by cube position; the last one is E^∞.
std::vector<SSPage> cube_ss(const CubeDiagram& cube, Coeff coeff = Coeff::Z);

// Multiset comparison used to relate E^∞ with H(Tot): rational rank and the
// order of the p-primary part for each prime.
struct GradedSummary {
  int rank = 0;
  std::map<Int, int> prime_exponents;
  bool operator==(const GradedSummary& o) const { return rank == o.rank && prime_exponents == o.prime_exponents; }
};
GradedSummary summarize(const std::vector<HomologyGroup>& groups);

}  // namespace scissors
