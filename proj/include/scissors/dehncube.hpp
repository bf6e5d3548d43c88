#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scissors/building.hpp"
#include "scissors/chain.hpp"
#include "scissors/group.hpp"
#include "scissors/grouphom.hpp"

namespace scissors {

// (b, a_1, ..., a_i) with b + Σ a_j = d.
struct IndexObject {
  int b = 0;
  std::vector<int> parts;
  bool operator==(const IndexObject& o) const { return b == o.b && parts == o.parts; }
  bool operator<(const IndexObject& o) const { return std::tie(b, parts) < std::tie(o.b, o.parts); }
  std::string str() const;
  // Geometric dimensions of the orthogonal factors W, V_1, ..., V_i.
  std::vector<int> factor_dims() const;
};

struct CubeMorphism {
  int from = 0, to = 0;  // vertex masks, to = from | 1 << bit
  int bit = 0;
  int direction = 0;     // r = a''_ℓ + a_{ℓ+1} + ... + a_i
};

// A cube whose coordinate bit k records a cut of X at geometric dimension
// cut_of_bit[k]: the object for a set of cuts c_1 < ... < c_k is
// (c_1, c_2 - c_1, ..., d - c_k), and (d) for no cuts.
struct CubeIndex {
  int d = 0;
  bool hat = false;
  std::vector<int> cut_of_bit;
  std::vector<IndexObject> objects;  // by vertex mask
  std::vector<CubeMorphism> morphisms;

  int m() const { return static_cast<int>(cut_of_bit.size()); }
  int vertices() const { return 1 << m(); }
  std::vector<int> cuts(int mask) const;
  IndexObject object(int mask) const { return objects[mask]; }
  int mask_of(const IndexObject& a) const;  // -1 when absent
  int direction(int bit) const { return d - cut_of_bit[bit]; }
  // Factor of the object at `mask` split by adding `bit`, and the local geometric dimension of the split.
  std::pair<int, int> split(int mask, int bit) const;
};

// hat = false: the even-direction cube (cuts at d - 2, d - 4, ..., ≥ 1).
// hat = true: cuts at every dimension 0 .. d-1.
CubeIndex enumerate_index(int d, bool hat);
// Sub-cube over an arbitrary set of cut dimensions.
CubeIndex cut_index(int d, std::vector<int> cuts);

// Wedge over orthogonal decompositions of X matching the object, of joined flag buildings.
FlagSpacePtr build_flag_space(FamilyPtr fam, const IndexObject& a);

// S^σ ∧ J^Ā on one decomposition: the smash of S^σ, F^W, S^σ, F^{V_1}, ..., S^σ, F^{V_i}.
struct JSummand {
  Decomposition decomp;
  std::vector<FlagSpacePtr> flags;
  std::shared_ptr<MultiSmash> smash;
  SimpSetPtr space;
};
struct JSpace {
  IndexObject object;
  std::vector<JSummand> summands;
  // J^Ā itself (no leading S^σ) as a wedge over decompositions.
  std::vector<std::shared_ptr<MultiSmash>> plain;
  std::shared_ptr<WedgeResult> wedge;
  SimpSetPtr space;
};
JSpace build_J(FamilyPtr fam, const IndexObject& a);

struct DehnCube {
  FamilyPtr fam;
  CubeIndex index;
  bool with_ssigma = true;
  std::vector<FlagSpacePtr> flags;                               // F^Ā per vertex
  std::vector<SmashedF> smashed;                                 // S^σ ∧ F^Ā per vertex
  std::map<std::pair<int, int>, std::shared_ptr<SimpMap>> maps;  // (mask, bit) on flags
  std::map<std::pair<int, int>, std::shared_ptr<SimpMap>> smashed_maps;
  const SimpSet& vertex_space(int mask) const;
  const SimpMap& edge_map_at(int mask, int bit) const;
  CubeDiagram chains(int max_degree = -1) const;
};
// Vertices S^σ ∧ F^Ā (or F^Ā), edges the Dehn maps on the split factor;
// squares are compared simplexwise and NonCommutingSquare is raised on failure.
DehnCube build_dehn_cube(FamilyPtr fam, const CubeIndex& index, bool with_ssigma = true);
CheckReport check_cube_squares(const DehnCube& cube);

struct HatCubeReport {
  bool ok = false;
  std::vector<HomologyGroup> homology;  // nonzero groups of the total complex
  std::string message;
};
HatCubeReport verify_Zid(FamilyPtr fam);

struct SubcubeCofiberReport {
  bool ok = false;
  bool bijective = false;
  std::vector<HomologyGroup> total;     // nonzero homology of the sub-cube total complex
  std::vector<HomologyGroup> expected;  // nonzero H̃_{*-|I|}(N_I F), shifted
  std::string message;
};
SubcubeCofiberReport subcube_cofiber_check(FamilyPtr fam, std::vector<int> dims);

struct FCompareSummand {
  Decomposition decomp;
  IntMat matrix;           // induced map on H_{d+1}
  Int scale;               // 2^{|Ā|-1}
  bool unimodular = false;  // matrix / scale is integral with determinant ±1
};
struct FCompareReport {
  bool ok = false;
  IndexObject object;
  std::vector<FCompareSummand> summands;
  std::string message;
  // 2^{1-|Ā|}, applied to induced maps only.
  std::pair<Int, Int> multiplier() const;
};
// The composite S^σ ∧ J^Ā → S^σ ∧ F^Ā of shuffles, γ and the smash-to-join map,
// checked on H_{d+1} of each decomposition summand.
FCompareReport compare_f_A(FamilyPtr fam, const IndexObject& a);
// The underlying simplicial map on one summand.
SimpMap f_A_map(const JSummand& src, const SmashedF& dst);

// Shift by one with the differential negated and each group element acting by det(g)·g_*;
// equivariantly quasi-isomorphic to the chains of S^σ ∧ X through the cross product with [+1] - [-1].
ChainComplex twisted_shift(const ChainComplex& c);
ChainAction twisted_shift_action(const ChainAction& a);
ChainMap twisted_shift_map(const ChainMap& f);

struct DehnComplexData {
  FamilyPtr fam;
  FiniteGroup group;
  CubeIndex index;
  int d = 0;
  int truncate = 0;
  Coeff coeff = Coeff::Zhalf;
  std::vector<FlagSpacePtr> flags;
  std::vector<std::shared_ptr<OrbitComplex>> orbits;       // per vertex, twisted model
  std::vector<std::shared_ptr<HomologyBasis>> bases;       // H_{d+1} per vertex
  std::vector<std::vector<int>> free_generators;           // free basis indices per vertex
  std::vector<HomologyGroup> vertex_homology;              // H_{d+1} per vertex, coefficients applied
  CubeDiagram orbit_cube;
  ChainComplex complex;                                    // the Dehn complex
  std::vector<std::pair<int, int>> provenance_offsets;     // per vertex: (degree, offset) in complex
  std::vector<HomologyGroup> homology;
  std::vector<SSPage> pages;                               // cube spectral sequence of orbit_cube
  bool bottom_row_matches = false;
  bool below_row_vanishes = false;
  std::string message;
  // Coordinates in the Dehn complex of a twisted-model cycle at a vertex.
  SparseVec coordinates(int mask, const SparseVec& orbit_cycle) const;
};
// G must preserve the family; truncate bounds the homotopy-orbit bar degree (≥ d + 2 for H_{d+1}).
DehnComplexData dehn_complex(FamilyPtr fam, const FiniteGroup& g, int truncate = -1, Coeff coeff = Coeff::Zhalf);

// Vertices g_d x0, g_d g_{d-1} x0, ..., g_d⋯g_1 x0, x0.
std::vector<QVec> edge_points(const FiniteGroup& g, const std::vector<int>& tuple, const QVec& x0);
// (∏ det g_i) Σ_σ sgn σ [V_{σ,0} ⊂ ... ⊂ V_{σ,d}] in the chains of F^X; DegenerateConfiguration
// when the vertices do not span X.
SparseVec edge_map(const FlagSpace& f, const FiniteGroup& g, const std::vector<int>& tuple, const QVec& x0);
// Linear extension to a bar chain; configurations that do not span contribute zero.
SparseVec edge_map_chain(const FlagSpace& f, const FiniteGroup& g, const std::map<std::vector<int>, Int>& chain,
                         const QVec& x0);
struct EdgeReport {
  bool ok = false;
  SparseVec dehn_chain;  // in the top degree of the Dehn complex
  bool cycle = false;
  std::string message;
};
// Image of a bar chain at the initial vertex of the Dehn complex, with the cycle check.
EdgeReport edge_to_dehn(const DehnComplexData& data, const std::map<std::vector<int>, Int>& chain, const QVec& x0);

// Random integer cycles of the normalized twisted bar complex in degree `deg` (tuples without identity).
std::vector<std::map<std::vector<int>, Int>> random_bar_cycles(const FiniteGroup& g, int deg, int count,
                                                               unsigned seed);
std::vector<std::map<std::vector<int>, Int>> random_bar_boundaries(const FiniteGroup& g, int deg, int count,
                                                                   unsigned seed);

struct TechReport {
  bool ok = false;
  int trials = 0;
  int staircase_failures = 0;  // ∂^h a_{k+1} ≠ ∂^v a_k
  int identity_failures = 0;   // ∂(Σ(-1)^λ α^λ) ≠ (-1)^d ∂^h α^d - ∂^v α^1
  int literal_identity_holds = 0;  // trials where the +∂^v α^1 form also holds
  int formula_failures = 0;    // ∂^v α^1 not ≡ s·(closed formula) modulo g-translation of horizontal cycles
  int discriminating = 0;      // trials where exactly one of ±formula fits
  int sign = 0;                // s from the discriminating trials, 0 when undetermined
  std::string message;
};
// Symbolic check in the double complex of bar tuples times antisymmetric point symbols.
TechReport tech_identity_check(int d, const FiniteGroup& g, const QVec& x, int trials, unsigned seed);

}  // namespace scissors
