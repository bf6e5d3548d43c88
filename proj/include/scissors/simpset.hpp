#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scissors/error.hpp"
#include "scissors/group.hpp"

namespace scissors {

// An n-simplex in Eilenberg–Zilber normal form: a degeneracy pattern applied to
// the nondegenerate simplex `nd` of degree n - popcount(mask). Bit k of the mask
// is set when vertices k and k+1 coincide.
struct Simp {
  int deg = 0;
  uint32_t mask = 0;
  int nd = 0;
  int nd_deg() const { return deg - std::popcount(mask); }
  bool nondegenerate() const { return mask == 0; }
  auto tie() const { return std::tie(deg, mask, nd); }
  bool operator==(const Simp& o) const { return tie() == o.tie(); }
  bool operator!=(const Simp& o) const { return !(*this == o); }
  bool operator<(const Simp& o) const { return tie() < o.tie(); }
};

// Helpers on degeneracy masks.
std::vector<int> surjection_values(uint32_t mask, int n);
uint32_t mask_from_values(const std::vector<int>& vals);
uint32_t insert_bit(uint32_t mask, int pos, bool value);
uint32_t remove_bit(uint32_t mask, int pos);
// Delete the positions set in `drop` from `mask` (compressing the remaining bits).
uint32_t compress_mask(uint32_t mask, uint32_t drop);
// Degeneracy positions of the composite when a simplex with mask `inner` (over
// its own degree) is further degenerated by `outer`.
uint32_t compose_masks(uint32_t outer, int n, uint32_t inner);

// Finite pointed simplicial set. The basepoint is nondegenerate simplex 0 in degree 0.
class SimpSet {
 public:
  explicit SimpSet(std::string base_label = "*");

  int add(int k, std::string label, std::vector<Simp> faces = {});
  int dim() const { return static_cast<int>(cells_.size()) - 1; }
  int count(int k) const { return k >= 0 && k <= dim() ? static_cast<int>(cells_[k].size()) : 0; }
  // Number of non-basepoint nondegenerate simplices in all degrees.
  int size() const;
  const std::string& label(int k, int i) const { return cells_[k][i].label; }
  const std::vector<Simp>& faces(int k, int i) const { return cells_[k][i].faces; }
  std::optional<int> find(int k, const std::string& label) const;

  static Simp nd(int k, int i) { return Simp{k, 0, i}; }
  Simp base(int n) const;
  bool is_base(const Simp& s) const { return s.nd_deg() == 0 && s.nd == 0; }
  Simp face(const Simp& s, int j) const;
  Simp degen(const Simp& s, int j) const;
  // Restrict to the vertices listed (strictly increasing) by iterated faces.
  Simp restrict_to(const Simp& s, const std::vector<int>& vertices) const;
  // All n-simplices, degenerate ones included.
  std::vector<Simp> simplices(int n, bool include_base = false) const;
  std::string str(const Simp& s) const;

  // Empty optional when all simplicial identities hold; otherwise a witness.
  std::optional<std::string> check() const;

 private:
  struct Cell {
    std::string label;
    std::vector<Simp> faces;
  };
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::map<std::string, int>> by_label_;
};

using SimpSetPtr = std::shared_ptr<const SimpSet>;

// Simplicial map given on nondegenerate simplices; images may be degenerate.
class SimpMap {
 public:
  SimpMap(SimpSetPtr source, SimpSetPtr target);
  void set(int k, int i, Simp image);
  Simp image(int k, int i) const { return images_[k][i]; }
  Simp operator()(const Simp& s) const;
  const SimpSetPtr& source() const { return source_; }
  const SimpSetPtr& target() const { return target_; }
  std::optional<std::string> check() const;
  SimpMap compose_after(const SimpMap& first) const;  // this ∘ first
  static SimpMap identity(SimpSetPtr x);

 private:
  SimpSetPtr source_, target_;
  std::vector<std::vector<Simp>> images_;
};

// Action of a finite group by automorphisms permuting nondegenerate simplices.
class GroupAction {
 public:
  GroupAction(SimpSetPtr space, FiniteGroup group);
  // perm[k][i] = index of g·(k,i)
  void set(int g, std::vector<std::vector<int>> perm);
  Simp act(int g, const Simp& s) const;
  int act_nd(int g, int k, int i) const { return perms_[g][k][i]; }
  const FiniteGroup& group() const { return group_; }
  const SimpSetPtr& space() const { return space_; }
  std::optional<std::string> check() const;
  static GroupAction trivial(SimpSetPtr space, FiniteGroup group);

 private:
  SimpSetPtr space_;
  FiniteGroup group_;
  std::vector<std::vector<std::vector<int>>> perms_;
};

// Incremental construction of a simplicial set whose nondegenerate simplices are
// identified by structured keys.
template <class Key>
class SimpBuilder {
 public:
  explicit SimpBuilder(std::string base_label = "*") : set(std::move(base_label)) {}
  SimpSet set;
  std::vector<std::map<Key, int>> index;
  std::vector<std::vector<Key>> keys;

  std::optional<int> find(int k, const Key& key) const {
    if (k < 0 || k >= static_cast<int>(index.size())) return std::nullopt;
    auto it = index[k].find(key);
    if (it == index[k].end()) return std::nullopt;
    return it->second;
  }
  int add(int k, const Key& key, std::string label, std::vector<Simp> faces) {
    if (static_cast<int>(index.size()) <= k) index.resize(k + 1), keys.resize(k + 1);
    if (k == 0 && keys[0].empty()) keys[0].push_back(Key{});  // basepoint slot
    int id = set.add(k, std::move(label), std::move(faces));
    index[k][key] = id;
    if (static_cast<int>(keys[k].size()) <= id) keys[k].resize(id + 1);
    keys[k][id] = key;
    return id;
  }
  // Simplex of degree n with degeneracy mask over the nondegenerate key.
  Simp ref(int n, uint32_t mask, const Key& key) const {
    int k = n - std::popcount(mask);
    auto id = find(k, key);
    if (!id) throw Error("BuildError", "missing nondegenerate simplex while building");
    return Simp{n, mask, *id};
  }
};

// Constructions.
SimpSet point();
SimpSet sphere0();
SimpSet circle_S1();
SimpSet circle_Ssigma();
// Δ^n/∂Δ^n.
SimpSet sphere_simplex_model(int n);
GroupAction ssigma_action(SimpSetPtr ssigma);
// Any group acting on S^σ through its ±1 character.
GroupAction ssigma_action(SimpSetPtr ssigma, const FiniteGroup& g);
// n-simplex of S¹ / S^σ with table label ε·i (i in 1..n), and back.
Simp circle_simplex(int n, int i);
// (sign, i): i = 0 for the basepoint, i = -1 for ⊛ (S^σ only).
std::pair<int, int> circle_label(const SimpSet& circle, const Simp& s);
// Inverse of circle_label on S^σ.
Simp ssigma_simplex(int n, int sign, int i);

struct SmashResult {
  SimpSet space;
  // nondegenerate simplex (k, i) of the smash -> its two coordinates
  std::vector<std::vector<std::pair<Simp, Simp>>> coords;
  std::map<std::pair<Simp, Simp>, int> index_of;  // keyed by nondegenerate pair, any degree
  Simp pair(const SimpSet& x, const SimpSet& y, Simp a, Simp b) const;
};
SmashResult smash(const SimpSet& x, const SimpSet& y);

// f ∧ g between smash products.
SimpMap smash_maps(SimpSetPtr source, const SmashResult& src, SimpSetPtr target, const SmashResult& dst,
                   const SimpMap& f, const SimpMap& g);

// Smash product of several factors; simplices are tuples of factor simplices.
struct MultiSmash {
  std::vector<SimpSetPtr> factors;
  SimpSet space;
  std::vector<std::vector<std::vector<Simp>>> coords;  // nondegenerate (k, i) -> factor simplices
  std::map<std::vector<Simp>, int> index_of;
  Simp tuple(const std::vector<Simp>& parts) const;
};
MultiSmash smash_many(std::vector<SimpSetPtr> factors);

struct JoinResult {
  SimpSet space;
  std::vector<std::vector<std::pair<Simp, Simp>>> coords;  // nondegenerate factor simplices
  std::map<std::pair<Simp, Simp>, int> index_of;
  // Simplex of the join for (possibly degenerate) factor simplices.
  Simp pair(const SimpSet& x, const SimpSet& y, const Simp& a, const Simp& b) const;
};
JoinResult reduced_join(const SimpSet& x, const SimpSet& y);

struct WedgeResult {
  SimpSet space;
  std::vector<std::vector<std::vector<int>>> inclusion;  // [summand][k][i] -> index
};
WedgeResult wedge(const std::vector<const SimpSet*>& parts);

struct QuotientResult {
  SimpSet space;
  std::vector<std::vector<int>> projection;  // [k][i] -> index, -1 for collapsed
};
// `sub[k][i]` marks the nondegenerate simplices of the subcomplex.
QuotientResult quotient(const SimpSet& x, const std::vector<std::vector<bool>>& sub);
std::vector<std::vector<bool>> subcomplex_closure(const SimpSet& x, const std::vector<std::vector<bool>>& seeds);

struct SubdivisionResult {
  SimpSet space;
  // nondegenerate (n, id) -> (nondegenerate simplex x of X, strictly increasing
  // chain of vertex subsets of x ending with all of its vertices)
  std::vector<std::vector<std::pair<Simp, std::vector<uint32_t>>>> cells;
};
// Barycentric subdivision: the colimit of subdivided simplices over the simplices of X.
SubdivisionResult subdivide(const SimpSet& x, int max_degree = -1);

SimpMap smash_to_join(SimpSetPtr source, SimpSetPtr target, const SimpSet& x, const SimpSet& y,
                      const SmashResult& s1_xy, const SmashResult& xy, const JoinResult& join);
// Convenience: builds all spaces involved.
struct SmashToJoin {
  SimpSetPtr x, y, s1, smash_xy, source, target;
  std::shared_ptr<SmashResult> xy_data, s1_data;
  std::shared_ptr<JoinResult> join_data;
  std::shared_ptr<SimpMap> map;
};
SmashToJoin build_smash_to_join(SimpSetPtr x, SimpSetPtr y);

struct Gamma {
  SimpSetPtr source, target;
  std::shared_ptr<SimpMap> map;
};
Gamma gamma_map();

SimpSet homotopy_orbits(const GroupAction& action, int max_degree);

// Finite group-equivariance helpers.
GroupAction smash_action(SimpSetPtr smash_space, const SmashResult& data, const GroupAction& left,
                         const GroupAction& right, const FiniteGroup& group);

struct ReduceOrbitsResult {
  std::vector<int> subgroup;  // elements of G preserving Y
  FiniteGroup h;
  SimpSet orbits;
};
// Checks conditions (1),(2) for Y ⊆ X and returns Y_{hH}.
ReduceOrbitsResult reduce_orbits(const GroupAction& action, const std::vector<std::vector<bool>>& sub,
                                 int max_degree);

}  // namespace scissors
