#pragma once

#include <map>
#include <string>
#include <vector>

#include "scissors/chain.hpp"
#include "scissors/group.hpp"
#include "scissors/simpset.hpp"

namespace scissors {

// A finite group acting on a chain complex by chain automorphisms.
struct ChainAction {
  FiniteGroup group;
  std::vector<ChainMap> maps;  // maps[g]
  std::optional<std::string> check(const ChainComplex& c) const;
};
// Induced action on normalized chains.
ChainAction chain_action(const GroupAction& a, int max_degree = -1);
// ℤ in degree 0 acted on through a ±1 character.
ChainAction character_action(const FiniteGroup& g, const std::vector<int>& character);
// ℤ^r in degree 0 with the given matrices.
ChainAction module_action(const FiniteGroup& g, const std::vector<IntMat>& rho);

struct OrbitGenerator {
  std::vector<int> tuple;  // no identity entries
  int p = 0;               // degree in the coefficient complex
  int x = 0;               // generator of the coefficient complex
  bool operator<(const OrbitGenerator& o) const { return std::tie(tuple, p, x) < std::tie(o.tuple, o.p, o.x); }
};

// Total complex of normalized bar chains with coefficients in C:
// ∂(g1..gq; x) = (g2..gq; g1·x) + Σ (-1)^l (.., g_{l+1} g_l, ..; x) + (-1)^q (g1..g_{q-1}; x) + (-1)^q (g; ∂x).
// Built through total degree max_degree; homology is valid below it.
struct OrbitComplex {
  ChainComplex complex;
  std::vector<std::vector<OrbitGenerator>> gens;
  std::vector<std::map<OrbitGenerator, int>> index;
  int find(int n, const OrbitGenerator& g) const;
};
OrbitComplex orbit_chains(const ChainComplex& c, const ChainAction& a, int max_degree);
// Chain map of orbit complexes induced by an equivariant chain map.
ChainMap orbit_map(const OrbitComplex& src, const OrbitComplex& dst, const ChainMap& f, int max_degree);

// Twisted bar complex of G with ℤ coefficients through the character.
ChainComplex bar_complex(const FiniteGroup& g, const std::vector<int>& twist, int max_degree);
// Degrees 0 .. max_degree - 1.
std::vector<HomologyGroup> group_homology(const FiniteGroup& g, const std::vector<int>& twist, Coeff coeff,
                                          int max_degree);

struct HossReport {
  bool ok = false;
  int concentrated_degree = -1;
  std::vector<HomologyGroup> orbits;     // H̃_i(X_hG), i < N
  std::vector<HomologyGroup> predicted;  // H_{i-n}(G; H̃_n X)
  std::string message;
};
HossReport hoss_check(const GroupAction& a, int max_degree, Coeff coeff = Coeff::Z);

// Action of each group element on H_n as integer matrices (free part only).
std::vector<IntMat> homology_action(const ChainComplex& c, const ChainAction& a, int n);

}  // namespace scissors
