#include "scissors/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "scissors/classical.hpp"
#include "scissors/dehncube.hpp"
#include "scissors/grouphom.hpp"
#include "scissors/samples.hpp"

namespace scissors {

namespace {

using namespace samples;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

FamilyPtr circle4() { return circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}}); }

std::string groups_str(const std::vector<HomologyGroup>& h) {
  std::string s;
  for (auto& g : h) s += (s.empty() ? "" : ", ") + g.str();
  return s.empty() ? "0" : s;
}

void cube_vs_tetrahedron(Outcome& o) {
  ReducePolicy p;
  p.bits = 200;
  p.coefficient_bound = 1e6;
  p.residual_bits = 100;
  PrecisionScope ps(p.bits);
  auto cube = dehn_classical(unit_cube(), p);
  o.require(cube.zero(), "cube reduces to " + cube.str());
  Polytope tet;
  tet.add(regular_tetrahedron());
  auto t = dehn_classical(tet, p);
  Real theta = acos(Real(1) / 3), tol = Real(2) / pow(Real(2), p.residual_bits);
  bool canonical = t.terms.size() == 1 && abs(t.terms[0].first - 6) < tol && abs(t.terms[0].second - theta) < tol;
  o.require(canonical, "tetrahedron reduces to " + t.str());
  bool certified = t.heuristic && t.certificates.size() == 2 && t.certificates[1].independent &&
                   t.certificates[1].norm_bound > p.coefficient_bound;
  o.require(certified, "no non-relation certificate for arccos(1/3) against pi");
  if (o.pass) o.detail << "cube 0, tetrahedron " << t.str(12) << ", relation norm > " << real_str(t.certificates[1].norm_bound, 6);
}

void smash_to_join_pairs(Outcome& o) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int t = 0; t < 25; ++t) {
    auto x = std::make_shared<SimpSet>(random_pointed_simpset(rng));
    auto y = std::make_shared<SimpSet>(random_pointed_simpset(rng));
    auto m = build_smash_to_join(x, y);
    if (auto bad = m.map->check()) {
      o.require(false, "pair " + std::to_string(t) + " map is not simplicial: " + *bad);
      continue;
    }
    auto c = induced_chain_map(*m.map);
    o.require(is_quasi_iso(normalized_chains(*m.source), normalized_chains(*m.target), c),
              "pair " + std::to_string(t) + " is not a homology isomorphism");
    ++checked;
  }
  if (o.pass) o.detail << checked << " pairs are homology isomorphisms";
}

void gamma_degree(Outcome& o) {
  auto g = gamma_map();
  o.require(!g.map->check(), "gamma is not simplicial");
  auto cs = normalized_chains(*g.source), ct = normalized_chains(*g.target);
  HomologyBasis hs(cs, 2), ht(ct, 2);
  auto f = induced_homology(hs, ht, induced_chain_map(*g.map));
  bool two = f.size() == 1 && f[0].size() == 1 && abs(f[0][0]) == 2;
  o.require(two, "H_2 map is not ±2");
  if (two) o.detail << "H_2 map is multiplication by " << f[0][0].get_str();
}

void subcube_cofiber_fixtures(Outcome& o) {
  int checked = 0;
  for (auto fam : {circle4(), coordinate_family(2), diagonal_family(), coordinate_family(3)}) {
    int d = fam->geometry()->dim();
    for (int mask = 1; mask < 1 << d; ++mask) {
      std::vector<int> dims;
      for (int k = 0; k < d; ++k)
        if (mask >> k & 1) dims.push_back(k);
      auto r = subcube_cofiber_check(fam, dims);
      std::string name = "d=" + std::to_string(d) + " I mask " + std::to_string(mask);
      o.require(r.bijective, name + " not simplexwise bijective");
      o.require(r.ok, name + ": " + r.message);
      ++checked;
    }
  }
  if (o.pass) o.detail << checked << " sub-cubes match the shifted N_I homology";
}

void hat_cube_fixtures(Outcome& o) {
  int checked = 0;
  for (auto fam : {circle4(), coordinate_family(1), coordinate_family(2), diagonal_family()}) {
    auto r = verify_Zid(fam);
    o.require(r.ok, "d=" + std::to_string(fam->geometry()->dim()) + ": " + groups_str(r.homology) + " " + r.message);
    ++checked;
  }
  if (o.pass) o.detail << checked << " families give Z in degree d+1 only";
}

void twisted_group_homology(Outcome& o) {
  auto g = FiniteGroup::z2_sign();
  auto hz = group_homology(g, g.character(), Coeff::Z, 7);
  for (int i = 0; i <= 6; ++i) {
    bool want_z2 = i % 2 == 0;
    bool ok = hz[i].rank == 0 && hz[i].torsion == (want_z2 ? std::vector<Int>{2} : std::vector<Int>{});
    o.require(ok, "H_" + std::to_string(i) + " = " + hz[i].str());
  }
  for (auto& h : group_homology(g, g.character(), Coeff::Zhalf, 7))
    o.require(h.zero(), "over Z[1/2] H_" + std::to_string(h.degree) + " = " + h.str());
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  auto orbits = homology(normalized_chains(homotopy_orbits(ssigma_action(ss), 8)), Coeff::Z, 7);
  for (int i = 0; i <= 6; ++i) {
    bool ok = orbits[i + 1].rank == hz[i].rank && orbits[i + 1].torsion == hz[i].torsion;
    o.require(ok, "orbit H_" + std::to_string(i + 1) + " = " + orbits[i + 1].str());
  }
  if (o.pass) o.detail << "Z/2 in even degrees 0..6, 0 in odd, 0 over Z[1/2], orbit homology shifted by one agrees";
}

void staircase_identity(Outcome& o) {
  struct Case {
    int d;
    FiniteGroup g;
    QVec x;
  };
  std::vector<Case> cases{{1, square_group(2), {2, 1}},
                          {1, hexagonal_dihedral(), {1, 0}},
                          {2, square_group(3), {2, 1, 1}},
                          {2, s3_sign(), {3, 2, 1}}};
  std::ostringstream summary;
  for (auto& c : cases) {
    auto r = tech_identity_check(c.d, c.g, c.x, 20, 17);
    std::string name = "d=" + std::to_string(c.d) + " order " + std::to_string(c.g.order());
    o.require(r.staircase_failures == 0, name + " staircase fails");
    o.require(r.identity_failures == 0, name + " signed identity fails");
    o.require(r.literal_identity_holds == r.trials,
              name + " literal identity holds in " + std::to_string(r.literal_identity_holds) + "/" +
                  std::to_string(r.trials) + " trials, the sign of the vertical term is reversed");
    o.require(r.formula_failures == 0, name + " closed formula fails in " + std::to_string(r.formula_failures) + " trials");
    o.require(r.sign != 0, name + " closed formula sign undetermined (no discriminating trial)");
    summary << " [" << name << ": sign " << r.sign << ", discriminating " << r.discriminating << "]";
  }
  o.detail << (o.pass ? "" : ";") << summary.str();
}

void flag_class_cycles(Outcome& o) {
  std::mt19937 rng(99);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    int d = 1 + t % 3;
    auto [fam, pts] = random_point_family(rng, d);
    auto sf = smash_ssigma(build_F(fam));
    auto cls = simplex_class(sf, pts);
    auto cc = normalized_chains(*sf.space);
    o.require(!cls.empty() && cc.boundary(d + 1, cls).empty(), "tuple " + std::to_string(t) + " is not a cycle");
    ++checked;
  }
  if (o.pass) o.detail << checked << " classes are nonzero cycles";
}

void cube_spectral_sequence(Outcome& o) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto cube = random_quotient_cube(rng, 1 + t % 3);
    if (auto bad = cube.check()) {
      o.require(false, "cube " + std::to_string(t) + ": " + *bad);
      continue;
    }
    auto pages = cube_ss(cube, Coeff::Z);
    auto tot = homology(total_complex(cube), Coeff::Z);
    for (auto& h : tot) {
      std::vector<HomologyGroup> graded;
      for (auto& [pq, e] : pages.back().entries)
        if (pq.first + pq.second == h.degree) graded.push_back(e);
      o.require(summarize(graded) == summarize({h}),
                "cube " + std::to_string(t) + " degree " + std::to_string(h.degree) + ": E-infinity differs from " + h.str());
    }
  }
  QMat a = identity_matrix(4), b = identity_matrix(4);
  a[0][0] = -1;
  b[1][1] = -1;
  auto r = dehn_complex(coordinate_family(3), FiniteGroup::generated_by({a, b}));
  o.require(r.bottom_row_matches, "d=3 E1 bottom row differs from the Dehn complex: " + r.message);
  o.require(r.below_row_vanishes, "d=3 rows below d+1 do not vanish: " + r.message);
  if (o.pass) o.detail << "20 cubes agree; d=3 bottom row matches the Dehn complex";
}

void edge_map_and_scaling(Outcome& o) {
  auto g = square_group(2);
  auto fam = circle_points({{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {-1, 2}, {2, -1}});
  auto data = dehn_complex(fam, g);
  QVec x0{2, 1};
  int cycles = 0, nonzero = 0, reflections = 0;
  for (auto& z : random_bar_cycles(g, 1, 10, 31)) {
    auto r = edge_to_dehn(data, z, x0);
    o.require(r.ok && r.cycle, "edge image is not a cycle: " + r.message);
    cycles += r.cycle;
    nonzero += !r.dehn_chain.empty();
  }
  for (int e = 0; e < g.order(); ++e)
    if (g.det(e) < 0) reflections += !edge_to_dehn(data, {{{e}, 1}}, x0).dehn_chain.empty();
  o.require(reflections > 0, "edge map vanishes on every single tuple");
  auto f = compare_f_A(coordinate_family(1), IndexObject{0, {1}});
  o.require(f.ok, "compare_f_A: " + f.message);
  for (auto& s : f.summands) {
    bool two = s.matrix.size() == 1 && s.matrix[0].size() == 1 && abs(s.matrix[0][0]) == 2;
    o.require(two, "f_A summand is not ±2");
  }
  if (o.pass)
    o.detail << cycles << " edge images are cycles (" << nonzero << " nonzero, cycles of a finite group are torsion); "
             << reflections << " reflection tuples map to nonzero chains; f_A is ±2 on " << f.summands.size()
             << " summands";
}

struct Criterion {
  const char* name;
  double limit;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"cube/tetrahedron separation", 5, cube_vs_tetrahedron},
      {"smash-to-join equivalences", 60, smash_to_join_pairs},
      {"gamma has degree 2", 1, gamma_degree},
      {"sub-cube total cofibers", 120, subcube_cofiber_fixtures},
      {"hat cube is Z in degree d+1", 60, hat_cube_fixtures},
      {"twisted group homology of Z/2", 10, twisted_group_homology},
      {"staircase identity and closed formula", 120, staircase_identity},
      {"flag classes are cycles", 30, flag_class_cycles},
      {"cube spectral sequence consistency", 180, cube_spectral_sequence},
      {"edge map and f_A scaling", 60, edge_map_and_scaling},
  };
  return all;
}

}  // namespace

CriterionResult run_criterion(int id) {
  auto& all = criteria();
  if (id < 1 || id > static_cast<int>(all.size())) throw Error("UsageError", "no criterion " + std::to_string(id));
  auto& c = all[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  r.limit = c.limit;
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > r.limit) o.require(false, "took longer than the time limit");
  r.pass = o.pass;
  r.detail = o.detail.str();
  return r;
}

std::vector<int> criteria_for_level(const std::string& level) {
  if (level == "fast") return {1, 2, 3, 6};
  if (level == "full") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw Error("UsageError", "unknown selftest level '" + level + "', expected fast or full");
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %-40s %7.2fs / %.0fs  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.limit);
  return head + r.detail;
}

}  // namespace scissors
