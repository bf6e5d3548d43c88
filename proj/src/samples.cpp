#include "scissors/samples.hpp"

#include <algorithm>
#include <set>

namespace scissors::samples {

namespace {

// Simplicial complex on vertices 0..nv-1 as a pointed simplicial set; simplices are sorted vertex lists.
SimpSet complex_simpset(int nv, const std::set<std::vector<int>>& simplices) {
  SimpSet s("v0");
  std::map<std::vector<int>, int> id{{{0}, 0}};
  for (int v = 1; v < nv; ++v) id[{v}] = s.add(0, "v" + std::to_string(v));
  for (size_t k = 1; k <= 3; ++k)
    for (auto& sx : simplices) {
      if (sx.size() != k + 1) continue;
      std::vector<Simp> faces;
      std::string label;
      for (int v : sx) label += std::to_string(v);
      for (size_t j = 0; j <= k; ++j) {
        auto f = sx;
        f.erase(f.begin() + j);
        faces.push_back(SimpSet::nd(static_cast<int>(k) - 1, id.at(f)));
      }
      id[sx] = s.add(static_cast<int>(k), "s" + label, faces);
    }
  return s;
}

std::set<std::vector<int>> random_complex(std::mt19937& rng, int nv, int budget) {
  std::set<std::vector<int>> out;
  for (int v = 0; v < nv; ++v) out.insert({v});
  std::vector<std::vector<int>> cand;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      cand.push_back({a, b});
      for (int c = b + 1; c < nv; ++c) cand.push_back({a, b, c});
    }
  std::shuffle(cand.begin(), cand.end(), rng);
  std::bernoulli_distribution take(0.45);
  for (auto& c : cand) {
    if (!take(rng)) continue;
    std::set<std::vector<int>> next = out;
    next.insert(c);
    if (c.size() == 3)
      for (int j = 0; j < 3; ++j) {
        auto f = c;
        f.erase(f.begin() + j);
        next.insert(f);
      }
    if (static_cast<int>(next.size()) - 1 > budget) continue;
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<bool>> random_sub(std::mt19937& rng, const SimpSet& x, double p) {
  std::bernoulli_distribution take(p);
  std::vector<std::vector<bool>> seeds(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    seeds[k].assign(x.count(k), false);
    for (int i = 0; i < x.count(k); ++i) seeds[k][i] = take(rng);
  }
  seeds[0][0] = true;
  return subcomplex_closure(x, seeds);
}

}  // namespace

SimpSet random_pointed_simpset(std::mt19937& rng, int max_simplices) {
  std::uniform_int_distribution<int> nvd(2, 5);
  int nv = nvd(rng);
  SimpSet x = complex_simpset(nv, random_complex(rng, nv, max_simplices));
  if (std::bernoulli_distribution(0.5)(rng)) return quotient(x, random_sub(rng, x, 0.3)).space;
  return x;
}

CubeDiagram random_quotient_cube(std::mt19937& rng, int m) {
  int nv = std::uniform_int_distribution<int>(3, 5)(rng);
  auto x = std::make_shared<SimpSet>(complex_simpset(nv, random_complex(rng, nv, 24)));
  std::vector<std::vector<std::vector<bool>>> subs;
  for (int i = 0; i < m; ++i) subs.push_back(random_sub(rng, *x, 0.25));
  std::vector<std::shared_ptr<SimpSet>> q;
  std::vector<std::vector<std::vector<int>>> proj, origin;
  for (int mask = 0; mask < 1 << m; ++mask) {
    std::vector<std::vector<bool>> sub(x->dim() + 1);
    for (int k = 0; k <= x->dim(); ++k) {
      sub[k].assign(x->count(k), false);
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1)
          for (int j = 0; j < x->count(k); ++j)
            if (subs[i][k][j]) sub[k][j] = true;
    }
    sub[0][0] = true;
    auto r = quotient(*x, sub);
    q.push_back(std::make_shared<SimpSet>(r.space));
    std::vector<std::vector<int>> org(r.space.dim() + 1);
    for (int k = 0; k <= r.space.dim(); ++k) org[k].assign(r.space.count(k), -1);
    for (int k = 0; k <= x->dim(); ++k)
      for (int j = 0; j < x->count(k); ++j)
        if (r.projection[k][j] >= 0 && k <= r.space.dim()) org[k][r.projection[k][j]] = j;
    proj.push_back(r.projection);
    origin.push_back(org);
  }
  CubeDiagram c;
  c.m = m;
  for (auto& s : q) c.vertices.push_back(normalized_chains(*s));
  for (int mask = 0; mask < 1 << m; ++mask)
    for (int bit = 0; bit < m; ++bit) {
      if (mask >> bit & 1) continue;
      int to = mask | 1 << bit;
      SimpMap f(q[mask], q[to]);
      for (int k = 0; k <= q[mask]->dim(); ++k)
        for (int i = 0; i < q[mask]->count(k); ++i) {
          int o = origin[mask][k][i];
          int t = o < 0 ? 0 : proj[to][k][o];
          f.set(k, i, o < 0 || t < 0 ? q[to]->base(k) : SimpSet::nd(k, t));
        }
      c.edges[{mask, bit}] = induced_chain_map(f);
    }
  return c;
}

std::pair<FamilyPtr, std::vector<QVec>> random_point_family(std::mt19937& rng, int d) {
  auto x = QuadSpace::spherical(d);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::vector<QVec> pts;
  do {
    pts.assign(d + 1, QVec(d + 1));
    for (auto& p : pts)
      for (auto& v : p) v = coord(rng);
  } while (rank(pts) != d + 1);
  std::vector<Subspace> seeds;
  for (uint32_t s = 1; s + 1 < (1u << (d + 1)); ++s) {
    std::vector<QVec> rows;
    for (int i = 0; i <= d; ++i)
      if (s >> i & 1) rows.push_back(pts[i]);
    seeds.push_back(Subspace::span_auto(rows, x));
  }
  return {std::make_shared<SubspaceFamily>(SubspaceFamily::make(x, seeds)), pts};
}

}  // namespace scissors::samples
