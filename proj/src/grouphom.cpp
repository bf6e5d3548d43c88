#include "scissors/grouphom.hpp"

#include <functional>

namespace scissors {

std::optional<std::string> ChainAction::check(const ChainComplex& c) const {
  if (static_cast<int>(maps.size()) != group.order()) return "one chain map per group element required";
  for (int g = 0; g < group.order(); ++g)
    if (auto msg = check_chain_map(c, c, maps[g])) return group.label(g) + ": " + *msg;
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b)
      for (int n = 0; n <= c.top(); ++n)
        for (int j = 0; j < c.rank(n); ++j) {
          SparseVec x{{j, 1}};
          if (maps[a].apply(n, maps[b].apply(n, x)) != maps[group.mul(a, b)].apply(n, x))
            return "action is not multiplicative";
        }
  return std::nullopt;
}

ChainAction chain_action(const GroupAction& a, int max_degree) {
  const SimpSet& x = *a.space();
  int top = x.dim();
  if (max_degree >= 0) top = std::min(top, max_degree);
  ChainAction out{a.group(), {}};
  for (int g = 0; g < a.group().order(); ++g) {
    ChainMap m;
    for (int n = 0; n <= top; ++n) {
      int r = x.count(n) - (n == 0 ? 1 : 0);
      SparseMatrix s(r, r);
      for (int i = (n == 0 ? 1 : 0); i < x.count(n); ++i) {
        int src = chain_index(x, SimpSet::nd(n, i));
        int dst = chain_index(x, SimpSet::nd(n, a.act_nd(g, n, i)));
        s.add(dst, src, 1);
      }
      m.f.push_back(std::move(s));
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

ChainAction character_action(const FiniteGroup& g, const std::vector<int>& character) {
  std::vector<IntMat> rho;
  for (int a = 0; a < g.order(); ++a) rho.push_back(IntMat{{Int(character.empty() ? 1 : character[a])}});
  return module_action(g, rho);
}

ChainAction module_action(const FiniteGroup& g, const std::vector<IntMat>& rho) {
  ChainAction out{g, {}};
  for (int a = 0; a < g.order(); ++a) {
    int r = static_cast<int>(rho[a].size());
    ChainMap m;
    m.f.push_back(r ? SparseMatrix::from_dense(rho[a]) : SparseMatrix(0, 0));
    out.maps.push_back(std::move(m));
  }
  return out;
}

int OrbitComplex::find(int n, const OrbitGenerator& g) const {
  if (n < 0 || n >= static_cast<int>(index.size())) return -1;
  auto it = index[n].find(g);
  return it == index[n].end() ? -1 : it->second;
}

namespace {

void for_each_tuple(int q, int order, int identity, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(q, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == q) {
      fn(t);
      return;
    }
    for (int a = 0; a < order; ++a) {
      if (a == identity) continue;
      t[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

OrbitComplex orbit_chains(const ChainComplex& c, const ChainAction& a, int max_degree) {
  const FiniteGroup& g = a.group;
  int e = g.identity();
  OrbitComplex oc;
  oc.gens.resize(max_degree + 1);
  oc.index.resize(max_degree + 1);
  std::vector<int> ranks(max_degree + 1, 0);
  for (int n = 0; n <= max_degree; ++n)
    for (int q = 0; q <= n; ++q) {
      int p = n - q;
      if (p > c.top() || c.rank(p) == 0) continue;
      for_each_tuple(q, g.order(), e, [&](const std::vector<int>& t) {
        for (int x = 0; x < c.rank(p); ++x) {
          OrbitGenerator gen{t, p, x};
          oc.index[n][gen] = static_cast<int>(oc.gens[n].size());
          oc.gens[n].push_back(gen);
        }
      });
      ranks[n] = static_cast<int>(oc.gens[n].size());
    }
  oc.complex = ChainComplex(ranks);
  for (int n = 0; n <= max_degree; ++n) {
    auto& labels = oc.complex.labels(n);
    for (auto& gen : oc.gens[n]) {
      std::string s = "(";
      for (size_t k = 0; k < gen.tuple.size(); ++k) s += (k ? "," : "") + g.label(gen.tuple[k]);
      labels.push_back(s + ";" + c.label(gen.p, gen.x) + ")");
    }
    if (n == 0) continue;
    auto& d = oc.complex.d_mut(n);
    for (size_t col = 0; col < oc.gens[n].size(); ++col) {
      const auto& gen = oc.gens[n][col];
      int q = static_cast<int>(gen.tuple.size());
      auto put = [&](const std::vector<int>& t, int p, int x, const Int& v) {
        d.add(oc.index[n - 1].at(OrbitGenerator{t, p, x}), static_cast<int>(col), v);
      };
      if (q >= 1) {
        std::vector<int> rest(gen.tuple.begin() + 1, gen.tuple.end());
        for (auto& [y, v] : a.maps[gen.tuple[0]].f[gen.p].col[gen.x]) put(rest, gen.p, y, v);
        for (int l = 1; l < q; ++l) {
          int merged = g.mul(gen.tuple[l], gen.tuple[l - 1]);
          if (merged == e) continue;
          std::vector<int> t = gen.tuple;
          t[l - 1] = merged;
          t.erase(t.begin() + l);
          put(t, gen.p, gen.x, l % 2 ? -1 : 1);
        }
        std::vector<int> front(gen.tuple.begin(), gen.tuple.end() - 1);
        put(front, gen.p, gen.x, q % 2 ? -1 : 1);
      }
      if (gen.p >= 1)
        for (auto& [y, v] : c.d(gen.p).col[gen.x]) put(gen.tuple, gen.p - 1, y, q % 2 ? -v : v);
    }
  }
  return oc;
}

ChainMap orbit_map(const OrbitComplex& src, const OrbitComplex& dst, const ChainMap& f, int max_degree) {
  ChainMap m;
  for (int n = 0; n <= max_degree; ++n) {
    SparseMatrix s(dst.complex.rank(n), src.complex.rank(n));
    for (size_t col = 0; col < src.gens[n].size(); ++col) {
      const auto& gen = src.gens[n][col];
      if (gen.p >= static_cast<int>(f.f.size())) continue;
      for (auto& [y, v] : f.f[gen.p].col[gen.x]) {
        int r = dst.find(n, OrbitGenerator{gen.tuple, gen.p, y});
        if (r < 0) throw Error("BuildError", "orbit map target generator missing");
        s.add(r, static_cast<int>(col), v);
      }
    }
    m.f.push_back(std::move(s));
  }
  return m;
}

ChainComplex bar_complex(const FiniteGroup& g, const std::vector<int>& twist, int max_degree) {
  return orbit_chains(ChainComplex({1}), character_action(g, twist), max_degree).complex;
}

std::vector<HomologyGroup> group_homology(const FiniteGroup& g, const std::vector<int>& twist, Coeff coeff,
                                          int max_degree) {
  return homology(bar_complex(g, twist, max_degree), coeff, max_degree - 1);
}

std::vector<IntMat> homology_action(const ChainComplex& c, const ChainAction& a, int n) {
  HomologyBasis hb(c, n);
  std::vector<IntMat> out;
  for (int g = 0; g < a.group.order(); ++g) out.push_back(free_part(induced_homology(hb, hb, a.maps[g]), hb, hb));
  return out;
}

HossReport hoss_check(const GroupAction& a, int max_degree, Coeff coeff) {
  HossReport r;
  ChainComplex cx = normalized_chains(*a.space());
  auto hx = nonzero(homology(cx, Coeff::Z));
  if (hx.size() > 1) {
    r.message = "homology is not concentrated in one degree";
    return r;
  }
  ChainAction act = chain_action(a);
  auto orbits = orbit_chains(cx, act, max_degree);
  r.orbits = homology(orbits.complex, coeff, max_degree - 1);
  if (hx.empty()) {
    r.concentrated_degree = -1;
    r.predicted.assign(r.orbits.size(), HomologyGroup{});
    for (size_t i = 0; i < r.predicted.size(); ++i) r.predicted[i].degree = static_cast<int>(i);
  } else {
    int n = hx[0].degree;
    r.concentrated_degree = n;
    if (!hx[0].torsion.empty()) {
      r.message = "concentrated homology has torsion; prediction needs a free module";
      return r;
    }
    auto rho = homology_action(cx, act, n);
    int top = max_degree - n;
    std::vector<HomologyGroup> gh;
    if (top >= 1) {
      auto bar = orbit_chains(ChainComplex({hx[0].rank}), module_action(a.group(), rho), top);
      gh = homology(bar.complex, coeff, top - 1);
    }
    for (int i = 0; i < max_degree; ++i) {
      HomologyGroup g;
      g.degree = i;
      if (i - n >= 0 && i - n < static_cast<int>(gh.size())) {
        g.rank = gh[i - n].rank;
        g.torsion = gh[i - n].torsion;
      }
      r.predicted.push_back(g);
    }
  }
  r.ok = r.orbits == r.predicted;
  if (!r.ok && r.message.empty()) r.message = "orbit homology differs from the group homology prediction";
  return r;
}

}  // namespace scissors
