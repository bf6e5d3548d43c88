#include "scissors/building.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace scissors {

// ---------------------------------------------------------------------------
// families

namespace {

std::vector<Subspace> closure_step(const std::vector<Subspace>& cur, const std::vector<std::string>& ops) {
  std::set<Subspace> out(cur.begin(), cur.end());
  auto has = [&](const std::string& op) { return std::find(ops.begin(), ops.end(), op) != ops.end(); };
  int top = cur.empty() ? 0 : cur[0].ambient()->linear_dim();
  for (size_t a = 0; a < cur.size(); ++a) {
    if (has("perp") && cur[a].linear_dim() < top) out.insert(orth_complement(cur[a]));
    for (size_t b = 0; b < cur.size(); ++b) {
      if (a == b) continue;
      if (has("project") && cur[b].contains(cur[a])) out.insert(project(cur[a], cur[b]));
      if (has("perp_sum") && a < b && orthogonal(cur[a], cur[b])) out.insert(direct_sum(cur[a], cur[b]));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

SubspaceFamily SubspaceFamily::make(QuadSpacePtr geometry, std::vector<Subspace> seeds,
                                    std::vector<std::string> closure_ops, int max_rounds) {
  for (auto& op : closure_ops)
    if (op != "perp" && op != "project" && op != "perp_sum") throw Error("ParseError", "unknown closure op " + op);
  std::set<Subspace> init;
  for (auto& s : seeds) {
    if (s.empty()) throw Error("DegenerateSpan", "empty subspace in family");
    init.insert(s);
  }
  init.insert(Subspace::whole(geometry));
  std::vector<Subspace> cur(init.begin(), init.end());
  bool closed = closure_ops.empty();
  for (int round = 0; round < max_rounds && !closed; ++round) {
    auto next = closure_step(cur, closure_ops);
    closed = next.size() == cur.size();
    cur = std::move(next);
  }
  if (!closed && closure_step(cur, closure_ops).size() != cur.size())
    throw Error("ClosureFailure", "family did not close within " + std::to_string(max_rounds) + " rounds");
  SubspaceFamily f;
  f.geometry_ = std::move(geometry);
  f.members_ = std::move(cur);
  f.ops_ = std::move(closure_ops);
  f.whole_ = f.find(Subspace::whole(f.geometry_));
  for (int u = 0; u < f.size(); ++u) f.names_.push_back(u == f.whole_ ? "X" : "u" + std::to_string(u));
  f.contains_.assign(f.size(), std::vector<bool>(f.size(), false));
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < f.size(); ++b)
      f.contains_[a][b] = f.members_[a].linear_dim() >= f.members_[b].linear_dim() && f.members_[a].contains(f.members_[b]);
  return f;
}

int SubspaceFamily::find(const Subspace& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  return it != members_.end() && *it == s ? static_cast<int>(it - members_.begin()) : -1;
}

int SubspaceFamily::require(const Subspace& s, const std::string& what) const {
  int u = find(s);
  if (u < 0) throw Error("ClosureMissing", what + " " + s.str() + " is not in the family");
  return u;
}

int SubspaceFamily::perp(int u) const { return require(orth_complement(members_[u]), "orthogonal complement"); }

int SubspaceFamily::project(int u, int v) const {
  return require(scissors::project(members_[u], members_[v]), "projection");
}

bool SubspaceFamily::allowed_in(int top, int u) const {
  return contains_[top][u] && members_[u].n_minus() == members_[top].n_minus();
}

std::vector<int> SubspaceFamily::permutation(const QMat& m) const {
  std::vector<int> p(size());
  for (int u = 0; u < size(); ++u) {
    int v = find(apply(m, members_[u]));
    if (v < 0) throw Error("NotPreserved", "isometry does not preserve the family");
    p[u] = v;
  }
  return p;
}

std::optional<std::string> SubspaceFamily::check() const {
  if (whole_ < 0) return "whole space missing";
  for (auto& s : closure_step(members_, ops_))
    if (find(s) < 0) return "closure fails at " + s.str();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// flag spaces

int FlagSpace::find_decomp(const Decomposition& d) const {
  auto it = std::find(decomps.begin(), decomps.end(), d);
  return it == decomps.end() ? -1 : static_cast<int>(it - decomps.begin());
}

int FlagSpace::factor_of(int decomp, int u) const {
  const auto& d = decomps[decomp];
  for (size_t k = 0; k < d.size(); ++k)
    if (fam->allowed_in(d[k], u)) return static_cast<int>(k);
  return -1;
}

namespace {

// Drops consecutive repeats; bit k of the mask marks seq[k] == seq[k+1].
std::pair<std::vector<int>, uint32_t> compress_repeats(const std::vector<int>& seq) {
  std::vector<int> nd;
  uint32_t mask = 0;
  for (size_t k = 0; k < seq.size(); ++k) {
    if (k > 0 && seq[k] == seq[k - 1])
      mask |= 1u << (k - 1);
    else
      nd.push_back(seq[k]);
  }
  return {nd, mask};
}

std::vector<int> expand(const std::vector<int>& nd, const Simp& s) {
  auto vals = surjection_values(s.mask, s.deg);
  std::vector<int> out;
  for (int v : vals) out.push_back(nd[v]);
  return out;
}

}  // namespace

Simp FlagSpace::simplex(int decomp, const std::vector<int>& seq) const {
  int n = static_cast<int>(seq.size()) - 1;
  const auto& d = decomps.at(decomp);
  int prev_factor = -1;
  std::vector<int> last(d.size(), -1);
  for (size_t k = 0; k < seq.size(); ++k) {
    int f = factor_of(decomp, seq[k]);
    if (f < 0 || f < prev_factor) throw Error("BuildError", "sequence does not fit its decomposition");
    if (f == prev_factor && !fam->contains(seq[k], seq[k - 1])) throw Error("BuildError", "sequence is not nested");
    prev_factor = f;
    last[f] = seq[k];
  }
  for (size_t f = 0; f < d.size(); ++f)
    if (last[f] != d[f]) return space->base(n);
  auto [nd, mask] = compress_repeats(seq);
  auto it = index.find({decomp, nd});
  if (it == index.end()) throw Error("BuildError", "flag " + str(decomp, nd) + " missing");
  return Simp{n, mask, it->second};
}

std::pair<int, std::vector<int>> FlagSpace::sequence(const Simp& s) const {
  if (space->is_base(s)) return {-1, {}};
  const auto& c = cells[s.nd_deg()][s.nd];
  return {c.first, expand(c.second, s)};
}

GroupAction FlagSpace::action(const FiniteGroup& g) const {
  if (!g.has_matrices()) throw Error("BuildError", "group has no matrices");
  GroupAction a(space, g);
  for (int e = 0; e < g.order(); ++e) {
    auto p = fam->permutation(g.matrix(e));
    std::vector<std::vector<int>> perm(space->dim() + 1);
    for (int k = 0; k <= space->dim(); ++k) {
      perm[k].resize(space->count(k), 0);
      for (int i = 0; i < space->count(k); ++i) {
        if (k == 0 && i == 0) continue;
        auto [dc, seq] = cells[k][i];
        Decomposition nd;
        for (int u : decomps[dc]) nd.push_back(p[u]);
        int ndc = find_decomp(nd);
        if (ndc < 0) throw Error("NotPreserved", "decompositions are not permuted by the group");
        for (int& u : seq) u = p[u];
        perm[k][i] = index.at({ndc, seq});
      }
    }
    a.set(e, std::move(perm));
  }
  return a;
}

std::string FlagSpace::str(int decomp, const std::vector<int>& seq) const {
  std::string s = "[";
  int prev = -1;
  for (size_t k = 0; k < seq.size(); ++k) {
    int f = factor_of(decomp, seq[k]);
    if (k) s += f != prev ? "|" : "<";
    s += fam->name(seq[k]);
    prev = f;
  }
  return s + "]";
}

namespace {

// Strictly increasing chains of allowed members ending at top.
std::vector<std::vector<int>> chains_to(const SubspaceFamily& fam, int top, const std::vector<int>& excluded) {
  auto ok = [&](int u) { return std::find(excluded.begin(), excluded.end(), fam.dim(u)) == excluded.end(); };
  std::vector<std::vector<int>> out;
  if (!ok(top)) return out;
  std::vector<int> cur{top};
  std::function<void()> rec = [&]() {
    out.push_back(cur);
    int first = cur.front();
    for (int u = 0; u < fam.size(); ++u)
      if (u != first && fam.allowed_in(first, u) && ok(u)) {
        cur.insert(cur.begin(), u);
        rec();
        cur.erase(cur.begin());
      }
  };
  rec();
  return out;
}

}  // namespace

FlagSpacePtr build_flag_join(FamilyPtr fam, std::vector<Decomposition> decomps, std::vector<int> excluded_dims) {
  auto f = std::make_shared<FlagSpace>();
  f->fam = fam;
  f->decomps = std::move(decomps);
  f->excluded_dims = std::move(excluded_dims);
  // gather all nondegenerate sequences by degree
  std::vector<std::vector<std::pair<int, std::vector<int>>>> by_degree;
  for (size_t dc = 0; dc < f->decomps.size(); ++dc) {
    std::vector<std::vector<std::vector<int>>> per_factor;
    for (int top : f->decomps[dc]) per_factor.push_back(chains_to(*fam, top, f->excluded_dims));
    std::vector<int> cur;
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == per_factor.size()) {
        int n = static_cast<int>(cur.size()) - 1;
        if (static_cast<int>(by_degree.size()) <= n) by_degree.resize(n + 1);
        by_degree[n].push_back({static_cast<int>(dc), cur});
        return;
      }
      for (auto& c : per_factor[k]) {
        cur.insert(cur.end(), c.begin(), c.end());
        rec(k + 1);
        cur.resize(cur.size() - c.size());
      }
    };
    rec(0);
  }
  auto set = std::make_shared<SimpSet>();
  f->space = set;
  f->cells.resize(std::max<size_t>(by_degree.size(), 1));
  f->cells[0].push_back({-1, {}});
  for (size_t n = 0; n < by_degree.size(); ++n) {
    std::sort(by_degree[n].begin(), by_degree[n].end());
    for (auto& [dc, seq] : by_degree[n]) {
      std::vector<Simp> faces;
      if (n > 0)
        for (size_t j = 0; j <= n; ++j) {
          auto s = seq;
          s.erase(s.begin() + j);
          faces.push_back(f->simplex(dc, s));
        }
      int id = set->add(static_cast<int>(n), f->str(dc, seq), faces);
      f->index[{dc, seq}] = id;
      if (static_cast<int>(f->cells[n].size()) <= id) f->cells[n].resize(id + 1);
      f->cells[n][id] = {dc, seq};
    }
  }
  return f;
}

FlagSpacePtr build_F(FamilyPtr fam, int top) {
  if (top < 0) top = fam->whole();
  return build_flag_join(fam, {{top}});
}

FlagSpacePtr build_N_I(FamilyPtr fam, const std::vector<int>& dims) {
  return build_flag_join(fam, {{fam->whole()}}, dims);
}

std::vector<std::vector<bool>> n_i_marks(const FlagSpace& f, const std::vector<int>& dims) {
  std::vector<std::vector<bool>> marks(f.space->dim() + 1);
  for (int k = 0; k <= f.space->dim(); ++k) {
    marks[k].assign(f.space->count(k), false);
    for (int i = 0; i < f.space->count(k); ++i) {
      if (k == 0 && i == 0) {
        marks[0][0] = true;
        continue;
      }
      bool ok = true;
      for (int u : f.cells[k][i].second)
        if (std::find(dims.begin(), dims.end(), f.fam->dim(u)) != dims.end()) ok = false;
      marks[k][i] = ok;
    }
  }
  return marks;
}

// ---------------------------------------------------------------------------
// T^m

Simp TSpace::simplex(const std::vector<int>& seq) const {
  int n = static_cast<int>(seq.size()) - 1;
  if (seq.empty()) throw Error("BuildError", "empty chain");
  if (quotient && fam->dim(seq.back()) < m) return space->base(n);
  auto [nd, mask] = compress_repeats(seq);
  auto it = index.find(nd);
  if (it == index.end()) throw Error("ClosureMissing", "chain is not a simplex of T");
  return Simp{n, mask, it->second};
}

namespace {

TSpace make_T(FamilyPtr fam, int m, bool quotient) {
  TSpace t;
  t.fam = fam;
  t.m = m;
  t.quotient = quotient;
  int x = fam->whole();
  std::vector<int> usable;
  for (int u = 0; u < fam->size(); ++u)
    if (fam->allowed_in(x, u) && fam->dim(u) <= m) usable.push_back(u);
  std::vector<std::vector<std::vector<int>>> by_degree;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty() && (!quotient || fam->dim(cur.back()) == m)) {
      size_t n = cur.size() - 1;
      if (by_degree.size() <= n) by_degree.resize(n + 1);
      by_degree[n].push_back(cur);
    }
    for (int u : usable)
      if (cur.empty() || (u != cur.back() && fam->contains(u, cur.back()))) {
        cur.push_back(u);
        rec();
        cur.pop_back();
      }
  };
  rec();
  auto set = std::make_shared<SimpSet>();
  t.space = set;
  t.chains.resize(std::max<size_t>(by_degree.size(), 1));
  t.chains[0].push_back({});
  for (size_t n = 0; n < by_degree.size(); ++n) {
    std::sort(by_degree[n].begin(), by_degree[n].end());
    for (auto& c : by_degree[n]) {
      std::vector<Simp> faces;
      if (n > 0)
        for (size_t j = 0; j <= n; ++j) {
          auto s = c;
          s.erase(s.begin() + j);
          faces.push_back(t.simplex(s));
        }
      std::string label = "[";
      for (size_t k = 0; k < c.size(); ++k) label += (k ? "<" : "") + fam->name(c[k]);
      int id = set->add(static_cast<int>(n), label + "]", faces);
      t.index[c] = id;
      if (static_cast<int>(t.chains[n].size()) <= id) t.chains[n].resize(id + 1);
      t.chains[n][id] = c;
    }
  }
  return t;
}

}  // namespace

TSpace build_T(FamilyPtr fam, int m) { return make_T(std::move(fam), m, false); }
TSpace build_T_quotient(FamilyPtr fam, int m) { return make_T(std::move(fam), m, true); }

// ---------------------------------------------------------------------------
// decompositions and Dehn maps

std::vector<Decomposition> decompositions(const SubspaceFamily& fam, int top, const std::vector<int>& dims) {
  std::vector<Decomposition> out;
  if (dims.empty()) return out;
  if (dims.size() == 1) {
    if (fam.dim(top) == dims[0]) out.push_back({top});
    return out;
  }
  for (int u = 0; u < fam.size(); ++u) {
    if (u == top || fam.dim(u) != dims[0] || !fam.allowed_in(top, u)) continue;
    int rest = fam.project(u, top);
    for (auto& tail : decompositions(fam, rest, std::vector<int>(dims.begin() + 1, dims.end()))) {
      Decomposition d{u};
      d.insert(d.end(), tail.begin(), tail.end());
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::pair<Decomposition, std::vector<int>> dehn_sequence(const SubspaceFamily& fam, const Decomposition& d,
                                                         const std::vector<int>& seq, int factor, int local_dim) {
  int top = d.at(factor);
  int lo = -1, hi = -1, pivot = -1;
  for (size_t k = 0; k < seq.size(); ++k)
    if (fam.allowed_in(top, seq[k])) {
      if (lo < 0) lo = static_cast<int>(k);
      hi = static_cast<int>(k);
      if (fam.dim(seq[k]) == local_dim) pivot = static_cast<int>(k);
    }
  if (pivot < 0) return {};
  int u = seq[pivot];
  if (u == top) throw Error("BuildError", "Dehn split at the top of a factor");
  Decomposition nd(d.begin(), d.begin() + factor);
  nd.push_back(u);
  nd.push_back(fam.project(u, top));
  nd.insert(nd.end(), d.begin() + factor + 1, d.end());
  std::vector<int> out = seq;
  for (int k = pivot + 1; k <= hi; ++k) out[k] = fam.project(u, seq[k]);
  return {nd, out};
}

FlagSpacePtr dehn_target(const FlagSpace& src, int factor, int local_dim) {
  std::set<Decomposition> seen;
  std::vector<Decomposition> out;
  for (auto& d : src.decomps) {
    int top = d.at(factor);
    for (int u = 0; u < src.fam->size(); ++u) {
      if (u == top || src.fam->dim(u) != local_dim || !src.fam->allowed_in(top, u)) continue;
      Decomposition nd(d.begin(), d.begin() + factor);
      nd.push_back(u);
      nd.push_back(src.fam->project(u, top));
      nd.insert(nd.end(), d.begin() + factor + 1, d.end());
      if (seen.insert(nd).second) out.push_back(nd);
    }
  }
  std::sort(out.begin(), out.end());
  return build_flag_join(src.fam, out);
}

SimpMap dehn_map(const FlagSpacePtr& src, const FlagSpacePtr& dst, int factor, int local_dim) {
  SimpMap m(src->space, dst->space);
  m.set(0, 0, dst->space->base(0));
  for (int k = 0; k <= src->space->dim(); ++k)
    for (int i = 0; i < src->space->count(k); ++i) {
      if (k == 0 && i == 0) continue;
      auto& [dc, seq] = src->cells[k][i];
      auto [nd, out] = dehn_sequence(*src->fam, src->decomps[dc], seq, factor, local_dim);
      if (nd.empty()) {
        m.set(k, i, dst->space->base(k));
        continue;
      }
      int t = dst->find_decomp(nd);
      if (t < 0) throw Error("BuildError", "Dehn target lacks a decomposition");
      m.set(k, i, dst->simplex(t, out));
    }
  return m;
}

DehnMap dehn_U(FamilyPtr fam, int u) {
  int x = fam->whole();
  if (u == x || !fam->allowed_in(x, u)) throw Error("BuildError", "Dehn map needs a proper subspace of X");
  DehnMap r;
  r.source = build_F(fam);
  r.target = build_flag_join(fam, {{u, fam->perp(u)}});
  r.map = std::make_shared<SimpMap>(r.source->space, r.target->space);
  r.map->set(0, 0, r.target->space->base(0));
  for (int k = 0; k <= r.source->space->dim(); ++k)
    for (int i = 0; i < r.source->space->count(k); ++i) {
      if (k == 0 && i == 0) continue;
      auto [nd, out] = dehn_sequence(*fam, {x}, r.source->cells[k][i].second, 0, fam->dim(u));
      r.map->set(k, i, nd.empty() || nd[0] != u ? r.target->space->base(k) : r.target->simplex(0, out));
    }
  return r;
}

DehnMap dehn_i(FamilyPtr fam, int i) {
  DehnMap r;
  r.source = build_F(fam);
  r.target = dehn_target(*r.source, 0, i);
  r.map = std::make_shared<SimpMap>(dehn_map(r.source, r.target, 0, i));
  return r;
}

CheckReport check_dehn_square(FamilyPtr fam, int i, int j) {
  CheckReport rep;
  if (!(i < j)) throw Error("BuildError", "Dehn square needs i < j");
  auto f = build_F(fam);
  int x = fam->whole();
  for (int k = 0; k <= f->space->dim() && rep.ok; ++k)
    for (int id = 0; id < f->space->count(k) && rep.ok; ++id) {
      if (k == 0 && id == 0) continue;
      const auto& seq = f->cells[k][id].second;
      auto a = dehn_sequence(*fam, {x}, seq, 0, i);
      if (!a.first.empty()) a = dehn_sequence(*fam, a.first, a.second, 1, j - i - 1);
      auto b = dehn_sequence(*fam, {x}, seq, 0, j);
      if (!b.first.empty()) b = dehn_sequence(*fam, b.first, b.second, 0, i);
      if (a != b) {
        rep.ok = false;
        rep.message = "square D" + std::to_string(i) + "/D" + std::to_string(j) + " fails on " + f->str(0, seq);
      }
    }
  return rep;
}

CompositeIso dehn_composite_iso(FamilyPtr fam, std::vector<int> dims) {
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  CompositeIso r;
  r.source = build_F(fam);
  r.target = r.source;
  r.map = std::make_shared<SimpMap>(SimpMap::identity(r.source->space));
  // the largest dimension is split off first; every later split stays in factor 0
  for (auto it = dims.rbegin(); it != dims.rend(); ++it) {
    auto next = dehn_target(*r.target, 0, *it);
    SimpMap step = dehn_map(r.target, next, 0, *it);
    r.map = std::make_shared<SimpMap>(step.compose_after(*r.map));
    r.target = next;
  }
  const SubspaceFamily& fm = *fam;
  auto reassemble = [&](int dc, const std::vector<int>& seq) {
    const auto& d = r.target->decomps[dc];
    std::vector<int> prefix(d.size(), -1);  // T_0 ⊕ … ⊕ T_{k-1}
    for (size_t k = 1; k < d.size(); ++k)
      prefix[k] = k == 1 ? d[0] : fm.require(direct_sum(fm.member(prefix[k - 1]), fm.member(d[k - 1])), "sum");
    std::vector<int> out;
    for (int u : seq) {
      int k = r.target->factor_of(dc, u);
      out.push_back(k == 0 ? u : fm.require(direct_sum(fm.member(prefix[k]), fm.member(u)), "sum"));
    }
    return out;
  };
  const SimpSet& src = *r.source->space;
  const SimpSet& dst = *r.target->space;
  std::vector<std::vector<bool>> hit(dst.dim() + 1);
  for (int k = 0; k <= dst.dim(); ++k) hit[k].assign(dst.count(k), false);
  auto fail = [&](const std::string& msg) {
    if (r.report.ok) r.report = {false, msg};
  };
  for (int k = 0; k <= src.dim(); ++k)
    for (int i = 0; i < src.count(k); ++i) {
      if (k == 0 && i == 0) continue;
      const auto& seq = r.source->cells[k][i].second;
      bool all = true;
      for (int dd : dims) {
        bool found = false;
        for (int u : seq) found |= fm.dim(u) == dd;
        all &= found;
      }
      Simp img = r.map->image(k, i);
      if (!all) {
        if (!dst.is_base(img)) fail("flag " + r.source->str(0, seq) + " lies in the union of the N but survives");
        continue;
      }
      if (dst.is_base(img) || !img.nondegenerate()) {
        fail("flag " + r.source->str(0, seq) + " does not map to a nondegenerate simplex");
        continue;
      }
      if (hit[k][img.nd]) fail("two flags share the image of " + r.source->str(0, seq));
      hit[k][img.nd] = true;
      auto [dc, out] = r.target->cells[k][img.nd];
      if (reassemble(dc, out) != seq) fail("reassembly does not invert the map on " + r.source->str(0, seq));
    }
  for (int k = 0; k <= dst.dim(); ++k)
    for (int i = 0; i < dst.count(k); ++i)
      if (!(k == 0 && i == 0) && !hit[k][i]) fail("simplex " + dst.label(k, i) + " is not hit");
  return r;
}

// ---------------------------------------------------------------------------
// tuples

QVec normalize_point(const QVec& v) {
  for (auto& x : v)
    if (x != 0) {
      Rational s = abs(x);
      QVec out;
      for (auto& y : v) out.push_back(y / s);
      return out;
    }
  throw Error("DegenerateSpan", "zero vector is not a point");
}

std::optional<Subspace> TplSpace::span_of(const std::vector<int>& t) const {
  std::set<int> distinct(t.begin(), t.end());
  std::vector<QVec> vs;
  for (int a : distinct) {
    QVec neg;
    for (auto& x : points[a]) neg.push_back(-x);
    if (geometry->flavor() == Flavor::Spherical)
      for (int b : distinct)
        if (points[b] == neg) return std::nullopt;  // antipodal pair
    vs.push_back(points[a]);
  }
  try {
    Subspace s = Subspace::span_auto(vs, geometry);
    if (s.n_minus() != geometry->n_minus()) return std::nullopt;
    return s;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Simp TplSpace::simplex(const std::vector<int>& t) const {
  int n = static_cast<int>(t.size()) - 1;
  if (quotient) {
    auto s = span_of(t);
    if (!s || s->dim() < m) return space->base(n);
  }
  auto [nd, mask] = compress_repeats(t);
  auto it = index.find(nd);
  if (it == index.end()) throw Error("BuildError", "tuple is not a simplex");
  return Simp{n, mask, it->second};
}

TplSpace tpl(QuadSpacePtr geometry, std::vector<QVec> points, int m, int max_degree, bool quotient) {
  TplSpace t;
  t.geometry = geometry;
  t.m = m;
  t.quotient = quotient;
  std::set<QVec> uniq;
  for (auto& p : points) uniq.insert(normalize_point(p));
  t.points.assign(uniq.begin(), uniq.end());
  int k = static_cast<int>(t.points.size());
  if (k > 30) throw Error("BuildError", "too many points");
  std::map<uint32_t, int> span_dim;  // -1 when invalid
  std::function<int(uint32_t)> dim_of = [&](uint32_t mask) {
    auto it = span_dim.find(mask);
    if (it != span_dim.end()) return it->second;
    std::vector<int> idx;
    for (int a = 0; a < k; ++a)
      if (mask >> a & 1u) idx.push_back(a);
    auto s = t.span_of(idx);
    int d = s ? s->dim() : -1;
    return span_dim[mask] = d;
  };
  std::map<uint32_t, bool> allowed_cache;
  std::function<bool(uint32_t)> allowed = [&](uint32_t mask) {
    auto it = allowed_cache.find(mask);
    if (it != allowed_cache.end()) return it->second;
    int d = dim_of(mask);
    bool ok = d >= 0 && d <= m;
    for (int a = 0; a < k && ok; ++a)
      if ((mask >> a & 1u) && std::popcount(mask) > 1) ok = allowed(mask & ~(1u << a));
    return allowed_cache[mask] = ok;
  };
  std::vector<std::vector<std::vector<int>>> by_degree(max_degree + 1);
  std::vector<int> cur;
  std::function<void(uint32_t)> rec = [&](uint32_t mask) {
    int n = static_cast<int>(cur.size()) - 1;
    if (!quotient || dim_of(mask) == m) by_degree[n].push_back(cur);
    if (n == max_degree) return;
    for (int a = 0; a < k; ++a) {
      if (a == cur.back()) continue;
      uint32_t nm = mask | 1u << a;
      if (!allowed(nm)) continue;
      cur.push_back(a);
      rec(nm);
      cur.pop_back();
    }
  };
  for (int a = 0; a < k; ++a)
    if (allowed(1u << a)) {
      cur = {a};
      rec(1u << a);
    }
  auto set = std::make_shared<SimpSet>();
  t.space = set;
  t.tuples.resize(max_degree + 1);
  t.tuples[0].push_back({});
  for (int n = 0; n <= max_degree; ++n)
    for (auto& tu : by_degree[n]) {
      std::vector<Simp> faces;
      if (n > 0)
        for (int j = 0; j <= n; ++j) {
          auto s = tu;
          s.erase(s.begin() + j);
          faces.push_back(t.simplex(s));
        }
      std::string label = "(";
      for (size_t q = 0; q < tu.size(); ++q) label += (q ? "," : "") + std::string(1, static_cast<char>('a' + tu[q] % 26));
      int id = set->add(n, label + ")", faces);
      t.index[tu] = id;
      if (static_cast<int>(t.tuples[n].size()) <= id) t.tuples[n].resize(id + 1);
      t.tuples[n][id] = tu;
    }
  return t;
}

SpanMap span_map_h(const TplSpace& t, const TSpace& target) {
  SpanMap r;
  r.sd = std::make_shared<SubdivisionResult>(subdivide(*t.space));
  r.source = SimpSetPtr(r.sd, &r.sd->space);
  r.map = std::make_shared<SimpMap>(r.source, target.space);
  const SubspaceFamily& fam = *target.fam;
  std::map<std::vector<int>, int> span_cache;
  auto span_member = [&](const std::vector<int>& pts) {
    auto it = span_cache.find(pts);
    if (it != span_cache.end()) return it->second;
    auto s = t.span_of(pts);
    if (!s) throw Error("DegenerateSpan", "tuple with invalid span");
    return span_cache[pts] = fam.require(*s, "span");
  };
  for (int n = 0; n <= r.source->dim(); ++n)
    for (int i = 0; i < r.source->count(n); ++i) {
      const auto& [x, chain] = r.sd->cells[n][i];
      if (t.space->is_base(x)) {
        r.map->set(n, i, target.space->base(n));
        continue;
      }
      const auto& tu = t.tuples[x.deg][x.nd];
      std::vector<int> seq;
      for (uint32_t sub : chain) {
        std::vector<int> pts;
        for (size_t q = 0; q < tu.size(); ++q)
          if (sub >> q & 1u) pts.push_back(tu[q]);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        seq.push_back(span_member(pts));
      }
      r.map->set(n, i, target.simplex(seq));
    }
  return r;
}

// ---------------------------------------------------------------------------
// flag classes

namespace {

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

SparseVec flag_class(const FlagSpace& f, const std::vector<QVec>& points) {
  const SubspaceFamily& fam = *f.fam;
  int n = static_cast<int>(points.size());
  if (n != fam.geometry()->linear_dim() || rank(QMat(points.begin(), points.end())) != n)
    throw Error("DegenerateSimplex", "points do not span X");
  int dc = f.find_decomp({fam.whole()});
  if (dc < 0) throw Error("BuildError", "flag space is not F^X");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SparseVec out;
  std::map<std::vector<int>, int> cache;
  do {
    std::vector<int> seq;
    std::vector<QVec> acc;
    std::vector<int> key;
    for (int k = 0; k < n; ++k) {
      acc.push_back(points[perm[k]]);
      key.push_back(perm[k]);
      auto sorted = key;
      std::sort(sorted.begin(), sorted.end());
      auto it = cache.find(sorted);
      if (it == cache.end())
        it = cache.emplace(sorted, fam.require(Subspace::span_auto(acc, fam.geometry()), "span")).first;
      seq.push_back(it->second);
    }
    Simp s = f.simplex(dc, seq);
    axpy(out, perm_sign(perm), simplex_chain(*f.space, s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

SparseVec ssigma_class(const SimpSet& ssigma) {
  SparseVec out;
  axpy(out, 1, simplex_chain(ssigma, SimpSet::nd(1, 0)));
  axpy(out, -1, simplex_chain(ssigma, SimpSet::nd(1, 1)));
  return out;
}

SmashedF smash_ssigma(FlagSpacePtr f) {
  SmashedF s;
  s.ssigma = std::make_shared<SimpSet>(circle_Ssigma());
  s.f = std::move(f);
  s.data = std::make_shared<SmashResult>(smash(*s.ssigma, *s.f->space));
  s.space = SimpSetPtr(s.data, &s.data->space);
  return s;
}

GroupAction SmashedF::action(const FiniteGroup& g) const {
  return smash_action(space, *data, ssigma_action(ssigma, g), f->action(g), g);
}

SparseVec simplex_class(const SmashedF& s, const std::vector<QVec>& points) {
  SparseVec fc = flag_class(*s.f, points);
  int d = s.f->fam->geometry()->dim();
  return cross(*s.ssigma, *s.f->space, *s.data, 1, ssigma_class(*s.ssigma), d, fc);
}

}  // namespace scissors
