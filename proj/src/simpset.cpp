#include "scissors/simpset.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace scissors {

std::vector<int> surjection_values(uint32_t mask, int n) {
  std::vector<int> v(n + 1, 0);
  for (int k = 0; k < n; ++k) v[k + 1] = v[k] + ((mask >> k) & 1u ? 0 : 1);
  return v;
}

uint32_t mask_from_values(const std::vector<int>& vals) {
  uint32_t m = 0;
  for (size_t k = 0; k + 1 < vals.size(); ++k)
    if (vals[k] == vals[k + 1]) m |= 1u << k;
  return m;
}

uint32_t insert_bit(uint32_t mask, int pos, bool value) {
  uint32_t low = mask & ((1u << pos) - 1u);
  uint32_t high = pos >= 32 ? 0 : (mask >> pos) << (pos + 1);
  return low | high | (value ? 1u << pos : 0u);
}

uint32_t remove_bit(uint32_t mask, int pos) {
  uint32_t low = mask & ((1u << pos) - 1u);
  uint32_t high = (mask >> (pos + 1)) << pos;
  return low | high;
}

uint32_t compress_mask(uint32_t mask, uint32_t drop) {
  uint32_t out = 0;
  int o = 0;
  for (int k = 0; k < 32; ++k) {
    if ((drop >> k) & 1u) continue;
    if ((mask >> k) & 1u) out |= 1u << o;
    ++o;
  }
  return out;
}

uint32_t compose_masks(uint32_t outer, int n, uint32_t inner) {
  auto ov = surjection_values(outer, n);
  int m = ov.back();
  auto iv = surjection_values(inner, m);
  std::vector<int> r(n + 1);
  for (int k = 0; k <= n; ++k) r[k] = iv[ov[k]];
  return mask_from_values(r);
}

SimpSet::SimpSet(std::string base_label) {
  cells_.resize(1);
  by_label_.resize(1);
  cells_[0].push_back(Cell{base_label, {}});
  by_label_[0][base_label] = 0;
}

int SimpSet::add(int k, std::string label, std::vector<Simp> faces) {
  if (k < 0) throw Error("BuildError", "negative degree");
  if (k > 0 && static_cast<int>(faces.size()) != k + 1)
    throw Error("BuildError", "simplex '" + label + "' needs " + std::to_string(k + 1) + " faces");
  for (auto& f : faces)
    if (f.deg != k - 1 || f.nd_deg() < 0 || f.nd_deg() > dim() || f.nd >= count(f.nd_deg()))
      throw Error("BuildError", "face of '" + label + "' is not an existing simplex of degree " + std::to_string(k - 1));
  if (static_cast<int>(cells_.size()) <= k) cells_.resize(k + 1), by_label_.resize(k + 1);
  int id = static_cast<int>(cells_[k].size());
  by_label_[k].emplace(label, id);
  cells_[k].push_back(Cell{std::move(label), std::move(faces)});
  return id;
}

int SimpSet::size() const {
  int s = 0;
  for (int k = 0; k <= dim(); ++k) s += count(k);
  return s - 1;
}

std::optional<int> SimpSet::find(int k, const std::string& label) const {
  if (k < 0 || k > dim()) return std::nullopt;
  auto it = by_label_[k].find(label);
  if (it == by_label_[k].end()) return std::nullopt;
  return it->second;
}

Simp SimpSet::base(int n) const {
  uint32_t m = n >= 32 ? 0xffffffffu : (1u << n) - 1u;
  return Simp{n, m, 0};
}

Simp SimpSet::face(const Simp& s, int j) const {
  int n = s.deg;
  if (n <= 0 || j < 0 || j > n) throw Error("FaceError", "face index out of range");
  auto vals = surjection_values(s.mask, n);
  int v = vals[j];
  bool covered = (j > 0 && vals[j - 1] == v) || (j < n && vals[j + 1] == v);
  std::vector<int> tau;
  tau.reserve(n);
  for (int k = 0; k <= n; ++k)
    if (k != j) tau.push_back(vals[k]);
  if (covered) return Simp{n - 1, mask_from_values(tau), s.nd};
  int m = s.nd_deg();
  const Simp& f = cells_[m][s.nd].faces[v];
  for (int& t : tau)
    if (t > v) --t;
  auto rho = surjection_values(f.mask, m - 1);
  std::vector<int> r(n);
  for (int k = 0; k < n; ++k) r[k] = rho[tau[k]];
  return Simp{n - 1, mask_from_values(r), f.nd};
}

Simp SimpSet::degen(const Simp& s, int j) const {
  if (j < 0 || j > s.deg) throw Error("FaceError", "degeneracy index out of range");
  return Simp{s.deg + 1, insert_bit(s.mask, j, true), s.nd};
}

Simp SimpSet::restrict_to(const Simp& s, const std::vector<int>& vertices) const {
  Simp cur = s;
  std::vector<bool> keep(s.deg + 1, false);
  for (int v : vertices) keep[v] = true;
  for (int v = s.deg; v >= 0; --v)
    if (!keep[v]) cur = face(cur, v);
  return cur;
}

std::vector<Simp> SimpSet::simplices(int n, bool include_base) const {
  std::vector<Simp> out;
  for (int k = 0; k <= std::min(n, dim()); ++k) {
    int zeros = n - k;
    // masks over n bits with exactly `zeros` bits set
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = i;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + zeros, true);
    std::vector<uint32_t> masks;
    do {
      uint32_t m = 0;
      for (int i = 0; i < n; ++i)
        if (pick[i]) m |= 1u << i;
      masks.push_back(m);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(masks.begin(), masks.end());
    for (int i = 0; i < count(k); ++i) {
      if (k == 0 && i == 0 && !include_base) continue;
      for (uint32_t m : masks) out.push_back(Simp{n, m, i});
    }
  }
  return out;
}

std::string SimpSet::str(const Simp& s) const {
  std::ostringstream os;
  if (s.mask) {
    os << "s[";
    bool first = true;
    for (int k = 0; k < s.deg; ++k)
      if ((s.mask >> k) & 1u) os << (first ? "" : ",") << k, first = false;
    os << "]";
  }
  os << cells_[s.nd_deg()][s.nd].label;
  return os.str();
}

std::optional<std::string> SimpSet::check() const {
  if (!cells_[0][0].faces.empty()) return "basepoint has faces";
  for (int k = 1; k <= dim(); ++k)
    for (int i = 0; i < count(k); ++i) {
      Simp x = nd(k, i);
      for (int b = 0; b <= k; ++b) {
        const Simp& f = cells_[k][i].faces[b];
        if (f.deg != k - 1) return "face degree mismatch at " + str(x);
      }
      for (int a = 0; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
          if (k < 2) continue;
          Simp lhs = face(face(x, b), a);
          Simp rhs = face(face(x, a), b - 1);
          if (lhs != rhs)
            return "d" + std::to_string(a) + "d" + std::to_string(b) + " != d" + std::to_string(b - 1) + "d" +
                   std::to_string(a) + " on " + str(x) + ": " + str(lhs) + " vs " + str(rhs);
        }
    }
  return std::nullopt;
}

SimpMap::SimpMap(SimpSetPtr source, SimpSetPtr target) : source_(std::move(source)), target_(std::move(target)) {
  images_.resize(source_->dim() + 1);
  for (int k = 0; k <= source_->dim(); ++k) images_[k].assign(source_->count(k), target_->base(k));
}

void SimpMap::set(int k, int i, Simp image) {
  if (image.deg != k) throw Error("BuildError", "image degree mismatch");
  images_[k][i] = image;
}

Simp SimpMap::operator()(const Simp& s) const {
  const Simp& t = images_[s.nd_deg()][s.nd];
  return Simp{s.deg, compose_masks(s.mask, s.deg, t.mask), t.nd};
}

std::optional<std::string> SimpMap::check() const {
  if (!target_->is_base(images_[0][0])) return "basepoint not preserved";
  for (int k = 1; k <= source_->dim(); ++k)
    for (int i = 0; i < source_->count(k); ++i) {
      Simp x = SimpSet::nd(k, i);
      for (int j = 0; j <= k; ++j) {
        Simp a = (*this)(source_->face(x, j));
        Simp b = target_->face(images_[k][i], j);
        if (a != b)
          return "map does not commute with d" + std::to_string(j) + " on " + source_->str(x) + ": " +
                 target_->str(a) + " vs " + target_->str(b);
      }
    }
  return std::nullopt;
}

SimpMap SimpMap::compose_after(const SimpMap& first) const {
  SimpMap out(first.source_, target_);
  for (int k = 0; k <= first.source_->dim(); ++k)
    for (int i = 0; i < first.source_->count(k); ++i) out.images_[k][i] = (*this)(first.images_[k][i]);
  return out;
}

SimpMap SimpMap::identity(SimpSetPtr x) {
  SimpMap m(x, x);
  for (int k = 0; k <= x->dim(); ++k)
    for (int i = 0; i < x->count(k); ++i) m.images_[k][i] = SimpSet::nd(k, i);
  return m;
}

GroupAction::GroupAction(SimpSetPtr space, FiniteGroup group) : space_(std::move(space)), group_(std::move(group)) {
  perms_.resize(group_.order());
}

void GroupAction::set(int g, std::vector<std::vector<int>> perm) { perms_[g] = std::move(perm); }

Simp GroupAction::act(int g, const Simp& s) const { return Simp{s.deg, s.mask, perms_[g][s.nd_deg()][s.nd]}; }

std::optional<std::string> GroupAction::check() const {
  const SimpSet& x = *space_;
  for (int g = 0; g < group_.order(); ++g) {
    if (static_cast<int>(perms_[g].size()) != x.dim() + 1) return "action table incomplete";
    if (perms_[g][0][0] != 0) return "basepoint not fixed";
    for (int k = 0; k <= x.dim(); ++k) {
      std::vector<bool> seen(x.count(k), false);
      for (int i = 0; i < x.count(k); ++i) {
        int t = perms_[g][k][i];
        if (t < 0 || t >= x.count(k) || seen[t]) return "action is not a permutation";
        seen[t] = true;
        if (g == group_.identity() && t != i) return "identity acts nontrivially";
        for (int j = 0; k > 0 && j <= k; ++j)
          if (act(g, x.face(SimpSet::nd(k, i), j)) != x.face(SimpSet::nd(k, t), j))
            return "action does not commute with faces";
      }
    }
  }
  for (int a = 0; a < group_.order(); ++a)
    for (int b = 0; b < group_.order(); ++b) {
      int ab = group_.mul(a, b);
      for (int k = 0; k <= x.dim(); ++k)
        for (int i = 0; i < x.count(k); ++i)
          if (perms_[a][k][perms_[b][k][i]] != perms_[ab][k][i]) return "action is not a homomorphism";
    }
  return std::nullopt;
}

GroupAction GroupAction::trivial(SimpSetPtr space, FiniteGroup group) {
  GroupAction a(space, group);
  std::vector<std::vector<int>> id(space->dim() + 1);
  for (int k = 0; k <= space->dim(); ++k)
    for (int i = 0; i < space->count(k); ++i) id[k].push_back(i);
  for (int g = 0; g < a.group().order(); ++g) a.set(g, id);
  return a;
}

SimpSet point() { return SimpSet(); }

SimpSet sphere0() {
  SimpSet s;
  s.add(0, "v");
  return s;
}

SimpSet circle_S1() {
  SimpSet s;
  s.add(1, "1", {s.base(0), s.base(0)});
  return s;
}

SimpSet circle_Ssigma() {
  SimpSet s;
  int star = s.add(0, "(*)");
  s.add(1, "+1", {SimpSet::nd(0, star), s.base(0)});
  s.add(1, "-1", {SimpSet::nd(0, star), s.base(0)});
  return s;
}

SimpSet sphere_simplex_model(int n) {
  SimpSet s;
  if (n == 0) {
    s.add(0, "v");
    return s;
  }
  std::vector<Simp> faces(n + 1, s.base(n - 1));
  s.add(n, "top", faces);
  return s;
}

GroupAction ssigma_action(SimpSetPtr ssigma) {
  GroupAction a(ssigma, FiniteGroup::z2_sign());
  a.set(0, {{0, 1}, {0, 1}});
  a.set(1, {{0, 1}, {1, 0}});
  return a;
}

GroupAction ssigma_action(SimpSetPtr ssigma, const FiniteGroup& g) {
  GroupAction a(ssigma, g);
  for (int e = 0; e < g.order(); ++e) a.set(e, g.det(e) > 0 ? std::vector<std::vector<int>>{{0, 1}, {0, 1}}
                                                           : std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  return a;
}

Simp circle_simplex(int n, int i) {
  // vertices 0..i-1 collapse to vertex 0 and i..n to vertex 1
  uint32_t all = n >= 32 ? 0xffffffffu : (1u << n) - 1u;
  return Simp{n, all & ~(1u << (i - 1)), 0};
}

std::pair<int, int> circle_label(const SimpSet& circle, const Simp& s) {
  if (circle.is_base(s)) return {1, 0};
  if (s.nd_deg() == 0) return {1, -1};
  int i = 1;
  while ((s.mask >> (i - 1)) & 1u) ++i;
  int sign = circle.label(1, s.nd) == "-1" ? -1 : 1;
  return {sign, i};
}

Simp ssigma_simplex(int n, int sign, int i) {
  if (i == 0) return Simp{n, n >= 32 ? 0xffffffffu : (1u << n) - 1u, 0};
  if (i == -1) return Simp{n, n >= 32 ? 0xffffffffu : (1u << n) - 1u, 1};
  Simp c = circle_simplex(n, i);
  c.nd = sign > 0 ? 0 : 1;
  return c;
}

// ---------------------------------------------------------------------------
// smash product

Simp SmashResult::pair(const SimpSet& x, const SimpSet& y, Simp a, Simp b) const {
  if (x.is_base(a) || y.is_base(b)) return space.base(a.deg);
  uint32_t common = a.mask & b.mask;
  Simp na{a.deg - std::popcount(common), compress_mask(a.mask, common), a.nd};
  Simp nb{b.deg - std::popcount(common), compress_mask(b.mask, common), b.nd};
  auto it = index_of.find({na, nb});
  if (it == index_of.end()) throw Error("BuildError", "smash simplex missing");
  return Simp{a.deg, common, it->second};
}

SmashResult smash(const SimpSet& x, const SimpSet& y) {
  SmashResult r;
  int top = x.dim() + y.dim();
  r.coords.resize(1);
  r.coords[0].push_back({x.base(0), y.base(0)});
  for (int n = 0; n <= top; ++n) {
    if (static_cast<int>(r.coords.size()) <= n) r.coords.resize(n + 1);
    auto xs = x.simplices(n);
    auto ys = y.simplices(n);
    for (auto& a : xs)
      for (auto& b : ys) {
        if (a.mask & b.mask) continue;
        std::vector<Simp> faces;
        if (n > 0)
          for (int j = 0; j <= n; ++j) faces.push_back(r.pair(x, y, x.face(a, j), y.face(b, j)));
        int id = r.space.add(n, "(" + x.str(a) + "," + y.str(b) + ")", faces);
        r.index_of[{a, b}] = id;
        if (static_cast<int>(r.coords[n].size()) <= id) r.coords[n].resize(id + 1);
        r.coords[n][id] = {a, b};
      }
  }
  return r;
}

GroupAction smash_action(SimpSetPtr smash_space, const SmashResult& data, const GroupAction& left,
                         const GroupAction& right, const FiniteGroup& group) {
  GroupAction out(smash_space, group);
  for (int g = 0; g < group.order(); ++g) {
    std::vector<std::vector<int>> perm(smash_space->dim() + 1);
    for (int k = 0; k <= smash_space->dim(); ++k) {
      perm[k].resize(smash_space->count(k));
      for (int i = 0; i < smash_space->count(k); ++i) {
        if (k == 0 && i == 0) continue;
        auto [a, b] = data.coords[k][i];
        Simp ga = left.act(g, a), gb = right.act(g, b);
        perm[k][i] = data.index_of.at({ga, gb});
      }
    }
    out.set(g, perm);
  }
  return out;
}

SimpMap smash_maps(SimpSetPtr source, const SmashResult& src, SimpSetPtr target, const SmashResult& dst,
                   const SimpMap& f, const SimpMap& g) {
  SimpMap out(source, std::move(target));
  for (int k = 0; k <= source->dim(); ++k)
    for (int i = 0; i < source->count(k); ++i) {
      if (k == 0 && i == 0) {
        out.set(0, 0, out.target()->base(0));
        continue;
      }
      auto [a, b] = src.coords[k][i];
      out.set(k, i, dst.pair(*f.target(), *g.target(), f(a), g(b)));
    }
  return out;
}

Simp MultiSmash::tuple(const std::vector<Simp>& parts) const {
  int n = parts.empty() ? 0 : parts[0].deg;
  uint32_t common = ~0u;
  for (size_t f = 0; f < parts.size(); ++f) {
    if (factors[f]->is_base(parts[f])) return space.base(n);
    common &= parts[f].mask;
  }
  if (n < 32) common &= (1u << n) - 1u;
  std::vector<Simp> key;
  for (auto& p : parts) key.push_back(Simp{p.deg - std::popcount(common), compress_mask(p.mask, common), p.nd});
  auto it = index_of.find(key);
  if (it == index_of.end()) throw Error("BuildError", "smash simplex missing");
  return Simp{n, common, it->second};
}

MultiSmash smash_many(std::vector<SimpSetPtr> factors) {
  MultiSmash r;
  r.factors = std::move(factors);
  int top = 0;
  for (auto& f : r.factors) top += f->dim();
  r.coords.resize(top + 1);
  std::vector<Simp> base_key;
  for (auto& f : r.factors) base_key.push_back(f->base(0));
  r.coords[0].push_back(base_key);
  for (int n = 0; n <= top; ++n) {
    std::vector<std::vector<Simp>> lists;
    for (auto& f : r.factors) lists.push_back(f->simplices(n));
    std::vector<Simp> cur;
    uint32_t full = n >= 32 ? ~0u : (1u << n) - 1u;
    std::function<void(size_t, uint32_t)> rec = [&](size_t f, uint32_t common) {
      if (f == lists.size()) {
        if (common) return;
        std::vector<Simp> faces;
        if (n > 0)
          for (int j = 0; j <= n; ++j) {
            std::vector<Simp> fs;
            for (size_t t = 0; t < cur.size(); ++t) fs.push_back(r.factors[t]->face(cur[t], j));
            faces.push_back(r.tuple(fs));
          }
        std::string label = "(";
        for (size_t t = 0; t < cur.size(); ++t) label += (t ? "," : "") + r.factors[t]->str(cur[t]);
        int id = r.space.add(n, label + ")", faces);
        r.index_of[cur] = id;
        if (static_cast<int>(r.coords[n].size()) <= id) r.coords[n].resize(id + 1);
        r.coords[n][id] = cur;
        return;
      }
      for (auto& s : lists[f]) {
        cur.push_back(s);
        rec(f + 1, common & s.mask);
        cur.pop_back();
      }
    };
    rec(0, full);
  }
  return r;
}

// ---------------------------------------------------------------------------
// reduced join

Simp JoinResult::pair(const SimpSet& x, const SimpSet& y, const Simp& a, const Simp& b) const {
  int n = a.deg + b.deg + 1;
  if (x.is_base(a) || y.is_base(b)) return space.base(n);
  uint32_t mask = a.mask | (b.mask << (a.deg + 1));
  auto it = index_of.find({Simp{a.nd_deg(), 0, a.nd}, Simp{b.nd_deg(), 0, b.nd}});
  if (it == index_of.end()) throw Error("BuildError", "join simplex missing");
  return Simp{n, mask, it->second};
}

JoinResult reduced_join(const SimpSet& x, const SimpSet& y) {
  JoinResult r;
  int top = x.dim() + y.dim() + 1;
  r.coords.resize(top + 1);
  r.coords[0].push_back({x.base(0), y.base(0)});
  for (int n = 1; n <= top; ++n)
    for (int p = 0; p <= n - 1; ++p) {
      int q = n - 1 - p;
      for (int i = 0; i < x.count(p); ++i) {
        if (p == 0 && i == 0) continue;
        for (int j = 0; j < y.count(q); ++j) {
          if (q == 0 && j == 0) continue;
          Simp a = SimpSet::nd(p, i), b = SimpSet::nd(q, j);
          std::vector<Simp> faces;
          for (int l = 0; l <= n; ++l) {
            if (l <= p) {
              faces.push_back(p == 0 ? r.space.base(n - 1) : r.pair(x, y, x.face(a, l), b));
            } else {
              faces.push_back(q == 0 ? r.space.base(n - 1) : r.pair(x, y, a, y.face(b, l - p - 1)));
            }
          }
          int id = r.space.add(n, "(" + x.label(p, i) + "|" + y.label(q, j) + ")", faces);
          r.index_of[{a, b}] = id;
          if (static_cast<int>(r.coords[n].size()) <= id) r.coords[n].resize(id + 1);
          r.coords[n][id] = {a, b};
        }
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// wedge and quotient

WedgeResult wedge(const std::vector<const SimpSet*>& parts) {
  WedgeResult r;
  r.inclusion.resize(parts.size());
  int top = 0;
  for (auto* p : parts) top = std::max(top, p->dim());
  for (size_t s = 0; s < parts.size(); ++s) {
    r.inclusion[s].resize(parts[s]->dim() + 1);
    for (int k = 0; k <= parts[s]->dim(); ++k) r.inclusion[s][k].assign(parts[s]->count(k), 0);
  }
  for (int k = 0; k <= top; ++k)
    for (size_t s = 0; s < parts.size(); ++s) {
      const SimpSet& x = *parts[s];
      for (int i = 0; i < x.count(k); ++i) {
        if (k == 0 && i == 0) continue;
        std::vector<Simp> faces;
        for (auto f : x.faces(k, i)) {
          f.nd = r.inclusion[s][f.nd_deg()][f.nd];
          faces.push_back(f);
        }
        r.inclusion[s][k][i] = r.space.add(k, std::to_string(s) + ":" + x.label(k, i), faces);
      }
    }
  return r;
}

std::vector<std::vector<bool>> subcomplex_closure(const SimpSet& x, const std::vector<std::vector<bool>>& seeds) {
  std::vector<std::vector<bool>> sub(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    sub[k].assign(x.count(k), false);
    for (int i = 0; i < x.count(k) && k < static_cast<int>(seeds.size()); ++i)
      if (i < static_cast<int>(seeds[k].size())) sub[k][i] = seeds[k][i];
  }
  sub[0][0] = true;
  for (int k = x.dim(); k >= 1; --k)
    for (int i = 0; i < x.count(k); ++i)
      if (sub[k][i])
        for (auto& f : x.faces(k, i)) sub[f.nd_deg()][f.nd] = true;
  return sub;
}

QuotientResult quotient(const SimpSet& x, const std::vector<std::vector<bool>>& sub_in) {
  std::vector<std::vector<bool>> sub(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    sub[k].assign(x.count(k), false);
    if (k < static_cast<int>(sub_in.size()))
      for (int i = 0; i < x.count(k) && i < static_cast<int>(sub_in[k].size()); ++i) sub[k][i] = sub_in[k][i];
  }
  sub[0][0] = true;
  for (int k = 1; k <= x.dim(); ++k)
    for (int i = 0; i < x.count(k); ++i)
      if (sub[k][i])
        for (auto& f : x.faces(k, i))
          if (!sub[f.nd_deg()][f.nd]) throw Error("NotSubcomplex", "face of " + x.label(k, i) + " missing from subcomplex");
  QuotientResult r;
  r.projection.resize(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    r.projection[k].assign(x.count(k), -1);
    for (int i = 0; i < x.count(k); ++i) {
      if (sub[k][i]) {
        r.projection[k][i] = 0;
        continue;
      }
      std::vector<Simp> faces;
      for (auto f : x.faces(k, i)) {
        if (sub[f.nd_deg()][f.nd])
          faces.push_back(r.space.base(k - 1));
        else
          faces.push_back(Simp{f.deg, f.mask, r.projection[f.nd_deg()][f.nd]});
      }
      r.projection[k][i] = r.space.add(k, x.label(k, i), faces);
    }
  }
  // collapsed simplices map to the basepoint; mark with 0 in degree 0 and -1 above
  for (int k = 1; k <= x.dim(); ++k)
    for (int i = 0; i < x.count(k); ++i)
      if (sub[k][i]) r.projection[k][i] = -1;
  return r;
}

// ---------------------------------------------------------------------------
// barycentric subdivision

SubdivisionResult subdivide(const SimpSet& x, int max_degree) {
  using Key = std::pair<Simp, std::vector<uint32_t>>;
  SimpBuilder<Key> b("[*]");
  Key base_key{x.base(0), {1u}};
  b.index.resize(1);
  b.keys.resize(1);
  b.keys[0].push_back(base_key);
  b.index[0][base_key] = 0;
  auto label_of = [&](const Key& k) {
    std::string s = x.str(k.first) + "[";
    for (size_t t = 0; t < k.second.size(); ++t) s += (t ? "<" : "") + std::to_string(k.second[t]);
    return s + "]";
  };
  // chain of subsets over a possibly degenerate simplex, pushed to its normal form
  auto normalize = [&](const Simp& s, const std::vector<int>& verts, const std::vector<uint32_t>& chain) -> Simp {
    int n = static_cast<int>(chain.size()) - 1;
    if (x.is_base(s)) return b.set.base(n);
    auto vals = surjection_values(s.mask, s.deg);
    std::vector<uint32_t> img;
    for (uint32_t sub : chain) {
      uint32_t t = 0;
      for (size_t p = 0; p < verts.size(); ++p)
        if (sub >> verts[p] & 1u) t |= 1u << vals[p];
      img.push_back(t);
    }
    uint32_t mask = 0;
    std::vector<uint32_t> nd{img[0]};
    for (int t = 0; t < n; ++t) {
      if (img[t] == img[t + 1])
        mask |= 1u << t;
      else
        nd.push_back(img[t + 1]);
    }
    return b.ref(n, mask, Key{Simp{s.nd_deg(), 0, s.nd}, nd});
  };
  int top = x.dim();
  if (max_degree >= 0) top = std::min(top, max_degree);
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= x.dim(); ++k) {
      uint32_t full = (1u << (k + 1)) - 1u;
      for (int i = 0; i < x.count(k); ++i) {
        if (k == 0 && i == 0) continue;
        Simp xs = SimpSet::nd(k, i);
        // strictly increasing chains of n+1 nonempty subsets ending at full
        std::vector<uint32_t> chain(n + 1, full);
        std::function<void(int)> rec = [&](int pos) {
          if (pos < 0) {
            std::vector<Simp> faces;
            if (n > 0)
              for (int j = 0; j <= n; ++j) {
                std::vector<uint32_t> c2;
                for (int t = 0; t <= n; ++t)
                  if (t != j) c2.push_back(chain[t]);
                uint32_t topset = c2.back();
                std::vector<int> verts;
                for (int v = 0; v <= k; ++v)
                  if (topset >> v & 1u) verts.push_back(v);
                Simp restricted = topset == full ? xs : x.restrict_to(xs, verts);
                if (topset == full) {
                  faces.push_back(b.ref(n - 1, 0, Key{xs, c2}));
                } else {
                  faces.push_back(normalize(restricted, verts, c2));
                }
              }
            Key key{xs, chain};
            b.add(n, key, label_of(key), faces);
            return;
          }
          uint32_t above = chain[pos + 1];
          for (uint32_t sub = (above - 1) & above; sub; sub = (sub - 1) & above) {
            chain[pos] = sub;
            rec(pos - 1);
          }
        };
        if (n == 0) {
          Key key{xs, {full}};
          b.add(0, key, label_of(key), {});
        } else {
          rec(n - 1);
        }
      }
    }
  SubdivisionResult r;
  r.space = std::move(b.set);
  r.cells = std::move(b.keys);
  return r;
}

// ---------------------------------------------------------------------------
// S¹ ∧ (X ∧ Y) → X ⋆̄ Y

SimpMap smash_to_join(SimpSetPtr source, SimpSetPtr target, const SimpSet& x, const SimpSet& y,
                      const SmashResult& s1_xy, const SmashResult& xy, const JoinResult& join) {
  SimpMap f(source, target);
  for (int n = 1; n <= source->dim(); ++n)
    for (int id = 0; id < source->count(n); ++id) {
      auto [c, p] = s1_xy.coords[n][id];
      // c is the S¹ coordinate, p a simplex of X ∧ Y
      int i = 1;
      while ((c.mask >> (i - 1)) & 1u) ++i;
      auto [a0, b0] = xy.coords[p.nd_deg()][p.nd];
      Simp a{n, compose_masks(p.mask, n, a0.mask), a0.nd};
      Simp b{n, compose_masks(p.mask, n, b0.mask), b0.nd};
      // front face on vertices 0..i-1, back face on vertices i..n
      Simp front = a, back = b;
      for (int t = 0; t < n - i + 1; ++t) front = x.face(front, i);
      for (int t = 0; t < i; ++t) back = y.face(back, 0);
      f.set(n, id, join.pair(x, y, front, back));
    }
  return f;
}

SmashToJoin build_smash_to_join(SimpSetPtr x, SimpSetPtr y) {
  SmashToJoin r;
  r.x = x;
  r.y = y;
  r.s1 = std::make_shared<SimpSet>(circle_S1());
  r.xy_data = std::make_shared<SmashResult>(smash(*x, *y));
  r.smash_xy = std::shared_ptr<const SimpSet>(r.xy_data, &r.xy_data->space);
  r.s1_data = std::make_shared<SmashResult>(smash(*r.s1, *r.smash_xy));
  r.source = std::shared_ptr<const SimpSet>(r.s1_data, &r.s1_data->space);
  r.join_data = std::make_shared<JoinResult>(reduced_join(*x, *y));
  r.target = std::shared_ptr<const SimpSet>(r.join_data, &r.join_data->space);
  r.map = std::make_shared<SimpMap>(smash_to_join(r.source, r.target, *x, *y, *r.s1_data, *r.xy_data, *r.join_data));
  return r;
}

// ---------------------------------------------------------------------------
// γ: S^σ ∧ S^σ → S^σ ∧ S¹, (a, b) ↦ ((sgn b) a, |b|)

Gamma gamma_map() {
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  auto s1 = std::make_shared<SimpSet>(circle_S1());
  auto src = std::make_shared<SmashResult>(smash(*ss, *ss));
  auto tgt = std::make_shared<SmashResult>(smash(*ss, *s1));
  Gamma g;
  g.source = std::shared_ptr<const SimpSet>(src, &src->space);
  g.target = std::shared_ptr<const SimpSet>(tgt, &tgt->space);
  g.map = std::make_shared<SimpMap>(g.source, g.target);
  for (int n = 0; n <= g.source->dim(); ++n)
    for (int id = 0; id < g.source->count(n); ++id) {
      if (n == 0 && id == 0) continue;
      auto [a, b] = src->coords[n][id];
      auto [sa, ia] = circle_label(*ss, a);
      auto [sb, ib] = circle_label(*ss, b);
      Simp image;
      if (ib <= 0) {
        image = g.target->base(n);  // second coordinate is * or ⊛, which both go to * in S¹
      } else {
        Simp na = ia == 0 ? ss->base(n) : ssigma_simplex(n, sa * sb, ia);
        Simp nb = circle_simplex(n, ib);
        image = tgt->pair(*ss, *s1, na, nb);
      }
      g.map->set(n, id, image);
    }
  return g;
}

// ---------------------------------------------------------------------------
// homotopy orbits: diagonal simplices (x; g1..gn) for x ∈ X_n

SimpSet homotopy_orbits(const GroupAction& action, int max_degree) {
  const SimpSet& x = *action.space();
  const FiniteGroup& g = action.group();
  int e = g.identity();
  using Key = std::pair<Simp, std::vector<int>>;  // x nondegenerate-compatible, tuple
  SimpBuilder<Key> b;
  b.index.resize(1);
  b.keys.resize(1);
  b.keys[0].push_back(Key{x.base(0), {}});
  b.index[0][b.keys[0][0]] = 0;
  auto tuple_mask = [&](const std::vector<int>& t) {
    uint32_t m = 0;
    for (size_t k = 0; k < t.size(); ++k)
      if (t[k] == e) m |= 1u << k;
    return m;
  };
  auto normalize = [&](const Simp& s, const std::vector<int>& t) -> Simp {
    int n = s.deg;
    if (x.is_base(s)) return b.set.base(n);
    uint32_t common = s.mask & tuple_mask(t);
    Simp ns{n - std::popcount(common), compress_mask(s.mask, common), s.nd};
    std::vector<int> nt;
    for (size_t k = 0; k < t.size(); ++k)
      if (!((common >> k) & 1u)) nt.push_back(t[k]);
    return b.ref(n, common, Key{ns, nt});
  };
  auto label = [&](const Key& k) {
    std::string s = "(" + x.str(k.first) + ";";
    for (size_t i = 0; i < k.second.size(); ++i) s += (i ? "," : "") + g.label(k.second[i]);
    return s + ")";
  };
  for (int n = 0; n <= max_degree; ++n) {
    auto xs = x.simplices(n);
    std::vector<int> t(n, 0);
    for (auto& s : xs) {
      // enumerate tuples avoiding identities where s is degenerate
      std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
          Key key{s, t};
          std::vector<Simp> faces;
          if (n > 0) {
            for (int j = 0; j <= n; ++j) {
              std::vector<int> nt;
              Simp fx = x.face(s, j);
              if (j == 0) {
                fx = action.act(t[0], fx);
                nt.assign(t.begin() + 1, t.end());
              } else if (j == n) {
                nt.assign(t.begin(), t.end() - 1);
              } else {
                nt = t;
                nt[j - 1] = g.mul(t[j], t[j - 1]);
                nt.erase(nt.begin() + j);
              }
              faces.push_back(normalize(fx, nt));
            }
          }
          b.add(n, key, label(key), faces);
          return;
        }
        for (int a = 0; a < g.order(); ++a) {
          if (a == e && ((s.mask >> pos) & 1u)) continue;
          t[pos] = a;
          rec(pos + 1);
        }
      };
      rec(0);
    }
  }
  return std::move(b.set);
}

ReduceOrbitsResult reduce_orbits(const GroupAction& action, const std::vector<std::vector<bool>>& sub_in,
                                 int max_degree) {
  const SimpSet& x = *action.space();
  const FiniteGroup& g = action.group();
  auto sub = subcomplex_closure(x, sub_in);
  for (int k = 0; k <= x.dim(); ++k)
    for (int i = 0; i < x.count(k); ++i)
      if (sub_in.size() > static_cast<size_t>(k) && i < static_cast<int>(sub_in[k].size()) && !sub_in[k][i] && sub[k][i])
        throw Error("NotSubcomplex", "Y is not closed under faces at " + x.label(k, i));
  std::vector<int> h;
  for (int a = 0; a < g.order(); ++a) {
    bool some = false, all = true;
    for (int k = 0; k <= x.dim(); ++k)
      for (int i = 0; i < x.count(k); ++i) {
        if (!sub[k][i] || (k == 0 && i == 0)) continue;
        bool in = sub[k][i] && sub[k][action.act_nd(a, k, i)];
        some = some || in;
        all = all && in;
      }
    if (some && !all)
      throw Error("ConditionsFail", "element " + g.label(a) + " moves part of Y into Y but not all of it");
    if (all) h.push_back(a);
  }
  for (int k = 0; k <= x.dim(); ++k)
    for (int i = 0; i < x.count(k); ++i) {
      bool hit = false;
      for (int a = 0; a < g.order() && !hit; ++a) hit = sub[k][action.act_nd(a, k, i)];
      if (!hit) throw Error("ConditionsFail", "no group element moves " + x.label(k, i) + " into Y");
    }
  // Y as a simplicial set, and H as a group
  SimpSet y(x.label(0, 0));
  std::vector<std::vector<int>> reindex(x.dim() + 1);
  for (int k = 0; k <= x.dim(); ++k) {
    reindex[k].assign(x.count(k), -1);
    for (int i = 0; i < x.count(k); ++i) {
      if (!sub[k][i]) continue;
      if (k == 0 && i == 0) {
        reindex[0][0] = 0;
        continue;
      }
      std::vector<Simp> faces;
      for (auto f : x.faces(k, i)) {
        f.nd = reindex[f.nd_deg()][f.nd];
        faces.push_back(f);
      }
      reindex[k][i] = y.add(k, x.label(k, i), faces);
    }
  }
  std::vector<int> pos(g.order(), -1);
  for (size_t j = 0; j < h.size(); ++j) pos[h[j]] = static_cast<int>(j);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(h.size(), std::vector<int>(h.size()));
  std::vector<int> chr;
  for (size_t a = 0; a < h.size(); ++a) {
    labels.push_back(g.label(h[a]));
    chr.push_back(g.det(h[a]));
    for (size_t c = 0; c < h.size(); ++c) table[a][c] = pos[g.mul(h[a], h[c])];
  }
  FiniteGroup hg(labels, table, chr);
  auto yp = std::make_shared<SimpSet>(y);
  GroupAction ya(yp, hg);
  for (size_t a = 0; a < h.size(); ++a) {
    std::vector<std::vector<int>> perm(y.dim() + 1);
    for (int k = 0; k <= x.dim(); ++k)
      for (int i = 0; i < x.count(k); ++i)
        if (reindex[k][i] >= 0) {
          if (static_cast<int>(perm[k].size()) <= reindex[k][i]) perm[k].resize(reindex[k][i] + 1);
          perm[k][reindex[k][i]] = reindex[k][action.act_nd(h[a], k, i)];
        }
    ya.set(static_cast<int>(a), perm);
  }
  ReduceOrbitsResult r{h, hg, homotopy_orbits(ya, max_degree)};
  return r;
}

}  // namespace scissors
