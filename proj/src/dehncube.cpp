#include "scissors/dehncube.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace scissors {

std::string IndexObject::str() const {
  std::string s = "(" + std::to_string(b);
  for (int a : parts) s += "," + std::to_string(a);
  return s + ")";
}

std::vector<int> IndexObject::factor_dims() const {
  std::vector<int> out{b};
  for (int a : parts) out.push_back(a - 1);
  return out;
}

// ---------------------------------------------------------------------------
// index cubes

std::vector<int> CubeIndex::cuts(int mask) const {
  std::vector<int> out;
  for (int k = 0; k < m(); ++k)
    if (mask >> k & 1) out.push_back(cut_of_bit[k]);
  std::sort(out.begin(), out.end());
  return out;
}

int CubeIndex::mask_of(const IndexObject& a) const {
  auto it = std::find(objects.begin(), objects.end(), a);
  return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

std::pair<int, int> CubeIndex::split(int mask, int bit) const {
  int l = cut_of_bit[bit];
  int factor = 0, prev = -1;
  for (int c : cuts(mask))
    if (c < l) ++factor, prev = c;
  return {factor, l - prev - 1};
}

CubeIndex cut_index(int d, std::vector<int> cuts) {
  if (d < 1) throw Error("InvalidIndex", "d must be positive");
  CubeIndex r;
  r.d = d;
  for (int c : cuts)
    if (c < 0 || c >= d) throw Error("InvalidIndex", "cut outside 0..d-1");
  r.cut_of_bit = std::move(cuts);
  for (int mask = 0; mask < r.vertices(); ++mask) {
    auto cs = r.cuts(mask);
    IndexObject o;
    if (cs.empty()) {
      o.b = d;
    } else {
      o.b = cs[0];
      for (size_t k = 1; k < cs.size(); ++k) o.parts.push_back(cs[k] - cs[k - 1]);
      o.parts.push_back(d - cs.back());
    }
    r.objects.push_back(o);
    for (int bit = 0; bit < r.m(); ++bit)
      if (!(mask >> bit & 1)) r.morphisms.push_back({mask, mask | 1 << bit, bit, r.direction(bit)});
  }
  return r;
}

CubeIndex enumerate_index(int d, bool hat) {
  std::vector<int> cuts;
  if (hat)
    for (int r = 1; r <= d; ++r) cuts.push_back(d - r);
  else
    for (int r = 2; r <= d - 1; r += 2) cuts.push_back(d - r);
  CubeIndex idx = cut_index(d, cuts);
  idx.hat = hat;
  return idx;
}

// ---------------------------------------------------------------------------
// flag spaces and cubes

FlagSpacePtr build_flag_space(FamilyPtr fam, const IndexObject& a) {
  auto ds = decompositions(*fam, fam->whole(), a.factor_dims());
  return build_flag_join(std::move(fam), std::move(ds));
}

JSpace build_J(FamilyPtr fam, const IndexObject& a) {
  JSpace j;
  j.object = a;
  auto ss = std::make_shared<SimpSet>(circle_Ssigma());
  for (auto& dc : decompositions(*fam, fam->whole(), a.factor_dims())) {
    JSummand s;
    s.decomp = dc;
    std::vector<SimpSetPtr> with, without;
    for (size_t k = 0; k < dc.size(); ++k) {
      s.flags.push_back(build_F(fam, dc[k]));
      with.push_back(ss);
      if (k) without.push_back(ss);
      with.push_back(s.flags.back()->space);
      without.push_back(s.flags.back()->space);
    }
    s.smash = std::make_shared<MultiSmash>(smash_many(with));
    s.space = SimpSetPtr(s.smash, &s.smash->space);
    j.summands.push_back(std::move(s));
    j.plain.push_back(std::make_shared<MultiSmash>(smash_many(without)));
  }
  std::vector<const SimpSet*> parts;
  for (auto& p : j.plain) parts.push_back(&p->space);
  j.wedge = std::make_shared<WedgeResult>(wedge(parts));
  j.space = SimpSetPtr(j.wedge, &j.wedge->space);
  return j;
}

const SimpSet& DehnCube::vertex_space(int mask) const {
  return with_ssigma ? *smashed[mask].space : *flags[mask]->space;
}

const SimpMap& DehnCube::edge_map_at(int mask, int bit) const {
  return with_ssigma ? *smashed_maps.at({mask, bit}) : *maps.at({mask, bit});
}

CubeDiagram DehnCube::chains(int max_degree) const {
  CubeDiagram c;
  c.m = index.m();
  for (int mask = 0; mask < index.vertices(); ++mask) c.vertices.push_back(normalized_chains(vertex_space(mask), max_degree));
  for (auto& mor : index.morphisms) c.edges[{mor.from, mor.bit}] = induced_chain_map(edge_map_at(mor.from, mor.bit), max_degree);
  return c;
}

CheckReport check_cube_squares(const DehnCube& cube) {
  const auto& idx = cube.index;
  for (int mask = 0; mask < idx.vertices(); ++mask)
    for (int i = 0; i < idx.m(); ++i)
      for (int j = i + 1; j < idx.m(); ++j) {
        if (mask >> i & 1 || mask >> j & 1) continue;
        const SimpMap& a1 = *cube.maps.at({mask, i});
        const SimpMap& a2 = *cube.maps.at({mask | 1 << i, j});
        const SimpMap& b1 = *cube.maps.at({mask, j});
        const SimpMap& b2 = *cube.maps.at({mask | 1 << j, i});
        const SimpSet& x = *cube.flags[mask]->space;
        for (int k = 0; k <= x.dim(); ++k)
          for (int id = 0; id < x.count(k); ++id) {
            Simp s = SimpSet::nd(k, id);
            if (a2(a1(s)) != b2(b1(s))) {
              auto [dc, seq] = cube.flags[mask]->cells[k][id];
              return {false, "square at " + idx.objects[mask].str() + " in directions " +
                                 std::to_string(idx.direction(i)) + "," + std::to_string(idx.direction(j)) +
                                 " fails on " + cube.flags[mask]->str(dc, seq)};
            }
          }
      }
  return {};
}

DehnCube build_dehn_cube(FamilyPtr fam, const CubeIndex& index, bool with_ssigma) {
  if (fam->dim(fam->whole()) != index.d) throw Error("InvalidIndex", "cube dimension differs from the family");
  DehnCube c;
  c.fam = fam;
  c.index = index;
  c.with_ssigma = with_ssigma;
  for (int mask = 0; mask < index.vertices(); ++mask) c.flags.push_back(build_flag_space(fam, index.objects[mask]));
  for (auto& mor : index.morphisms) {
    auto [factor, local] = index.split(mor.from, mor.bit);
    c.maps[{mor.from, mor.bit}] =
        std::make_shared<SimpMap>(dehn_map(c.flags[mor.from], c.flags[mor.to], factor, local));
  }
  auto rep = check_cube_squares(c);
  if (!rep.ok) throw Error("NonCommutingSquare", rep.message);
  if (with_ssigma) {
    for (int mask = 0; mask < index.vertices(); ++mask) c.smashed.push_back(smash_ssigma(c.flags[mask]));
    for (auto& mor : index.morphisms) {
      const SmashedF& s = c.smashed[mor.from];
      const SmashedF& t = c.smashed[mor.to];
      SimpMap id(s.ssigma, t.ssigma);
      for (int k = 0; k <= s.ssigma->dim(); ++k)
        for (int i = 0; i < s.ssigma->count(k); ++i) id.set(k, i, SimpSet::nd(k, i));
      c.smashed_maps[{mor.from, mor.bit}] =
          std::make_shared<SimpMap>(smash_maps(s.space, *s.data, t.space, *t.data, id, *c.maps[{mor.from, mor.bit}]));
    }
  }
  return c;
}

HatCubeReport verify_Zid(FamilyPtr fam) {
  HatCubeReport r;
  int d = fam->dim(fam->whole());
  auto cube = build_dehn_cube(fam, enumerate_index(d, true), true);
  r.homology = nonzero(homology(total_complex(cube.chains())));
  r.ok = r.homology.size() == 1 && r.homology[0].degree == d + 1 && r.homology[0].rank == 1 &&
         r.homology[0].torsion.empty();
  if (!r.ok) {
    r.message = "total complex homology:";
    for (auto& h : r.homology) r.message += " " + h.str();
  }
  return r;
}

SubcubeCofiberReport subcube_cofiber_check(FamilyPtr fam, std::vector<int> dims) {
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  SubcubeCofiberReport r;
  int d = fam->dim(fam->whole());
  auto iso = dehn_composite_iso(fam, dims);
  r.bijective = iso.report.ok;
  auto cube = build_dehn_cube(fam, cut_index(d, dims), false);
  r.total = nonzero(homology(total_complex(cube.chains())));
  auto n = nonzero(homology(normalized_chains(*build_N_I(fam, dims)->space)));
  for (auto& h : n) {
    h.degree += static_cast<int>(dims.size());
    r.expected.push_back(h);
  }
  r.ok = r.bijective && r.total == r.expected;
  if (!r.bijective) r.message = iso.report.message;
  else if (!r.ok) r.message = "total complex homology differs from the shifted N_I homology";
  return r;
}

// ---------------------------------------------------------------------------
// J^Ā → F^Ā

std::pair<Int, Int> FCompareReport::multiplier() const {
  Int den = 1;
  den <<= static_cast<unsigned>(object.parts.size());
  return {Int(1), den};
}

SimpMap f_A_map(const JSummand& src, const SmashedF& dst) {
  const MultiSmash& ms = *src.smash;
  const SimpSet& ss = *ms.factors[0];
  SimpMap out(src.space, dst.space);
  const FlagSpace& target = *dst.f;
  int dc = target.find_decomp(src.decomp);
  if (dc < 0) throw Error("BuildError", "target lacks the decomposition");
  for (int n = 0; n <= src.space->dim(); ++n)
    for (int id = 0; id < src.space->count(n); ++id) {
      if (n == 0 && id == 0) {
        out.set(0, 0, dst.space->base(0));
        continue;
      }
      const auto& parts = ms.coords[n][id];
      Simp base = dst.space->base(n);
      auto [sign, pos] = circle_label(ss, parts[0]);
      auto first = src.flags[0]->sequence(parts[1]);
      if (pos == 0 || first.first < 0) {
        out.set(n, id, base);
        continue;
      }
      std::vector<int> seq = first.second;
      bool dead = false;
      for (size_t k = 1; k < src.flags.size() && !dead; ++k) {
        auto [sb, ib] = circle_label(ss, parts[2 * k]);
        auto y = src.flags[k]->sequence(parts[2 * k + 1]);
        if (ib <= 0 || y.first < 0) {
          dead = true;
          break;
        }
        sign *= sb;
        // front of the accumulated join on vertices 0..ib-1, back of the new factor on ib..n
        std::copy(y.second.begin() + ib, y.second.end(), seq.begin() + ib);
      }
      if (dead) {
        out.set(n, id, base);
        continue;
      }
      Simp x = target.simplex(dc, seq);
      out.set(n, id, dst.data->pair(*dst.ssigma, *target.space, ssigma_simplex(n, sign, pos), x));
    }
  return out;
}

namespace {

bool scaled_unimodular(const IntMat& m, int rows, int cols, const Int& scale) {
  if (rows != cols) return false;
  IntMat q = m;
  for (auto& row : q)
    for (auto& v : row) {
      if (v % scale != 0) return false;
      v /= scale;
    }
  if (rows == 0) return true;
  auto s = smith(q, rows, cols, false);
  if (s.rank() != rows) return false;
  for (auto& v : s.divisors)
    if (abs(v) != 1) return false;
  return true;
}

}  // namespace

FCompareReport compare_f_A(FamilyPtr fam, const IndexObject& a) {
  FCompareReport r;
  r.object = a;
  int d = fam->dim(fam->whole());
  auto j = build_J(fam, a);
  Int scale = 1;
  scale <<= static_cast<unsigned>(a.parts.size());
  r.ok = true;
  for (auto& s : j.summands) {
    auto dst = smash_ssigma(build_flag_join(fam, {s.decomp}));
    SimpMap f = f_A_map(s, dst);
    if (auto msg = f.check()) throw Error("BuildError", "f_A is not simplicial: " + *msg);
    ChainComplex cs = normalized_chains(*s.space), ct = normalized_chains(*dst.space);
    HomologyBasis hs(cs, d + 1), ht(ct, d + 1);
    FCompareSummand out;
    out.decomp = s.decomp;
    out.scale = scale;
    out.matrix = free_part(induced_homology(hs, ht, induced_chain_map(f)), hs, ht);
    out.unimodular = scaled_unimodular(out.matrix, ht.rank(), hs.rank(), scale);
    if (!out.unimodular && r.ok) {
      r.ok = false;
      r.message = "H_" + std::to_string(d + 1) + " map on a summand is not " + scale.get_str() + " times unimodular";
    }
    r.summands.push_back(std::move(out));
  }
  return r;
}

// ---------------------------------------------------------------------------
// twisted model

ChainComplex twisted_shift(const ChainComplex& c) {
  std::vector<int> ranks{0};
  for (int n = 0; n <= c.top(); ++n) ranks.push_back(c.rank(n));
  ChainComplex s(ranks);
  for (int n = 0; n <= c.top(); ++n) {
    s.labels(n + 1) = c.labels(n);
    if (n == 0) continue;
    for (int col = 0; col < c.rank(n); ++col)
      for (auto& [row, v] : c.d(n).col[col]) s.d_mut(n + 1).add(row, col, -v);
  }
  return s;
}

ChainMap twisted_shift_map(const ChainMap& f) {
  ChainMap out;
  out.f.push_back(SparseMatrix(0, 0));
  for (auto& m : f.f) out.f.push_back(m);
  return out;
}

ChainAction twisted_shift_action(const ChainAction& a) {
  ChainAction out{a.group, {}};
  for (int g = 0; g < a.group.order(); ++g) {
    ChainMap m = twisted_shift_map(a.maps[g]);
    if (a.group.det(g) < 0)
      for (auto& s : m.f)
        for (auto& col : s.col)
          for (auto& [row, v] : col) v = -v;
    out.maps.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dehn complex

SparseVec DehnComplexData::coordinates(int mask, const SparseVec& orbit_cycle) const {
  auto c = bases[mask]->coordinates(orbit_cycle);
  SparseVec out;
  auto [deg, off] = provenance_offsets[mask];
  (void)deg;
  const auto& fr = free_generators[mask];
  for (size_t k = 0; k < fr.size(); ++k)
    if (c[fr[k]] != 0) out[off + static_cast<int>(k)] = c[fr[k]];
  return out;
}

DehnComplexData dehn_complex(FamilyPtr fam, const FiniteGroup& g, int truncate, Coeff coeff) {
  DehnComplexData r;
  r.fam = fam;
  r.group = g;
  r.d = fam->dim(fam->whole());
  int d = r.d;
  r.truncate = truncate < 0 ? d + 2 : truncate;
  if (r.truncate < d + 2) throw Error("InvalidTruncation", "truncation must be at least d + 2");
  r.coeff = coeff;
  r.index = enumerate_index(d, false);
  auto cube = build_dehn_cube(fam, r.index, false);
  r.flags = cube.flags;
  int nv = r.index.vertices();
  r.orbit_cube.m = r.index.m();
  std::vector<ChainComplex> shifted(nv);
  for (int mask = 0; mask < nv; ++mask) {
    shifted[mask] = twisted_shift(normalized_chains(*r.flags[mask]->space));
    auto act = twisted_shift_action(chain_action(r.flags[mask]->action(g)));
    r.orbits.push_back(std::make_shared<OrbitComplex>(orbit_chains(shifted[mask], act, r.truncate)));
    r.orbit_cube.vertices.push_back(r.orbits.back()->complex);
    r.bases.push_back(std::make_shared<HomologyBasis>(r.orbits.back()->complex, d + 1));
    r.free_generators.push_back(r.bases.back()->free_indices());
    auto h = homology(r.orbits.back()->complex, coeff, d + 1);
    r.vertex_homology.push_back(h[d + 1]);
  }
  CubeDiagram groups;
  groups.m = r.index.m();
  for (int mask = 0; mask < nv; ++mask)
    groups.vertices.push_back(ChainComplex({static_cast<int>(r.free_generators[mask].size())}));
  for (auto& mor : r.index.morphisms) {
    ChainMap fm = twisted_shift_map(induced_chain_map(*cube.maps.at({mor.from, mor.bit})));
    ChainMap om = orbit_map(*r.orbits[mor.from], *r.orbits[mor.to], fm, r.truncate);
    r.orbit_cube.edges[{mor.from, mor.bit}] = om;
    IntMat h = free_part(induced_homology(*r.bases[mor.from], *r.bases[mor.to], om), *r.bases[mor.from],
                         *r.bases[mor.to]);
    ChainMap gm;
    gm.f.push_back(SparseMatrix::from_dense(h, static_cast<int>(r.free_generators[mor.from].size())));
    gm.f.back().rows = static_cast<int>(r.free_generators[mor.to].size());
    groups.edges[{mor.from, mor.bit}] = gm;
  }
  TotalLayout lay;
  r.complex = total_complex(groups, &lay);
  r.provenance_offsets.assign(nv, {0, 0});
  for (int n = 0; n < static_cast<int>(lay.blocks.size()); ++n)
    for (auto& [e, q, off] : lay.blocks[n]) r.provenance_offsets[e] = {n, off};
  for (int n = 0; n <= r.complex.top(); ++n)
    for (int k = 0; k < r.complex.rank(n); ++k) {
      // labels come from total_complex as "[mask]" plus the vertex label; replace with the object name
      auto& lab = r.complex.labels(n)[k];
      int mask = std::stoi(lab.substr(1, lab.find(']') - 1));
      lab = r.index.objects[mask].str() + "#" + std::to_string(k - r.provenance_offsets[mask].second);
    }
  r.homology = homology(r.complex, coeff);
  r.pages = cube_ss(r.orbit_cube, coeff);
  int m = r.index.m();
  r.bottom_row_matches = true;
  r.below_row_vanishes = true;
  for (int p = 0; p <= m; ++p) {
    const HomologyGroup* e1 = r.pages[0].at(p, d + 1);
    int rank1 = e1 ? e1->rank : 0;
    if (rank1 != r.complex.rank(p)) r.bottom_row_matches = false;
    if (r.pages.size() > 1) {
      const HomologyGroup* e2 = r.pages[1].at(p, d + 1);
      int rank2 = e2 ? e2->rank : 0;
      int hr = p < static_cast<int>(r.homology.size()) ? r.homology[p].rank : 0;
      if (rank2 != hr) r.bottom_row_matches = false;
    }
    for (int q = 0; q <= d; ++q) {
      const HomologyGroup* e = r.pages[0].at(p, q);
      if (e && !e->zero()) r.below_row_vanishes = false;
    }
  }
  if (!r.bottom_row_matches) r.message = "cube spectral sequence bottom row differs from the Dehn complex";
  else if (!r.below_row_vanishes) r.message = "cube spectral sequence has entries below row d+1";
  return r;
}

// ---------------------------------------------------------------------------
// edge map

std::vector<QVec> edge_points(const FiniteGroup& g, const std::vector<int>& tuple, const QVec& x0) {
  if (!g.has_matrices()) throw Error("BuildError", "group has no matrices");
  int d = static_cast<int>(tuple.size());
  std::vector<QVec> pts;
  QMat h = identity_matrix(static_cast<int>(x0.size()));
  for (int i = 0; i < d; ++i) {
    h = matmul(h, g.matrix(tuple[d - 1 - i]));  // g_d ⋯ g_{d-i}
    pts.push_back(matvec(h, x0));
  }
  pts.push_back(x0);
  return pts;
}

namespace {

int tuple_det(const FiniteGroup& g, const std::vector<int>& tuple) {
  int s = 1;
  for (int a : tuple) s *= g.det(a);
  return s;
}

}  // namespace

SparseVec edge_map(const FlagSpace& f, const FiniteGroup& g, const std::vector<int>& tuple, const QVec& x0) {
  int d = f.fam->geometry()->dim();
  if (static_cast<int>(tuple.size()) != d) throw Error("BuildError", "tuple length must equal the dimension");
  auto pts = edge_points(g, tuple, x0);
  if (rank(QMat(pts.begin(), pts.end())) != d + 1)
    throw Error("DegenerateConfiguration", "vertices do not span X");
  SparseVec c = flag_class(f, pts);
  if (tuple_det(g, tuple) < 0)
    for (auto& [k, v] : c) v = -v;
  return c;
}

SparseVec edge_map_chain(const FlagSpace& f, const FiniteGroup& g, const std::map<std::vector<int>, Int>& chain,
                         const QVec& x0) {
  int d = f.fam->geometry()->dim();
  SparseVec out;
  for (auto& [t, m] : chain) {
    auto pts = edge_points(g, t, x0);
    if (rank(QMat(pts.begin(), pts.end())) != d + 1) continue;
    axpy(out, m, edge_map(f, g, t, x0));
  }
  return out;
}

EdgeReport edge_to_dehn(const DehnComplexData& data, const std::map<std::vector<int>, Int>& chain, const QVec& x0) {
  EdgeReport r;
  int d = data.d;
  SparseVec c = edge_map_chain(*data.flags[0], data.group, chain, x0);
  const OrbitComplex& oc = *data.orbits[0];
  SparseVec oc_chain;
  for (auto& [x, v] : c) {
    int id = oc.find(d + 1, OrbitGenerator{{}, d + 1, x});
    if (id < 0) throw Error("BuildError", "orbit generator missing");
    oc_chain[id] = v;
  }
  if (!oc.complex.boundary(d + 1, oc_chain).empty()) {
    r.message = "edge image is not a cycle of the homotopy orbits";
    return r;
  }
  r.dehn_chain = data.coordinates(0, oc_chain);
  int top = data.index.m();
  r.cycle = top == 0 || data.complex.boundary(top, r.dehn_chain).empty();
  r.ok = r.cycle;
  if (!r.ok) r.message = "edge image is not a cycle of the Dehn complex";
  return r;
}

// ---------------------------------------------------------------------------
// bar chains

namespace {

using BarChain = std::map<std::vector<int>, Int>;

std::vector<std::vector<int>> bar_tuples(const FiniteGroup& g, int deg, bool normalized) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(deg);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == deg) {
      out.push_back(t);
      return;
    }
    for (int a = 0; a < g.order(); ++a) {
      if (normalized && a == g.identity()) continue;
      t[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

// Twisted bar boundary; d_0 carries det(g_1), merges are g_{l+1} g_l.
BarChain bar_boundary(const FiniteGroup& g, const std::vector<int>& t, const Int& m, bool normalized) {
  BarChain out;
  int q = static_cast<int>(t.size());
  auto put = [&](std::vector<int> s, const Int& v) {
    if (normalized && std::find(s.begin(), s.end(), g.identity()) != s.end()) return;
    auto& e = out[s];
    e += v;
    if (e == 0) out.erase(s);
  };
  if (q == 0) return out;
  put(std::vector<int>(t.begin() + 1, t.end()), m * g.det(t[0]));
  for (int l = 1; l < q; ++l) {
    auto s = t;
    s[l - 1] = g.mul(t[l], t[l - 1]);
    s.erase(s.begin() + l);
    put(s, l % 2 ? -m : m);
  }
  put(std::vector<int>(t.begin(), t.end() - 1), q % 2 ? -m : m);
  return out;
}

void add_into(BarChain& a, const BarChain& b, const Int& s = 1) {
  for (auto& [k, v] : b) {
    auto& e = a[k];
    e += s * v;
    if (e == 0) a.erase(k);
  }
}

std::vector<BarChain> kernel_basis(const FiniteGroup& g, int deg, bool normalized) {
  auto src = bar_tuples(g, deg, normalized);
  auto dst = bar_tuples(g, deg - 1, normalized);
  std::map<std::vector<int>, int> row;
  for (size_t i = 0; i < dst.size(); ++i) row[dst[i]] = static_cast<int>(i);
  IntMat m(dst.size(), std::vector<Int>(src.size(), 0));
  for (size_t c = 0; c < src.size(); ++c)
    for (auto& [t, v] : bar_boundary(g, src[c], 1, normalized)) m[row.at(t)][c] += v;
  auto s = smith(m, static_cast<int>(dst.size()), static_cast<int>(src.size()));
  std::vector<BarChain> out;
  for (size_t c = s.rank(); c < src.size(); ++c) {
    BarChain v;
    for (size_t i = 0; i < src.size(); ++i)
      if (s.right[i][c] != 0) v[src[i]] = s.right[i][c];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BarChain> random_combinations(const std::vector<BarChain>& basis, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<BarChain> out;
  if (basis.empty()) {
    out.assign(count, {});
    return out;
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1), coef(-2, 2);
  for (int k = 0; k < count; ++k) {
    BarChain c;
    for (int t = 0; t < 3; ++t) {
      int v = coef(rng);
      if (v) add_into(c, basis[pick(rng)], v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<std::map<std::vector<int>, Int>> random_bar_cycles(const FiniteGroup& g, int deg, int count,
                                                               unsigned seed) {
  return random_combinations(kernel_basis(g, deg, true), count, seed);
}

std::vector<std::map<std::vector<int>, Int>> random_bar_boundaries(const FiniteGroup& g, int deg, int count,
                                                                   unsigned seed) {
  std::vector<BarChain> gens;
  for (auto& t : bar_tuples(g, deg + 1, true)) {
    auto b = bar_boundary(g, t, 1, true);
    if (!b.empty()) gens.push_back(std::move(b));
  }
  return random_combinations(gens, count, seed);
}

// ---------------------------------------------------------------------------
// symbolic double complex

namespace {

// (g_1..g_j){p_1|...|p_i} with points stored sorted; antisymmetric in points.
using Sym = std::pair<std::vector<int>, std::vector<int>>;
using SymChain = std::map<Sym, Int>;

struct PointSet {
  std::vector<QVec> pts;
  std::map<QVec, int> id;
  std::vector<std::vector<int>> act;  // act[g][p]
};

PointSet orbit_points(const FiniteGroup& g, const QVec& x) {
  PointSet ps;
  ps.pts.push_back(x);
  ps.id[x] = 0;
  for (size_t k = 0; k < ps.pts.size(); ++k)
    for (int a = 0; a < g.order(); ++a) {
      QVec y = matvec(g.matrix(a), ps.pts[k]);
      if (!ps.id.count(y)) {
        ps.id[y] = static_cast<int>(ps.pts.size());
        ps.pts.push_back(y);
      }
    }
  ps.act.assign(g.order(), std::vector<int>(ps.pts.size()));
  for (int a = 0; a < g.order(); ++a)
    for (size_t p = 0; p < ps.pts.size(); ++p) ps.act[a][p] = ps.id.at(matvec(g.matrix(a), ps.pts[p]));
  return ps;
}

void add_sym(SymChain& c, std::vector<int> tuple, std::vector<int> pts, Int v) {
  if (v == 0) return;
  // sort with sign
  for (size_t a = 1; a < pts.size(); ++a)
    for (size_t b = a; b > 0 && pts[b - 1] >= pts[b]; --b) {
      if (pts[b - 1] == pts[b]) return;
      std::swap(pts[b - 1], pts[b]);
      v = -v;
    }
  Sym key{std::move(tuple), std::move(pts)};
  auto& e = c[key];
  e += v;
  if (e == 0) c.erase(key);
}

void add_chain(SymChain& a, const SymChain& b, int s = 1) {
  for (auto& [k, v] : b) add_sym(a, k.first, k.second, v * s);
}

SymChain dh(const SymChain& c) {
  SymChain out;
  for (auto& [k, v] : c)
    for (size_t l = 0; l < k.second.size(); ++l) {
      auto p = k.second;
      p.erase(p.begin() + l);
      add_sym(out, k.first, p, l % 2 ? -v : v);
    }
  return out;
}

SymChain dv(const SymChain& c, const FiniteGroup& g, const PointSet& ps) {
  SymChain out;
  for (auto& [k, v] : c) {
    const auto& t = k.first;
    int j = static_cast<int>(t.size());
    if (j == 0) continue;
    std::vector<int> moved;
    for (int p : k.second) moved.push_back(ps.act[t[0]][p]);
    add_sym(out, std::vector<int>(t.begin() + 1, t.end()), moved, v * g.det(t[0]));
    for (int l = 1; l < j; ++l) {
      auto s = t;
      s[l - 1] = g.mul(t[l], t[l - 1]);
      s.erase(s.begin() + l);
      add_sym(out, s, k.second, l % 2 ? -v : v);
    }
    add_sym(out, std::vector<int>(t.begin(), t.end() - 1), k.second, j % 2 ? -v : v);
  }
  return out;
}

SymChain cone(const SymChain& c, int x) {
  SymChain out;
  for (auto& [k, v] : c) {
    std::vector<int> p{x};
    p.insert(p.end(), k.second.begin(), k.second.end());
    add_sym(out, k.first, p, v);
  }
  return out;
}

// Greedy generating set.
std::vector<int> generators_of(const FiniteGroup& g) {
  std::vector<int> gens;
  std::set<int> sub{g.identity()};
  for (int a = 0; a < g.order() && static_cast<int>(sub.size()) < g.order(); ++a) {
    if (sub.count(a)) continue;
    gens.push_back(a);
    std::vector<int> frontier(sub.begin(), sub.end());
    for (size_t k = 0; k < frontier.size(); ++k)
      for (int s : gens) {
        int p = g.mul(s, frontier[k]);
        if (sub.insert(p).second) frontier.push_back(p);
      }
  }
  return gens;
}

void subsets(int n, int k, std::vector<int>& cur, int start, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, cur, i + 1, out);
    cur.pop_back();
  }
}

}  // namespace

TechReport tech_identity_check(int d, const FiniteGroup& g, const QVec& x, int trials, unsigned seed) {
  if (d < 1) throw Error("BuildError", "d must be positive");
  TechReport r;
  auto ps = orbit_points(g, x);
  int np = static_cast<int>(ps.pts.size());
  // relations det(h) h z - z for horizontal cycles z on d points, h a generator
  std::vector<std::vector<int>> dsets, dsets1;
  std::vector<int> cur;
  subsets(np, d, cur, 0, dsets);
  subsets(np, d + 1, cur, 0, dsets1);
  std::map<std::vector<int>, int> row;
  for (size_t i = 0; i < dsets.size(); ++i) row[dsets[i]] = static_cast<int>(i);
  auto gens = generators_of(g);
  IntMat rel(dsets.size());
  int ncols = 0;
  for (auto& s : dsets1) {
    SymChain w;
    add_sym(w, {}, s, 1);
    SymChain z = dh(w);
    for (int h : gens) {
      SymChain t;
      for (auto& [k, v] : z) {
        std::vector<int> moved;
        for (int p : k.second) moved.push_back(ps.act[h][p]);
        add_sym(t, {}, moved, v * g.det(h));
      }
      add_chain(t, z, -1);
      for (auto& rw : rel) rw.push_back(0);
      for (auto& [k, v] : t) rel[row.at(k.second)][ncols] = v;
      ++ncols;
    }
  }
  int nrows = static_cast<int>(dsets.size());
  auto sf = smith(rel, nrows, ncols);
  auto member = [&](const SymChain& c) {
    std::vector<Int> b(nrows, 0);
    for (auto& [k, v] : c) {
      if (!k.first.empty()) return false;
      b[row.at(k.second)] = v;
    }
    for (int i = 0; i < nrows; ++i) {
      Int y = 0;
      for (int k = 0; k < nrows; ++k) y += sf.left[i][k] * b[k];
      if (i < sf.rank() ? y % sf.divisors[i] != 0 : y != 0) return false;
    }
    return true;
  };

  auto cycles = random_combinations(kernel_basis(g, d, false), trials, seed);
  int only_plus = 0, only_minus = 0;
  for (auto& sigma : cycles) {
    ++r.trials;
    SymChain a;
    for (auto& [t, m] : sigma) add_sym(a, t, {0}, m);
    std::vector<SymChain> stair{a};  // a_1 .. a_d
    SymChain s0;
    for (auto& [t, m] : sigma) add_sym(s0, t, {}, m);
    bool ok = dh(a) == s0;
    for (int k = 1; k < d; ++k) {
      SymChain v = dv(stair.back(), g, ps);
      SymChain next = cone(v, 0);
      ok &= dh(next) == v;
      stair.push_back(next);
    }
    if (!ok) ++r.staircase_failures;
    // α^λ = a_{d+1-λ}; with ∂ = ∂^h + ∂^v the telescoped boundary is (-1)^d ∂^h α^d - ∂^v α^1
    SymChain total, rhs, literal;
    for (int lam = 1; lam <= d; ++lam) {
      const SymChain& al = stair[d - lam];
      int s = lam % 2 ? -1 : 1;
      add_chain(total, dh(al), s);
      add_chain(total, dv(al, g, ps), s);
    }
    SymChain top_h = dh(stair[0]), bottom_v = dv(stair[d - 1], g, ps);
    add_chain(rhs, top_h, d % 2 ? -1 : 1);
    add_chain(rhs, bottom_v, -1);
    add_chain(literal, top_h, d % 2 ? -1 : 1);
    add_chain(literal, bottom_v, 1);
    if (total != rhs) ++r.identity_failures;
    if (total == literal) ++r.literal_identity_holds;
    // closed formula: det(Π g) ∂^h{x | g_d x | g_d g_{d-1} x | ... | Π_1^d x}
    SymChain formula;
    for (auto& [t, m] : sigma) {
      std::vector<int> pts{0};
      int h = g.identity(), det = 1;
      for (int i = d - 1; i >= 0; --i) {
        h = g.mul(h, t[i]);
        det *= g.det(t[i]);
        pts.push_back(ps.act[h][0]);
      }
      SymChain w;
      add_sym(w, {}, pts, m * det);
      add_chain(formula, dh(w));
    }
    bool fit[2];
    for (int k = 0; k < 2; ++k) {
      SymChain diff = bottom_v;
      add_chain(diff, formula, k ? 1 : -1);
      fit[k] = member(diff);
    }
    if (!fit[0] && !fit[1]) ++r.formula_failures;
    else if (!fit[1]) ++only_plus;
    else if (!fit[0]) ++only_minus;
  }
  if (only_plus && !only_minus) r.sign = 1;
  if (only_minus && !only_plus) r.sign = -1;
  r.discriminating = only_plus + only_minus;
  bool conflict = only_plus && only_minus;
  r.ok = r.staircase_failures == 0 && r.identity_failures == 0 && r.formula_failures == 0 && !conflict;
  if (!r.ok)
    r.message = "staircase failures " + std::to_string(r.staircase_failures) + ", identity failures " +
                std::to_string(r.identity_failures) + ", formula failures " + std::to_string(r.formula_failures) +
                (conflict ? ", conflicting signs" : "");
  return r;
}

}  // namespace scissors
