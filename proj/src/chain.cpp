#include "scissors/chain.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace scissors {

void SparseMatrix::add(int r, int c, const Int& v) {
  if (v == 0) return;
  auto& e = col[c][r];
  e += v;
  if (e == 0) col[c].erase(r);
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec y;
  for (auto& [j, v] : x) axpy(y, v, col[j]);
  return y;
}

IntMat SparseMatrix::dense() const {
  IntMat m(rows, std::vector<Int>(cols, 0));
  for (int j = 0; j < cols; ++j)
    for (auto& [i, v] : col[j]) m[i][j] = v;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMat& m, int cols_if_empty) {
  int r = static_cast<int>(m.size());
  int c = r ? static_cast<int>(m[0].size()) : cols_if_empty;
  SparseMatrix s(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (m[i][j] != 0) s.col[j][i] = m[i][j];
  return s;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw Error("DimensionMismatch", "matrix product shapes differ");
  SparseMatrix c(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) c.col[j] = a.apply(b.col[j]);
  return c;
}

void axpy(SparseVec& y, const Int& a, const SparseVec& x) {
  if (a == 0) return;
  for (auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SmithWork {
  IntMat a, l, li, r, ri;
  int rows, cols;
  bool tr;

  void row_add(int i, int j, const Int& k) {  // row_i += k row_j
    for (int c = 0; c < cols; ++c)
      if (a[j][c] != 0) a[i][c] += k * a[j][c];
    if (!tr) return;
    for (int c = 0; c < rows; ++c)
      if (l[j][c] != 0) l[i][c] += k * l[j][c];
    for (int c = 0; c < rows; ++c)
      if (li[c][i] != 0) li[c][j] -= k * li[c][i];
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (!tr) return;
    std::swap(l[i], l[j]);
    for (int c = 0; c < rows; ++c) std::swap(li[c][i], li[c][j]);
  }
  void row_neg(int i) {
    for (auto& v : a[i]) v = -v;
    if (!tr) return;
    for (auto& v : l[i]) v = -v;
    for (int c = 0; c < rows; ++c) li[c][i] = -li[c][i];
  }
  void col_add(int i, int j, const Int& k) {  // col_i += k col_j
    for (int c = 0; c < rows; ++c)
      if (a[c][j] != 0) a[c][i] += k * a[c][j];
    if (!tr) return;
    for (int c = 0; c < cols; ++c)
      if (r[c][j] != 0) r[c][i] += k * r[c][j];
    for (int c = 0; c < cols; ++c)
      if (ri[i][c] != 0) ri[j][c] -= k * ri[i][c];
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < rows; ++c) std::swap(a[c][i], a[c][j]);
    if (!tr) return;
    for (int c = 0; c < cols; ++c) std::swap(r[c][i], r[c][j]);
    std::swap(ri[i], ri[j]);
  }
};

IntMat identity_int(int n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithForm smith(const IntMat& m, int rows, int cols, bool transforms) {
  SmithWork w{m, {}, {}, {}, {}, rows, cols, transforms};
  if (static_cast<int>(w.a.size()) != rows) throw Error("DimensionMismatch", "smith: row count");
  if (transforms) {
    w.l = w.li = identity_int(rows);
    w.r = w.ri = identity_int(cols);
  }
  SmithForm out;
  int t = 0;
  while (t < std::min(rows, cols)) {
    // pivot: nonzero entry of least absolute value
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (w.a[i][j] != 0 && (pi < 0 || abs(w.a[i][j]) < abs(w.a[pi][pj]))) pi = i, pj = j;
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i)
        if (w.a[i][t] != 0) {
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
          w.row_add(i, t, -q);
          if (w.a[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < cols; ++j)
        if (w.a[t][j] != 0) {
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
          w.col_add(j, t, -q);
          if (w.a[t][j] != 0) clean = false;
        }
      if (!clean) {
        int bi = t, bj = t;
        for (int i = t + 1; i < rows; ++i)
          if (w.a[i][t] != 0 && abs(w.a[i][t]) < abs(w.a[bi][bj])) bi = i, bj = t;
        for (int j = t + 1; j < cols; ++j)
          if (w.a[t][j] != 0 && abs(w.a[t][j]) < abs(w.a[bi][bj])) bi = t, bj = j;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.row_add(t, bad, 1);
    }
    if (w.a[t][t] < 0) w.row_neg(t);
    out.divisors.push_back(w.a[t][t]);
    ++t;
  }
  if (transforms) {
    out.left = std::move(w.l);
    out.left_inv = std::move(w.li);
    out.right = std::move(w.r);
    out.right_inv = std::move(w.ri);
  }
  return out;
}

// ---------------------------------------------------------------------------
// chain complexes

ChainComplex::ChainComplex(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  d_.resize(ranks_.size());
  labels_.resize(ranks_.size());
  for (int n = 0; n <= top(); ++n) d_[n] = SparseMatrix(n ? ranks_[n - 1] : 0, ranks_[n]);
}

const SparseMatrix& ChainComplex::d(int n) const {
  if (n < 0 || n > top()) return empty_;
  return d_[n];
}

std::string ChainComplex::label(int n, int i) const {
  if (n >= 0 && n <= top() && i < static_cast<int>(labels_[n].size())) return labels_[n][i];
  return "c" + std::to_string(n) + "_" + std::to_string(i);
}

std::optional<std::string> ChainComplex::check() const {
  for (int n = 2; n <= top(); ++n)
    for (int j = 0; j < rank(n); ++j) {
      auto dd = d(n - 1).apply(d(n).col[j]);
      if (!dd.empty()) return "boundary squared is nonzero on " + label(n, j);
    }
  return std::nullopt;
}

SparseVec ChainMap::apply(int n, const SparseVec& x) const {
  if (n < 0 || n >= static_cast<int>(f.size())) return {};
  return f[n].apply(x);
}

std::optional<std::string> check_chain_map(const ChainComplex& c, const ChainComplex& d, const ChainMap& f) {
  for (int n = 0; n <= c.top(); ++n)
    for (int j = 0; j < c.rank(n); ++j) {
      SparseVec x{{j, 1}};
      SparseVec lhs = d.boundary(n, f.apply(n, x));
      SparseVec rhs = f.apply(n - 1, c.boundary(n, x));
      if (lhs != rhs) return "chain map fails to commute with the boundary on " + c.label(n, j);
    }
  return std::nullopt;
}

std::string coeff_name(Coeff c) {
  switch (c) {
    case Coeff::Z: return "z";
    case Coeff::Zhalf: return "zhalf";
    case Coeff::Q: return "q";
  }
  return "?";
}

Coeff parse_coeff(const std::string& s) {
  if (s == "z" || s == "Z") return Coeff::Z;
  if (s == "zhalf" || s == "Zhalf") return Coeff::Zhalf;
  if (s == "q" || s == "Q") return Coeff::Q;
  throw Error("InputError", "unknown coefficient ring '" + s + "'");
}

std::string HomologyGroup::str() const {
  std::ostringstream os;
  bool any = false;
  if (rank) os << "Z" << (rank > 1 ? "^" + std::to_string(rank) : ""), any = true;
  for (auto& t : torsion) os << (any ? " + " : "") << "Z/" << t, any = true;
  if (!any) os << "0";
  return os.str();
}

std::vector<Int> adjust_torsion(std::vector<Int> divisors, Coeff c) {
  std::vector<Int> out;
  if (c == Coeff::Q) return out;
  for (auto& d : divisors) {
    Int v = abs(d);
    if (c == Coeff::Zhalf)
      while (v % 2 == 0 && v != 0) v /= 2;
    if (v > 1) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HomologyGroup> nonzero(const std::vector<HomologyGroup>& h) {
  std::vector<HomologyGroup> out;
  for (auto& g : h)
    if (!g.zero()) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------------------
// reduction

ReducedComplex::ReducedComplex(const ChainComplex& c, bool track) {
  int top = c.top();
  cols_.resize(top + 1);
  std::vector<std::vector<std::set<int>>> rows(top + 1);
  std::vector<std::vector<char>> alive(top + 1);
  for (int n = 0; n <= top; ++n) {
    cols_[n] = c.d(n).col;
    alive[n].assign(c.rank(n), 1);
    rows[n].resize(c.rank(n - 1));
    for (int j = 0; j < c.rank(n); ++j)
      for (auto& [i, v] : cols_[n][j]) rows[n][i].insert(j);
  }
  for (int n = 1; n <= top; ++n) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<int> order;
      for (int j = 0; j < c.rank(n); ++j)
        if (alive[n][j] && !cols_[n][j].empty()) order.push_back(j);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return cols_[n][x].size() < cols_[n][y].size(); });
      for (int a : order) {
        if (!alive[n][a]) continue;
        int b = -1;
        size_t best = 0;
        for (auto& [i, v] : cols_[n][a])
          if ((v == 1 || v == -1) && (b < 0 || rows[n][i].size() < best)) b = i, best = rows[n][i].size();
        if (b < 0) continue;
        progress = true;
        Step st;
        st.deg_b = n - 1;
        st.a = a;
        st.b = b;
        st.c = cols_[n][a].at(b);
        SparseVec col_a = cols_[n][a];
        std::vector<int> others(rows[n][b].begin(), rows[n][b].end());
        for (int x : others) {
          if (x == a) continue;
          Int lambda = cols_[n][x].at(b);
          if (track) st.row_b.push_back({x, lambda});
          Int k = -lambda * st.c;
          for (auto& [i, v] : col_a) {
            auto it = cols_[n][x].find(i);
            if (it == cols_[n][x].end()) {
              cols_[n][x].emplace(i, k * v);
              rows[n][i].insert(x);
            } else {
              it->second += k * v;
              if (it->second == 0) {
                cols_[n][x].erase(it);
                rows[n][i].erase(x);
              }
            }
          }
        }
        for (auto& [i, v] : cols_[n][a]) rows[n][i].erase(a);
        cols_[n][a].clear();
        alive[n][a] = 0;
        alive[n - 1][b] = 0;
        if (n + 1 <= top) {
          for (int x : rows[n + 1][a]) cols_[n + 1][x].erase(a);
          rows[n + 1][a].clear();
        }
        for (auto& [i, v] : cols_[n - 1][b]) rows[n - 1][i].erase(b);
        cols_[n - 1][b].clear();
        if (track) {
          st.col_a = std::move(col_a);
          steps_.push_back(std::move(st));
        }
      }
    }
  }
  survivors_.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    for (int j = 0; j < c.rank(n); ++j)
      if (alive[n][j]) survivors_[n].push_back(j);
}

IntMat ReducedComplex::residual(int n) const {
  if (n <= 0 || n > top()) {
    int r = n <= 0 ? 0 : static_cast<int>(survivors_[n - 1].size());
    return IntMat(r, std::vector<Int>());
  }
  const auto& rs = survivors_[n - 1];
  const auto& cs = survivors_[n];
  std::map<int, int> rpos;
  for (size_t i = 0; i < rs.size(); ++i) rpos[rs[i]] = static_cast<int>(i);
  IntMat m(rs.size(), std::vector<Int>(cs.size(), 0));
  for (size_t j = 0; j < cs.size(); ++j)
    for (auto& [i, v] : cols_[n][cs[j]]) m[rpos.at(i)][j] = v;
  return m;
}

SparseVec ReducedComplex::project(int n, SparseVec x) const {
  for (auto& st : steps_) {
    if (st.deg_b == n) {
      auto it = x.find(st.b);
      if (it != x.end()) {
        Int beta = it->second;
        axpy(x, -beta * st.c, st.col_a);
      }
    } else if (st.deg_b + 1 == n) {
      x.erase(st.a);
    }
  }
  return x;
}

SparseVec ReducedComplex::lift(int n, SparseVec y) const {
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->deg_b + 1 != n) continue;
    Int s = 0;
    for (auto& [x, lambda] : it->row_b) {
      auto f = y.find(x);
      if (f != y.end()) s += f->second * lambda;
    }
    if (s != 0) axpy(y, -s * it->c, SparseVec{{it->a, 1}});
  }
  return y;
}

std::vector<HomologyGroup> homology(const ChainComplex& c, Coeff coeff, int max_degree) {
  ReducedComplex red(c, false);
  int top = c.top();
  if (max_degree >= 0) top = std::min(top, max_degree);
  std::vector<int> rk(c.top() + 2, 0);
  std::vector<std::vector<Int>> divs(c.top() + 2);
  for (int n = 1; n <= std::min(c.top(), top + 1); ++n) {
    IntMat m = red.residual(n);
    int rows = static_cast<int>(red.survivors(n - 1).size());
    int cols = static_cast<int>(red.survivors(n).size());
    if (rows == 0 || cols == 0) continue;
    auto s = smith(m, rows, cols, false);
    rk[n] = s.rank();
    divs[n] = s.divisors;
  }
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= top; ++n) {
    HomologyGroup g;
    g.degree = n;
    g.rank = static_cast<int>(red.survivors(n).size()) - rk[n] - rk[n + 1];
    g.torsion = adjust_torsion(divs[n + 1], coeff);
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// subquotients and explicit homology

Subquotient::Subquotient(const IntMat& kernel_of, int ambient, const IntMat& rel, int nrel) : ambient_(ambient) {
  int krows = static_cast<int>(kernel_of.size());
  IntMat right, right_inv;
  int rk = 0;
  if (krows > 0 && ambient > 0) {
    auto s = smith(kernel_of, krows, ambient, true);
    rk = s.rank();
    right = std::move(s.right);
    right_inv = std::move(s.right_inv);
  } else {
    right = right_inv = identity_int(ambient);
  }
  ker_rank_ = ambient - rk;
  kernel_right_inv_.assign(right_inv.begin() + rk, right_inv.end());
  // relations in kernel coordinates
  IntMat bc(ker_rank_, std::vector<Int>(nrel, 0));
  for (int i = 0; i < ker_rank_; ++i)
    for (int j = 0; j < nrel; ++j) {
      Int s = 0;
      for (int k = 0; k < ambient; ++k)
        if (kernel_right_inv_[i][k] != 0 && rel[k][j] != 0) s += kernel_right_inv_[i][k] * rel[k][j];
      bc[i][j] = s;
    }
  IntMat l, li;
  std::vector<Int> divs;
  if (ker_rank_ > 0 && nrel > 0) {
    auto s2 = smith(bc, ker_rank_, nrel, true);
    l = std::move(s2.left);
    li = std::move(s2.left_inv);
    divs = s2.divisors;
  } else {
    l = li = identity_int(ker_rank_);
  }
  rel_left_ = l;
  for (int i = 0; i < ker_rank_; ++i) {
    Int order = i < static_cast<int>(divs.size()) ? divs[i] : Int(0);
    if (order == 1) continue;
    keep_.push_back(i);
    orders_.push_back(order);
    std::vector<Int> g(ambient, 0);
    for (int k = 0; k < ker_rank_; ++k)
      if (li[k][i] != 0)
        for (int a = 0; a < ambient; ++a)
          if (right[a][rk + k] != 0) g[a] += right[a][rk + k] * li[k][i];
    gens_.push_back(std::move(g));
  }
}

std::vector<Int> Subquotient::coordinates(const std::vector<Int>& x) const {
  std::vector<Int> kappa(ker_rank_, 0);
  for (int i = 0; i < ker_rank_; ++i)
    for (int k = 0; k < ambient_; ++k)
      if (x[k] != 0 && kernel_right_inv_[i][k] != 0) kappa[i] += kernel_right_inv_[i][k] * x[k];
  std::vector<Int> out;
  for (size_t t = 0; t < keep_.size(); ++t) {
    Int v = 0;
    for (int k = 0; k < ker_rank_; ++k)
      if (rel_left_[keep_[t]][k] != 0) v += rel_left_[keep_[t]][k] * kappa[k];
    if (orders_[t] != 0) {
      v %= orders_[t];
      if (v < 0) v += orders_[t];
    }
    out.push_back(v);
  }
  return out;
}

int Subquotient::rank() const {
  return static_cast<int>(std::count(orders_.begin(), orders_.end(), Int(0)));
}

std::vector<Int> Subquotient::torsion() const {
  std::vector<Int> t;
  for (auto& o : orders_)
    if (o != 0) t.push_back(o);
  return t;
}

HomologyBasis::HomologyBasis(const ChainComplex& c, int n) : n_(n) {
  red_ = std::make_shared<ReducedComplex>(c, true);
  init(c);
}

HomologyBasis::HomologyBasis(std::shared_ptr<const ReducedComplex> red, const ChainComplex& c, int n)
    : n_(n), red_(std::move(red)) {
  init(c);
}

void HomologyBasis::init(const ChainComplex&) {
  int amb = n_ >= 0 && n_ <= red_->top() ? static_cast<int>(red_->survivors(n_).size()) : 0;
  IntMat k = red_->residual(n_);
  int nrel = n_ + 1 <= red_->top() ? static_cast<int>(red_->survivors(n_ + 1).size()) : 0;
  IntMat rel = n_ + 1 <= red_->top() ? red_->residual(n_ + 1) : IntMat(amb, std::vector<Int>());
  if (nrel == 0) rel.assign(amb, std::vector<Int>());
  quotient_ = std::make_unique<Subquotient>(k, amb, rel, nrel);
}

std::vector<int> HomologyBasis::free_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (orders()[i] == 0) out.push_back(i);
  return out;
}

SparseVec HomologyBasis::generator(int i) const {
  SparseVec y;
  const auto& surv = red_->survivors(n_);
  const auto& g = quotient_->generators()[i];
  for (size_t k = 0; k < surv.size(); ++k)
    if (g[k] != 0) y[surv[k]] = g[k];
  return red_->lift(n_, y);
}

std::vector<Int> HomologyBasis::coordinates(const SparseVec& cycle) const {
  SparseVec p = red_->project(n_, cycle);
  const auto& surv = red_->survivors(n_);
  std::vector<Int> x(surv.size(), 0);
  for (size_t k = 0; k < surv.size(); ++k) {
    auto it = p.find(surv[k]);
    if (it != p.end()) x[k] = it->second;
  }
  return quotient_->coordinates(x);
}

IntMat induced_homology(const HomologyBasis& src, const HomologyBasis& dst, const ChainMap& f) {
  IntMat m(dst.size(), std::vector<Int>(src.size(), 0));
  for (int j = 0; j < src.size(); ++j) {
    auto c = dst.coordinates(f.apply(src.degree(), src.generator(j)));
    for (int i = 0; i < dst.size(); ++i) m[i][j] = c[i];
  }
  return m;
}

IntMat free_part(const IntMat& m, const HomologyBasis& src, const HomologyBasis& dst) {
  auto fs = src.free_indices(), fd = dst.free_indices();
  IntMat out(fd.size(), std::vector<Int>(fs.size(), 0));
  for (size_t i = 0; i < fd.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) out[i][j] = m[fd[i]][fs[j]];
  return out;
}

ChainComplex mapping_cone(const ChainComplex& c, const ChainComplex& d, const ChainMap& f) {
  int top = std::max(c.top() + 1, d.top());
  std::vector<int> ranks(top + 1);
  for (int n = 0; n <= top; ++n) ranks[n] = c.rank(n - 1) + d.rank(n);
  ChainComplex k(ranks);
  for (int n = 1; n <= top; ++n) {
    auto& m = k.d_mut(n);
    int off_src = c.rank(n - 1), off_dst = c.rank(n - 2);
    for (int j = 0; j < c.rank(n - 1); ++j) {
      for (auto& [i, v] : c.d(n - 1).col[j]) m.add(i, j, -v);
      if (n - 1 < static_cast<int>(f.f.size()))
        for (auto& [i, v] : f.f[n - 1].col[j]) m.add(off_dst + i, j, v);
    }
    for (int j = 0; j < d.rank(n); ++j)
      for (auto& [i, v] : d.d(n).col[j]) m.add(off_dst + i, off_src + j, v);
  }
  return k;
}

bool is_quasi_iso(const ChainComplex& c, const ChainComplex& d, const ChainMap& f, Coeff coeff) {
  auto h = homology(mapping_cone(c, d, f), coeff);
  for (auto& g : h)
    if (!g.zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// simplicial chains

int chain_index(const SimpSet&, const Simp& s) {
  if (!s.nondegenerate()) return -1;
  if (s.deg == 0) return s.nd == 0 ? -1 : s.nd - 1;
  return s.nd;
}

SparseVec simplex_chain(const SimpSet& x, const Simp& s, int sign) {
  int i = chain_index(x, s);
  if (i < 0) return {};
  return SparseVec{{i, sign}};
}

ChainComplex normalized_chains(const SimpSet& x, int max_degree) {
  int top = x.dim();
  if (max_degree >= 0) top = std::min(top, max_degree);
  std::vector<int> ranks(top + 1);
  for (int n = 0; n <= top; ++n) ranks[n] = x.count(n) - (n == 0 ? 1 : 0);
  ChainComplex c(ranks);
  for (int n = 0; n <= top; ++n) {
    auto& lab = c.labels(n);
    for (int i = (n == 0 ? 1 : 0); i < x.count(n); ++i) lab.push_back(x.label(n, i));
    if (n == 0) continue;
    for (int i = 0; i < x.count(n); ++i) {
      const auto& faces = x.faces(n, i);
      for (int j = 0; j <= n; ++j) {
        int r = chain_index(x, faces[j]);
        if (r >= 0) c.d_mut(n).add(r, i, j % 2 ? -1 : 1);
      }
    }
  }
  return c;
}

ChainMap induced_chain_map(const SimpMap& f, int max_degree) {
  const SimpSet& x = *f.source();
  const SimpSet& y = *f.target();
  int top = x.dim();
  if (max_degree >= 0) top = std::min(top, max_degree);
  ChainMap m;
  for (int n = 0; n <= top; ++n) {
    SparseMatrix s(y.count(n) - (n == 0 ? 1 : 0), x.count(n) - (n == 0 ? 1 : 0));
    if (n > y.dim()) s.rows = 0;
    for (int i = (n == 0 ? 1 : 0); i < x.count(n); ++i) {
      int r = chain_index(y, f.image(n, i));
      if (r >= 0) s.add(r, chain_index(x, SimpSet::nd(n, i)), 1);
    }
    m.f.push_back(std::move(s));
  }
  return m;
}

SparseVec cross(const SimpSet& x, const SimpSet& y, const SmashResult& xy, const Simp& a, const Simp& b) {
  SparseVec out;
  if (x.is_base(a) || y.is_base(b)) return out;
  int p = a.deg, q = b.deg, n = p + q;
  // choose the positions mu (size p); a is degenerated at the complement
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + p, true);
  do {
    uint32_t mu = 0, nu = 0;
    int inversions = 0, seen_mu = 0;
    for (int k = 0; k < n; ++k) {
      if (pick[k]) {
        mu |= 1u << k;
        inversions += k - seen_mu;
        ++seen_mu;
      } else {
        nu |= 1u << k;
      }
    }
    Simp da{n, nu, a.nd};  // a and b are nondegenerate
    Simp db{n, mu, b.nd};
    Simp s = xy.pair(x, y, da, db);
    int idx = chain_index(xy.space, s);
    if (idx >= 0) axpy(out, inversions % 2 ? -1 : 1, SparseVec{{idx, 1}});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

SparseVec cross(const SimpSet& x, const SimpSet& y, const SmashResult& xy, int p, const SparseVec& u, int q,
                const SparseVec& v) {
  SparseVec out;
  for (auto& [i, cu] : u)
    for (auto& [j, cv] : v) {
      Simp a = SimpSet::nd(p, p == 0 ? i + 1 : i);
      Simp b = SimpSet::nd(q, q == 0 ? j + 1 : j);
      axpy(out, cu * cv, cross(x, y, xy, a, b));
    }
  return out;
}

// ---------------------------------------------------------------------------
// cubes

const ChainMap& CubeDiagram::edge(int eps, int j) const {
  auto it = edges.find({eps, j});
  if (it == edges.end()) throw Error("BuildError", "cube edge missing");
  return it->second;
}

namespace {

bool same_map(const ChainMap& a, const ChainMap& b, int top) {
  for (int n = 0; n <= top; ++n) {
    bool ea = n >= static_cast<int>(a.f.size()), eb = n >= static_cast<int>(b.f.size());
    if (ea && eb) continue;
    int cols = ea ? b.f[n].cols : a.f[n].cols;
    for (int j = 0; j < cols; ++j) {
      SparseVec x{{j, 1}};
      if (a.apply(n, x) != b.apply(n, x)) return false;
    }
  }
  return true;
}

ChainMap compose(const ChainMap& second, const ChainMap& first) {
  ChainMap out;
  for (size_t n = 0; n < first.f.size(); ++n) {
    if (n >= second.f.size()) {
      out.f.push_back(SparseMatrix(0, first.f[n].cols));
      continue;
    }
    out.f.push_back(multiply(second.f[n], first.f[n]));
  }
  return out;
}

}  // namespace

std::optional<std::string> CubeDiagram::check() const {
  int nv = 1 << m;
  if (static_cast<int>(vertices.size()) != nv) return "cube needs 2^m vertices";
  for (int e = 0; e < nv; ++e)
    for (int j = 0; j < m; ++j) {
      if (e >> j & 1) continue;
      auto it = edges.find({e, j});
      if (it == edges.end()) return "missing edge at vertex " + std::to_string(e) + " direction " + std::to_string(j);
      if (auto msg = check_chain_map(vertices[e], vertices[e | 1 << j], it->second))
        return "edge " + std::to_string(e) + "/" + std::to_string(j) + ": " + *msg;
    }
  for (int e = 0; e < nv; ++e)
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        if ((e >> i & 1) || (e >> j & 1)) continue;
        auto p1 = compose(edge(e | 1 << i, j), edge(e, i));
        auto p2 = compose(edge(e | 1 << j, i), edge(e, j));
        if (!same_map(p1, p2, vertices[e].top()))
          return "NonCommutingSquare at vertex " + std::to_string(e) + " directions " + std::to_string(i) + "," +
                 std::to_string(j);
      }
  return std::nullopt;
}

ChainComplex total_complex(const CubeDiagram& cube, TotalLayout* layout) {
  if (auto msg = cube.check()) throw Error("NonCommutingSquare", *msg);
  int m = cube.m, nv = 1 << m;
  int top = 0;
  for (auto& v : cube.vertices) top = std::max(top, v.top());
  top += m;
  TotalLayout lay;
  lay.blocks.resize(top + 1);
  lay.filtration.resize(top + 1);
  std::vector<int> ranks(top + 1, 0);
  std::map<std::pair<int, int>, int> offset;  // (vertex, q) -> offset in its total degree
  for (int n = 0; n <= top; ++n)
    for (int e = 0; e < nv; ++e) {
      int p = m - std::popcount(static_cast<unsigned>(e));
      int q = n - p;
      if (q < 0 || q > cube.vertices[e].top()) continue;
      lay.blocks[n].push_back({e, q, ranks[n]});
      offset[{e, q}] = ranks[n];
      for (int k = 0; k < cube.vertices[e].rank(q); ++k) lay.filtration[n].push_back(p);
      ranks[n] += cube.vertices[e].rank(q);
    }
  ChainComplex tot(ranks);
  for (int n = 0; n <= top; ++n)
    for (auto& [e, q, off] : lay.blocks[n]) {
      const auto& v = cube.vertices[e];
      int p = m - std::popcount(static_cast<unsigned>(e));
      for (int k = 0; k < v.rank(q); ++k) {
        tot.labels(n).push_back("[" + std::to_string(e) + "]" + v.label(q, k));
        if (n == 0) continue;
        if (q > 0) {
          int o = offset.at({e, q - 1});
          for (auto& [i, c] : v.d(q).col[k]) tot.d_mut(n).add(o + i, off + k, p % 2 ? -c : c);
        }
        for (int j = 0; j < m; ++j) {
          if (e >> j & 1) continue;
          int t = e | 1 << j;
          auto it = offset.find({t, q});
          if (it == offset.end()) continue;
          int sign = std::popcount(static_cast<unsigned>(e & ((1 << j) - 1))) % 2 ? -1 : 1;
          const auto& f = cube.edge(e, j);
          if (q >= static_cast<int>(f.f.size())) continue;
          for (auto& [i, c] : f.f[q].col[k]) tot.d_mut(n).add(it->second + i, off + k, sign * c);
        }
      }
    }
  if (layout) *layout = std::move(lay);
  return tot;
}

const HomologyGroup* SSPage::at(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

// Columns spanning {x ∈ ℤ^N : K x = 0}.
IntMat kernel_columns(const IntMat& k, int n) {
  int r = static_cast<int>(k.size());
  if (r == 0 || n == 0) return identity_int(n);
  auto s = smith(k, r, n, true);
  IntMat out(n, std::vector<Int>());
  for (int c = s.rank(); c < n; ++c)
    for (int a = 0; a < n; ++a) out[a].push_back(s.right[a][c]);
  return out;
}

struct FiltrationData {
  const ChainComplex* tot;
  const TotalLayout* lay;
  // generators of degree n with filtration <= p
  std::vector<int> gens(int n, int p) const {
    std::vector<int> g;
    if (n < 0 || n > tot->top()) return g;
    for (size_t i = 0; i < lay->filtration[n].size(); ++i)
      if (lay->filtration[n][i] <= p) g.push_back(static_cast<int>(i));
    return g;
  }
  // K: rows = degree n-1 generators with filtration > p - r, cols = gens(n, p)
  IntMat cycle_condition(int n, int p, int r) const {
    auto cols = gens(n, p);
    IntMat k;
    if (n == 0) return k;
    std::map<int, int> rowpos;
    for (size_t i = 0; i < lay->filtration[n - 1].size(); ++i)
      if (lay->filtration[n - 1][i] > p - r) rowpos[static_cast<int>(i)] = static_cast<int>(rowpos.size());
    k.assign(rowpos.size(), std::vector<Int>(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
      for (auto& [i, v] : tot->d(n).col[cols[j]]) {
        auto it = rowpos.find(i);
        if (it != rowpos.end()) k[it->second][j] = v;
      }
    return k;
  }
  // basis of Z^r_p in degree n, as full-length vectors of Tot_n
  std::vector<SparseVec> z(int n, int p, int r) const {
    auto cols = gens(n, p);
    auto kc = kernel_columns(cycle_condition(n, p, r), static_cast<int>(cols.size()));
    std::vector<SparseVec> out;
    int nb = cols.empty() ? 0 : static_cast<int>(kc[0].size());
    for (int c = 0; c < nb; ++c) {
      SparseVec v;
      for (size_t a = 0; a < cols.size(); ++a)
        if (kc[a][c] != 0) v[cols[a]] = kc[a][c];
      out.push_back(v);
    }
    return out;
  }
};

}  // namespace

std::vector<SSPage> cube_ss(const CubeDiagram& cube, Coeff coeff) {
  TotalLayout lay;
  ChainComplex tot = total_complex(cube, &lay);
  FiltrationData fd{&tot, &lay};
  int m = cube.m;
  std::vector<SSPage> pages;
  for (int r = 1; r <= m + 1; ++r) {
    SSPage page;
    page.r = r;
    std::map<std::pair<int, int>, std::unique_ptr<Subquotient>> quot;
    std::map<std::pair<int, int>, std::vector<int>> amb;
    for (int n = 0; n <= tot.top(); ++n)
      for (int p = 0; p <= m; ++p) {
        auto cols = fd.gens(n, p);
        IntMat k = fd.cycle_condition(n, p, r);
        std::vector<SparseVec> rel = fd.z(n, p - 1, r - 1);
        for (auto& v : fd.z(n + 1, p + r - 1, r - 1)) rel.push_back(tot.boundary(n + 1, v));
        std::map<int, int> pos;
        for (size_t a = 0; a < cols.size(); ++a) pos[cols[a]] = static_cast<int>(a);
        IntMat relm(cols.size(), std::vector<Int>(rel.size(), 0));
        for (size_t j = 0; j < rel.size(); ++j)
          for (auto& [i, v] : rel[j]) relm[pos.at(i)][j] = v;
        auto sq = std::make_unique<Subquotient>(k, static_cast<int>(cols.size()), relm, static_cast<int>(rel.size()));
        HomologyGroup g;
        g.degree = n;
        g.rank = sq->rank();
        g.torsion = adjust_torsion(sq->torsion(), coeff);
        page.entries[{p, n - p}] = g;
        quot[{n, p}] = std::move(sq);
        amb[{n, p}] = cols;
      }
    for (auto& [key, sq] : quot) {
      auto [n, p] = key;
      auto tgt = quot.find({n - 1, p - r});
      if (tgt == quot.end() || sq->size() == 0) continue;
      const auto& tcols = amb[{n - 1, p - r}];
      std::map<int, int> tpos;
      for (size_t a = 0; a < tcols.size(); ++a) tpos[tcols[a]] = static_cast<int>(a);
      IntMat dm(tgt->second->size(), std::vector<Int>(sq->size(), 0));
      const auto& scols = amb[key];
      for (int g = 0; g < sq->size(); ++g) {
        SparseVec x;
        for (size_t a = 0; a < scols.size(); ++a)
          if (sq->generators()[g][a] != 0) x[scols[a]] = sq->generators()[g][a];
        SparseVec bx = tot.boundary(n, x);
        std::vector<Int> v(tcols.size(), 0);
        for (auto& [i, c] : bx) v[tpos.at(i)] = c;
        auto co = tgt->second->coordinates(v);
        for (size_t i = 0; i < co.size(); ++i) dm[i][g] = co[i];
      }
      page.differentials[{p, n - p}] = dm;
    }
    pages.push_back(std::move(page));
  }
  return pages;
}

GradedSummary summarize(const std::vector<HomologyGroup>& groups) {
  GradedSummary s;
  for (auto& g : groups) {
    s.rank += g.rank;
    for (auto t : g.torsion) {
      Int p = 2;
      while (t > 1) {
        if (p * p > t) {
          s.prime_exponents[t] += 1;
          break;
        }
        while (t % p == 0) t /= p, s.prime_exponents[p] += 1;
        p += 1;
      }
    }
  }
  return s;
}

}  // namespace scissors
