#include "scissors/group.hpp"

#include <map>

namespace scissors {

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table,
                         std::vector<int> character)
    : labels_(std::move(labels)), table_(std::move(table)), character_(std::move(character)) {
  if (character_.empty()) character_.assign(labels_.size(), 1);
  validate();
}

void FiniteGroup::validate() {
  int n = order();
  if (n == 0) throw Error("InvalidGroup", "empty group");
  if (static_cast<int>(table_.size()) != n || static_cast<int>(character_.size()) != n)
    throw Error("InvalidGroup", "table/character size mismatch");
  for (auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error("InvalidGroup", "table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("InvalidGroup", "table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error("InvalidGroup", "no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error("InvalidGroup", "multiplication is not associative");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0) throw Error("InvalidGroup", "element without inverse");
  for (int a = 0; a < n; ++a) {
    if (character_[a] != 1 && character_[a] != -1) throw Error("InvalidGroup", "character must be ±1");
    for (int b = 0; b < n; ++b)
      if (character_[table_[a][b]] != character_[a] * character_[b])
        throw Error("InvalidGroup", "character is not multiplicative");
  }
}

FiniteGroup FiniteGroup::generated_by(const std::vector<QMat>& generators, int max_order) {
  if (generators.empty()) throw Error("InvalidGroup", "no generators");
  int n = static_cast<int>(generators[0].size());
  std::vector<QMat> elems{identity_matrix(n)};
  std::map<QMat, int> index{{elems[0], 0}};
  for (size_t k = 0; k < elems.size(); ++k)
    for (auto& g : generators) {
      QMat p = matmul(g, elems[k]);
      if (!index.count(p)) {
        if (static_cast<int>(elems.size()) >= max_order) throw Error("InvalidGroup", "group too large");
        index[p] = static_cast<int>(elems.size());
        elems.push_back(p);
      }
    }
  int m = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  std::vector<int> chr(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = "g" + std::to_string(a);
    chr[a] = determinant(elems[a]) > 0 ? 1 : -1;
    for (int b = 0; b < m; ++b) {
      auto it = index.find(matmul(elems[a], elems[b]));
      if (it == index.end()) throw Error("InvalidGroup", "generators do not close");
      table[a][b] = it->second;
    }
  }
  FiniteGroup g(labels, table, chr);
  g.matrices_ = std::move(elems);
  return g;
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels[a] = "r" + std::to_string(a);
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(labels, table);
}

FiniteGroup FiniteGroup::z2_sign() { return FiniteGroup({"e", "t"}, {{0, 1}, {1, 0}}, {1, -1}); }

FiniteGroup FiniteGroup::dihedral(int n) {
  // element k < n is r^k, element n + k is s r^k; s r^k s = r^{-k}
  int m = 2 * n;
  std::vector<std::string> labels(m);
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  std::vector<int> chr(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = (a < n ? "r" : "sr") + std::to_string(a % n);
    chr[a] = a < n ? 1 : -1;
    for (int b = 0; b < m; ++b) {
      int fa = a / n, ka = a % n, fb = b / n, kb = b % n;
      // (s^fa r^ka)(s^fb r^kb) = s^(fa+fb) r^(±ka + kb)
      int k = ((fb ? -ka : ka) + kb) % n;
      if (k < 0) k += n;
      table[a][b] = ((fa + fb) % 2) * n + k;
    }
  }
  return FiniteGroup(labels, table, chr);
}

void FiniteGroup::set_matrices(std::vector<QMat> m) {
  if (static_cast<int>(m.size()) != order()) throw Error("InvalidGroup", "matrix count mismatch");
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (matmul(m[a], m[b]) != m[table_[a][b]]) throw Error("InvalidGroup", "matrices do not follow the table");
  matrices_ = std::move(m);
}

FiniteGroup FiniteGroup::with_character(std::vector<int> character) const {
  FiniteGroup g(labels_, table_, std::move(character));
  g.matrices_ = matrices_;
  return g;
}

}  // namespace scissors
