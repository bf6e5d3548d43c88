#pragma once

#include <string>
#include <vector>

#include "scissors/exactlin.hpp"

namespace scissors {

// Finite group given by an explicit multiplication table, with a ±1 character
// (the determinant when the group is realised by isometries).
class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table,
              std::vector<int> character = {});

  // Closure of a set of exact isometries under multiplication.
  static FiniteGroup generated_by(const std::vector<QMat>& generators, int max_order = 4096);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  // ℤ/2 acting by its nontrivial character.
  static FiniteGroup z2_sign();
  // Abstract dihedral group of order 2n: rotations r^k, reflections s r^k; character is ±1 on them.
  static FiniteGroup dihedral(int n);

  int order() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int det(int a) const { return character_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& character() const { return character_; }
  bool has_matrices() const { return !matrices_.empty(); }
  const QMat& matrix(int a) const { return matrices_[a]; }
  void set_matrices(std::vector<QMat> m);
  FiniteGroup with_character(std::vector<int> character) const;

 private:
  void validate();
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  std::vector<int> character_;
  std::vector<int> inverse_;
  std::vector<QMat> matrices_;
  int identity_ = 0;
};

}  // namespace scissors
