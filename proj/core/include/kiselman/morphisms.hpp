#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kiselman/core.hpp"

namespace kiselman {

// Square 0/1 matrix, rows and columns indexed 1..size.
class BoolMatrix {
 public:
  explicit BoolMatrix(unsigned size);
  static BoolMatrix identity(unsigned size);
  static BoolMatrix ones(unsigned size);
  // Diagonal matrix with a 1 at (i, i) exactly for i in X.
  static BoolMatrix diagonal(const IndexSet& X);
  // One row per line, each row a string of 0/1 digits.
  static BoolMatrix parse(std::string_view text);

  unsigned size() const noexcept { return size_; }
  bool at(unsigned row, unsigned col) const;
  void set(unsigned row, unsigned col, bool value);
  // {row : entry(row, col) = 1}
  IndexSet column_set(unsigned col) const;

  std::string to_string() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  unsigned size_;
  std::vector<std::uint8_t> entries_;  // row-major
};

// True iff no rows x < y and columns i < j pick out [[0,1],[1,0]].
bool dn_member(const BoolMatrix& M);

// Boolean matrix product C_ij = OR_k (A_ik AND B_kj).
BoolMatrix dn_product(const BoolMatrix& A, const BoolMatrix& B);

// An endomorphism psi of K_n, given by its matrix: psi(a_i) = e_{X_i} where
// X_i is column i's support. Construction rejects matrices outside D_n.
class EndomorphismSpec {
 public:
  explicit EndomorphismSpec(BoolMatrix matrix);

  const BoolMatrix& matrix() const noexcept { return matrix_; }
  unsigned rank() const noexcept { return matrix_.size(); }
  // psi(a_i).
  const Element& image(unsigned i) const { return images_.at(i - 1); }

 private:
  BoolMatrix matrix_;
  std::vector<Element> images_;
};

// The deletion endomorphism for X: a_i -> a_i for i not in X, a_i -> e
// otherwise. Its matrix is the diagonal indicator of the complement of X.
EndomorphismSpec deletion_matrix(const IndexSet& X);

// Substitutes psi(a_i) for every letter of x's canonical word and reduces.
Element apply_endomorphism(const EndomorphismSpec& psi, const Element& x);

// Drops every letter in X from w.
Word word_delete(const IndexSet& X, const Word& w);

// The deletion endomorphism applied to x, computed by filtering the
// canonical word. Agrees with apply_endomorphism(deletion_matrix(X), x).
Element delete_indices(const IndexSet& X, const Element& x);

}  // namespace kiselman
